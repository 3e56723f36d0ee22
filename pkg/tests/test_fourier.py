import numpy as np
import pytest
from hypothesis import given, strategies as st

from dualshift import fourier as F
from dualshift.errors import BandOverflow, GridTooSmall
from dualshift.fourier import FourierVector

Z = FourierVector.monomial(1)
ZBAR = FourierVector.monomial(-1)
ONE = FourierVector.monomial(0)

coeff = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@st.composite
def vectors(draw, max_depth=6):
    lo = draw(st.integers(-max_depth, 0))
    hi = draw(st.integers(0, max_depth))
    c = draw(st.lists(coeff, min_size=hi - lo + 1, max_size=hi - lo + 1))
    return FourierVector(lo, hi, np.array(c))


def close(f, g, tol=1e-12):
    d = f - g
    return d.coeffs.size == 0 or float(np.max(np.abs(d.coeffs))) < tol


def test_band_must_contain_zero():
    with pytest.raises(ValueError):
        FourierVector(1, 3, np.zeros(3))


def test_coefficient_count_checked():
    with pytest.raises(ValueError):
        FourierVector(-1, 1, np.zeros(2))


@pytest.mark.parametrize("f, g, expected", [
    (Z, Z, 1.0),
    (Z, ZBAR, 0.0),
    (FourierVector.from_dict({0: 1, -1: 2}), FourierVector.monomial(-1, 3), 6.0),
])
def test_inner_product_examples(f, g, expected):
    assert F.inner_product(f, g) == pytest.approx(expected)


def test_inner_product_is_linear_in_first_slot():
    f = FourierVector.from_dict({0: 1j})
    assert F.inner_product(f, ONE) == pytest.approx(1j)
    assert F.inner_product(ONE, f) == pytest.approx(-1j)


def test_multiply_examples():
    assert close(F.multiply(Z + ZBAR, Z), FourierVector.from_dict({2: 1, 0: 1}))
    f = FourierVector.from_dict({-2: 1, 1: 3j})
    assert close(F.multiply(f, ONE), f)
    a = FourierVector.analytic([1, 0.5])
    b = FourierVector.analytic([1, -0.5])
    assert close(F.multiply(a, b), FourierVector.analytic([1, 0, -0.25]))


def test_multiply_band_overflow_and_truncation():
    with pytest.raises(BandOverflow):
        F.multiply(Z, Z, band=(0, 1))
    t = F.multiply(Z, Z, band=(0, 1), truncate=True)
    assert t.band == (0, 1) and not np.any(t.coeffs)


def test_projections_examples():
    f = FourierVector.from_dict({-1: 1, 0: 1, 1: 1})
    assert close(F.project_plus(f), FourierVector.from_dict({0: 1, 1: 1}))
    assert close(F.project_minus(f), ZBAR)
    assert close(F.project_minus(FourierVector.monomial(3)), FourierVector.zeros(0, 3))


def test_shift_examples():
    assert close(F.shift(ZBAR), ONE)
    assert close(F.backshift_analytic(FourierVector.analytic([1, 1])), ONE)
    assert close(F.shift(F.shift(FourierVector.monomial(-2))), ONE)


def test_shift_overflow():
    with pytest.raises(BandOverflow):
        F.shift(Z, band=(0, 1))


def test_phi_examples():
    assert close(F.phi_of(ZBAR), ONE) and F.phi_at_zero(ZBAR) == 1
    f = FourierVector.analytic([1, 1])
    assert F.phi_of(f).norm() == 0 and F.phi_at_zero(f) == 0


def test_phi_at_zero_against_quadrature():
    f = FourierVector.from_dict({-1: 2 + 1j, -3: 5})
    assert F.phi_at_zero(f) == pytest.approx(2 - 1j)
    # phi_f(0) is the mean of conj(zeta f(zeta)) over the circle
    m = 4096
    zeta = np.exp(2j * np.pi * np.arange(m) / m)
    samples = F.evaluate_on_circle(f, m)
    quad = np.mean(np.conj(samples * zeta))
    assert quad == pytest.approx(2 - 1j, abs=1e-12)


def test_evaluate_on_circle_examples():
    np.testing.assert_allclose(F.evaluate_on_circle(Z, 4), [1, 1j, -1, -1j], atol=1e-15)
    c = F.samples_to_coeffs(np.full(8, 3 - 2j), (-3, 4))
    assert c.coeff(0) == pytest.approx(3 - 2j)
    assert np.max(np.abs(np.delete(c.coeffs, 3))) < 1e-15


def test_grid_too_small():
    with pytest.raises(GridTooSmall):
        F.evaluate_on_circle(FourierVector.analytic(np.ones(9)), 4)
    with pytest.raises(GridTooSmall):
        F.samples_to_coeffs(np.ones(3), (-2, 2))


def test_evaluate_laurent():
    f = FourierVector.from_dict({-2: 1, 0: 2, 1: 3})
    z = 0.3 + 0.4j
    assert F.evaluate(f, z) == pytest.approx(z ** -2 + 2 + 3 * z)


@given(vectors())
def test_sampling_round_trip(f):
    s = F.evaluate_on_circle(f)
    assert close(F.samples_to_coeffs(s, f.band), f, 1e-11)


@given(vectors())
def test_projections_split_and_are_orthogonal(f):
    p, m = F.project_plus(f), F.project_minus(f)
    assert close(p + m, f)
    assert abs(F.inner_product(p, m)) == 0


@given(vectors(), st.integers(-4, 4))
def test_multiplication_by_monomial_is_isometric(f, k):
    zk = FourierVector.monomial(k)
    assert F.multiply(zk, f).norm() == pytest.approx(f.norm(), rel=1e-12, abs=1e-12)


@given(vectors())
def test_conjugate_is_involutive_and_isometric(f):
    c = F.conjugate(f)
    assert close(F.conjugate(c), f)
    assert c.norm() == pytest.approx(f.norm())


@given(vectors())
def test_splitting_identities(f):
    """P^-(z f_-), P^-(zbar f_+), P^+(zbar f_+), P^+(z f_-) in closed form."""
    fm, fp = F.project_minus(f), F.project_plus(f)
    p0 = F.phi_at_zero(f)
    lhs = F.project_minus(F.shift(fm))
    assert close(lhs, F.conjugate(F.phi_of(f)) - FourierVector.monomial(0, np.conj(p0)), 1e-12)
    assert close(F.project_minus(F.multiply(ZBAR, fp)), FourierVector.monomial(-1, fp.coeff(0)))
    assert close(F.project_plus(F.multiply(ZBAR, fp)), F.backshift_analytic(fp))
    assert close(F.project_plus(F.shift(fm)), FourierVector.monomial(0, np.conj(p0)))
