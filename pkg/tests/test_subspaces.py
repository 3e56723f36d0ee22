import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualshift import subspaces as SS
from dualshift.blaschke import BlaschkeProduct, value_at_zero
from dualshift.dual import ambient_basis, backward_shift, build_D, unilateral_shift
from dualshift.equivalence import build_V, s_plus_s_star
from dualshift.errors import (NoScorableColumns, NotInvariant, NotOrthogonal, RankDeficient,
                              ZeroAtOrigin)
from dualshift.linalg import containment_residual, distance, mutual_residual, orthonormalize
from dualshift.suites import constructed_subspaces, split_cases

from conftest import CAMPAIGN, CAMPAIGN_IDS

MOB = BlaschkeProduct.mobius(0.5)
MOB3 = BlaschkeProduct.mobius(1 / 3)
Z = BlaschkeProduct.power(1)
Z2 = BlaschkeProduct.power(2)
ONE = BlaschkeProduct()


def span_of(basis, labels):
    cols = np.zeros((basis.dim, len(labels)), dtype=complex)
    for c, lab in enumerate(labels):
        cols[basis.labels.index(lab), c] = 1.0
    return cols


@pytest.fixture(scope="module")
def bases():
    return {name: ambient_basis(u, 64) for u, name in zip(CAMPAIGN, CAMPAIGN_IDS)}


# -- invariance checker -------------------------------------------------------------

def test_u_chain_is_exactly_invariant(bases):
    for b in bases.values():
        assert SS.invariance_residual(build_D(b), SS.u_chain(b)) == 0.0


def test_zbar_chain_invariance_depends_on_origin_value():
    b = ambient_basis(Z, 32)
    assert SS.invariance_residual(build_D(b), SS.zbar_chain(b)) == 0.0
    b = ambient_basis(MOB, 32)
    assert SS.invariance_residual(build_D(b), SS.zbar_chain(b)) >= 0.5 - 1e-12


def test_no_scorable_columns():
    b = ambient_basis(MOB, 8)
    s = SS.SubspaceBasis("ambient", span_of(b, ["u*z^7"]))
    with pytest.raises(NoScorableColumns):
        SS.invariance_residual(build_D(b), s)


# -- constructors ------------------------------------------------------------------

def test_gamma_u_h2_examples():
    b = ambient_basis(Z, 16)
    assert mutual_residual(SS.subspace_gamma_uH2(ONE, b).columns, SS.u_chain(b).columns) == 0
    s = SS.subspace_gamma_uH2(Z, b)
    ref = span_of(b, [f"u*z^{k}" for k in range(1, 16)])
    assert mutual_residual(s.columns, ref) < 1e-14
    b = ambient_basis(MOB, 64)
    assert SS.invariance_residual(build_D(b), SS.subspace_gamma_uH2(MOB3, b)) < 1e-9


def test_zbar_conj_k_examples():
    b = ambient_basis(Z, 16)
    assert mutual_residual(SS.subspace_zbar_conj_K(Z, b).columns, span_of(b, ["zbar^1"])) < 1e-15
    ref = span_of(b, ["zbar^1", "zbar^2"])
    assert mutual_residual(SS.subspace_zbar_conj_K(Z2, b).columns, ref) < 1e-15
    assert SS.subspace_zbar_conj_K(ONE, b).dim == 0


def test_direct_sum_examples():
    b = ambient_basis(Z2, 64)
    s = SS.direct_sum(SS.subspace_zbar_conj_K(Z, b), SS.u_chain(b))
    assert SS.invariance_residual(build_D(b), s) < 1e-12
    y = SS.u_chain(b)
    s = SS.direct_sum(SS.subspace_zbar_conj_K(ONE, b), y)
    assert mutual_residual(s.columns, y.columns) == 0
    with pytest.raises(NotOrthogonal):
        SS.direct_sum(y, SS.subspace_gamma_uH2(Z, b))


def test_zbar_one_plus_u_chain_is_invariant_when_origin_nonzero():
    # D zbar = conj(u(0)) u lands in the u-chain
    b = ambient_basis(MOB, 64)
    s = SS.direct_sum(SS.subspace_zbar_conj_K(Z, b), SS.u_chain(b))
    assert SS.invariance_residual(build_D(b), s) < 1e-12


@pytest.mark.parametrize("u", CAMPAIGN, ids=CAMPAIGN_IDS)
def test_constructed_subspaces_are_invariant(u, bases):
    b = bases[CAMPAIGN_IDS[CAMPAIGN.index(u)]]
    d = build_D(b)
    for name, s in constructed_subspaces(b):
        assert s.orthonormality_residual() < 1e-12, name
        assert SS.invariance_residual(d, s) < 1e-8, name


@pytest.mark.parametrize("u", [MOB, BlaschkeProduct.mobius(0.5j)], ids=["mobius_half", "i_half"])
def test_pullback_special_cases(u):
    b = ambient_basis(u, 64)
    q = SS.QuotientInner
    a = SS.pullback_V_inv(u, q(ONE, MOB3), b)
    assert mutual_residual(a.columns, SS.subspace_gamma_uH2(MOB3, b).columns) < 1e-8
    alpha = BlaschkeProduct(1.0, (0.3, -0.4j))
    c = SS.pullback_V_inv(u, q(alpha, ONE), b)
    ref = SS.direct_sum(SS.subspace_zbar_conj_K(alpha, b), SS.u_chain(b))
    assert mutual_residual(c.columns, ref.columns) < 1e-8


def test_pullback_errors():
    b = ambient_basis(MOB, 16)
    with pytest.raises(ValueError):
        SS.pullback_V_inv(MOB, SS.QuotientInner(MOB, MOB), b)
    with pytest.raises(ZeroAtOrigin):
        SS.pullback_V_inv(Z, SS.QuotientInner(ONE, Z), ambient_basis(Z, 16))
    with pytest.raises(ValueError):
        SS.pullback_V_inv(Z, SS.QuotientInner(ONE, Z), b)
    with pytest.raises(TypeError):
        SS.pullback_V_inv(MOB, "nope", b)


zero_point = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.0, 0.7), st.floats(0, 2 * np.pi))


@settings(max_examples=15)
@given(st.lists(zero_point, max_size=2), st.lists(zero_point, max_size=2))
def test_pullback_dimension_and_invariance(az, bz):
    alpha, beta = BlaschkeProduct(1.0, tuple(az)), BlaschkeProduct(1.0, tuple(bz))
    if min((abs(a - c) for a in az for c in bz), default=1.0) < 0.05:
        return
    b = ambient_basis(MOB, 64)
    try:
        s = SS.pullback_V_inv(MOB, SS.QuotientInner(alpha, beta), b)
    except RankDeficient:
        pytest.fail("coprime inputs lost rank")
    assert s.dim == 64 + alpha.degree - beta.degree
    assert SS.invariance_residual(build_D(b), s) < 1e-8


@pytest.mark.parametrize("a", [0.625, 0.7, -0.7j])
def test_pullback_residual_is_truncation_tail(a):
    # conj(alpha) has a geometric anti-analytic tail, cut off at zbar^N.
    for n in (32, 48):
        b = ambient_basis(MOB, n)
        s = SS.pullback_V_inv(MOB, SS.QuotientInner(BlaschkeProduct.mobius(a), BlaschkeProduct()), b)
        assert SS.invariance_residual(build_D(b), s) <= abs(a) ** n


# -- properties -----------------------------------------------------------------------

@pytest.mark.parametrize("u", CAMPAIGN, ids=CAMPAIGN_IDS)
def test_nonzero_pminus_image_has_phi_witness(u, bases):
    b = bases[CAMPAIGN_IDS[CAMPAIGN.index(u)]]
    for name, s in constructed_subspaces(b):
        if SS.classify_pminus_image(s, b).kind != "Zero":
            # phi_f(0) is conj of the zbar^1 coefficient
            assert np.max(np.abs(s.columns[b.zbar(1)])) > 1e-8, name


@pytest.mark.parametrize("u", CAMPAIGN, ids=CAMPAIGN_IDS)
def test_u_in_pplus_image_forces_whole_chain(u, bases):
    b = bases[CAMPAIGN_IDS[CAMPAIGN.index(u)]]
    e = np.zeros(b.dim, dtype=complex)
    e[b.uz(0)] = 1.0
    chain = SS.u_chain(b).columns
    for name, s in constructed_subspaces(b) + split_cases(b):
        y = np.zeros_like(s.columns)
        y[b.u_chain] = s.columns[b.u_chain]
        y = orthonormalize(y, rank_tol=1e-8)
        if distance(e, y) < 1e-8:
            assert containment_residual(chain, y) < 1e-8, name


@pytest.mark.parametrize("u", [MOB, BlaschkeProduct.mobius(0.5j), BlaschkeProduct(1.0, (0.5, -0.5))],
                         ids=["mobius_half", "i_half", "pair"])
def test_similarity_keeps_pminus_image(u):
    b = ambient_basis(u, 64)
    v = build_V(b).matrix.entries
    for name, s in constructed_subspaces(b):
        vs = v @ s.columns
        lhs = orthonormalize(vs[:64], rank_tol=1e-8)
        rhs = orthonormalize(s.columns[b.zbar_chain], rank_tol=1e-8)
        assert lhs.shape[1] == rhs.shape[1], name
        if lhs.shape[1]:
            assert mutual_residual(lhs, rhs) < 1e-8, name


@settings(max_examples=25)
@given(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False), min_size=1, max_size=4),
       st.floats(0.1, 0.9))
def test_zbar_only_subspace_escapes_when_origin_nonzero(coeffs, r):
    u = BlaschkeProduct.mobius(r)
    b = ambient_basis(u, 16)
    x = np.zeros((16, len(coeffs)), dtype=complex)
    for j, c in enumerate(coeffs):
        # column j: c zbar^1 + zbar^(j+2)
        x[b.zbar(1), j] = c
        x[b.zbar(j + 2), j] = 1.0
    cols = orthonormalize(np.vstack([x, np.zeros((16, len(coeffs)))]))
    s = SS.SubspaceBasis("ambient", cols)
    d = build_D(b)
    y = SS.scored_space(d, s)
    bound = abs(value_at_zero(u)) * float(np.max(np.abs(y[b.zbar(1)])))
    assert SS.invariance_residual(d, s) >= bound - 1e-12
    assert SS.invariance_residual(d, s) > 0


def test_zbar_one_alone_escapes_by_origin_modulus():
    b = ambient_basis(MOB, 16)
    s = SS.subspace_zbar_conj_K(Z, b)
    assert SS.invariance_residual(build_D(b), s) == pytest.approx(0.5)


# -- characteristic functions --------------------------------------------------------------

def test_arc_coefficients():
    a = SS.ArcUnion(((0.0, np.pi),))
    assert a.coefficient(0) == pytest.approx(0.5)
    assert a.coefficient(1) == pytest.approx(-1j / np.pi)
    # midpoint quadrature of the indicator against e^{-in theta}
    m = 1 << 16
    t = (np.arange(m) + 0.5) * 2 * np.pi / m
    chi = (t < np.pi).astype(float)
    for n in (-3, -1, 2, 5):
        assert a.coefficient(n) == pytest.approx(np.mean(chi * np.exp(-1j * n * t)), abs=1e-9)


def test_arc_validation():
    with pytest.raises(ValueError):
        SS.ArcUnion(())
    with pytest.raises(ValueError):
        SS.ArcUnion(((0.0, 2.0), (1.0, 3.0)))
    with pytest.raises(ValueError):
        SS.ArcUnion(((0.0, 2 * np.pi),))


@pytest.mark.parametrize("arcs", [((0.0, np.pi),), ((0.0, 1.0), (2.0, 3.0))])
def test_char_fn_pullback_is_approximately_invariant(arcs):
    b = ambient_basis(MOB, 64)
    s = SS.pullback_V_inv(MOB, SS.CharFn(SS.ArcUnion(arcs)), b)
    assert s.construction["approximate"]
    res = SS.invariance_residual(build_D(b), s, edge_margin=SS.charfn_edge_margin(64))
    assert res < 1e-3


# -- examples -------------------------------------------------------------------

@pytest.mark.parametrize("lam", [0.5, -0.5, 0.3j])
def test_proper_containment(lam):
    out = SS.example_6_3_proper_containment(lam, 64)
    assert out["report"].residual < 1e-8
    assert out["distance"] > 0.01
    # closed form for the distance of z - lam from the pullback
    assert out["distance"] == pytest.approx(1 / np.sqrt(2 - abs(lam) ** 2), abs=1e-12)
    assert out["report"].details["distance_to_larger"] < 1e-12


def test_proper_containment_distance_by_least_squares():
    out = SS.example_6_3_proper_containment(0.5, 64)
    b = ambient_basis(MOB, 64)
    x = SS.vector_z_minus(b, 0.5)
    coef, *_ = np.linalg.lstsq(out["S1"].columns, x, rcond=None)
    assert np.linalg.norm(x - out["S1"].columns @ coef) == pytest.approx(0.7559289460184544,
                                                                          abs=1e-12)


def test_cyclic_subspace_of_unilateral_shift():
    t = unilateral_shift(16)
    s = SS.cyclic_subspace(t, np.eye(16)[0])
    assert s.dim == 16
    assert mutual_residual(s.columns, np.eye(16)) < 1e-14
    assert SS.cyclic_subspace(t, np.zeros(16)).dim == 0


def test_cyclic_subspace_is_invariant():
    t = backward_shift(16)
    s = SS.cyclic_subspace(t, SS.kernel_coords(0.4, 16))
    assert SS.invariance_residual(t, s) < 1e-12


def test_kernel_pair_cyclic_subspace():
    out = SS.kernel_pair_cyclic(0.5, 64, samples=50)
    assert out["membership"] < 1e-6
    assert out["distance"] > 0.01
    assert out["distance"] == pytest.approx(0.25 / np.sqrt(0.75) / np.sqrt(2), abs=1e-12)
    assert SS.invariance_residual(s_plus_s_star(64), out["subspace"]) < 1e-12


# -- classification ----------------------------------------------------------------------

def test_pminus_examples():
    b = ambient_basis(Z, 32)
    assert SS.classify_pminus_image(SS.u_chain(b), b).kind == "Zero"
    s = SS.direct_sum(SS.subspace_zbar_conj_K(Z2, b), SS.u_chain(b))
    c = SS.classify_pminus_image(s, b)
    assert (c.kind, c.dimension) == ("ZbarConjK", 2)
    full = SS.SubspaceBasis("ambient", np.eye(64, dtype=complex))
    assert SS.classify_pminus_image(full, b).kind == "All"


@pytest.mark.parametrize("u", CAMPAIGN, ids=CAMPAIGN_IDS)
def test_split_cases_are_tagged(u, bases):
    b = bases[CAMPAIGN_IDS[CAMPAIGN.index(u)]]
    for tag, s in split_cases(b):
        c = SS.classify_orthogonal_sum(s, b)
        assert c.tag == tag
        assert c.split_residual < 1e-8


def test_classification_degrees():
    b = ambient_basis(Z2, 64)
    s = SS.direct_sum(SS.subspace_zbar_conj_K(Z, b), SS.u_chain(b))
    c = SS.classify_orthogonal_sum(s, b)
    assert (c.tag, c.alpha_degree, c.gamma_degree) == ("zbar_conj_k_plus_gamma_u_h2", 1, 0)
    c = SS.classify_orthogonal_sum(SS.subspace_gamma_uH2(MOB3, b), b)
    assert (c.tag, c.gamma_degree) == ("gamma_u_h2", 1)


def test_nonsplitting_example():
    out = SS.example_6_3_proper_containment(0.5, 64)
    c = SS.classify_orthogonal_sum(out["S1"], ambient_basis(MOB, 64))
    assert c.tag == "NonSplitting"
    assert c.split_residual > 0.5


def test_classification_requires_invariance():
    b = ambient_basis(MOB, 32)
    with pytest.raises(NotInvariant):
        SS.classify_orthogonal_sum(SS.zbar_chain(b), b)
