import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dualshift.blaschke import BlaschkeProduct, value_at_zero
from dualshift.dual import ambient_basis, bilateral_shift, build_D
from dualshift.equivalence import (build_flip_L, build_U, build_V, build_W_uv, composite_check,
                                   conjugated_block_form, decide_unitary_equivalence, flip_check,
                                   origin_branch, pair_labels, split_labels)
from dualshift.errors import IllConditioned, ZeroAtOrigin
from dualshift.suites import commutator_norms

from conftest import CAMPAIGN, CAMPAIGN_IDS, NONZERO_AT_ORIGIN, ZERO_AT_ORIGIN

MOB = BlaschkeProduct.mobius(0.5)
Z = BlaschkeProduct.power(1)


def test_origin_branch_thresholds():
    assert origin_branch(MOB)
    assert not origin_branch(Z)
    assert not origin_branch(BlaschkeProduct.mobius(1e-11))
    assert origin_branch(BlaschkeProduct.mobius(1e-7))
    with pytest.raises(IllConditioned):
        origin_branch(BlaschkeProduct.mobius(1e-9))


def test_U_examples():
    b = ambient_basis(Z, 4)
    u = build_U(b).entries
    np.testing.assert_array_equal(u.conj().T @ u, np.eye(8))
    labels = split_labels(4)
    col = labels.index("zbar^3")
    assert b.labels[int(np.argmax(np.abs(u[:, col])))] == "zbar^3"
    for k in range(4):
        assert b.labels[int(np.argmax(np.abs(u[:, k])))] == f"u*z^{k}"


@pytest.mark.parametrize("u", CAMPAIGN, ids=CAMPAIGN_IDS)
def test_block_form(u):
    rep = conjugated_block_form(u, 64)
    assert rep.passed, rep.details
    assert rep.details["lower_left_max"] == 0.0
    assert rep.details["coupling_entry"] == pytest.approx(np.conj(value_at_zero(u)))


def test_coupling_entries():
    rep = conjugated_block_form(MOB, 32)
    assert rep.details["coupling_entry"] == pytest.approx(-0.5)
    rep = conjugated_block_form(BlaschkeProduct(1.0, (0.5, -0.5)), 32)
    assert rep.details["coupling_entry"] == pytest.approx(-0.25)
    rep = conjugated_block_form(Z, 32)
    assert rep.details["coupling_block"] == 0.0


def test_flip_examples():
    L = build_flip_L(8)
    rows, cols = L.row_labels, L.col_labels
    for j in (1, 3):
        c = cols.index(f"zbar^{j}")
        assert rows[int(np.argmax(np.abs(L.entries[:, c])))] == f"z^{j - 1}'"
    assert rows == pair_labels(8)


def test_flip_intertwines():
    rep = flip_check(32)
    assert rep.passed and rep.residual == 0.0


@pytest.mark.parametrize("u", ZERO_AT_ORIGIN, ids=["z", "z2"])
def test_composite_unitary(u):
    assert composite_check(u, 64).residual < 1e-12


def test_composite_unitary_refuses_nonzero_origin():
    with pytest.raises(ValueError):
        composite_check(MOB, 16)


def test_V_examples():
    b = ambient_basis(MOB, 16)
    cert = build_V(b)
    assert cert.kind == "Similarity"
    v = cert.matrix.entries
    assert v[b.uz(0), b.uz(0)] == pytest.approx(-2.0)
    np.testing.assert_array_equal(v @ cert.inverse.entries, np.eye(32))
    assert cert.condition_number == pytest.approx(2.0)


@pytest.mark.parametrize("u", NONZERO_AT_ORIGIN, ids=["mobius_half", "mobius_i_half", "pair"])
def test_V_similarity_and_non_normality(u):
    cert = build_V(ambient_basis(u, 64))
    assert cert.residual_intertwine < 1e-12
    cd, cm = commutator_norms(u, 64)
    assert cm == 0.0
    assert cd >= (1 - abs(value_at_zero(u)) ** 2) / 2


def test_V_needs_nonzero_origin():
    with pytest.raises(ZeroAtOrigin):
        build_V(ambient_basis(Z, 8))


def test_W_identity_and_unitary_case():
    cert = build_W_uv(MOB, MOB, 16)
    np.testing.assert_array_equal(cert.matrix.entries, np.eye(32))
    cert = build_W_uv(MOB, BlaschkeProduct.mobius(0.5j), 64)
    assert cert.kind == "Unitary"
    assert cert.residual_unitarity < 1e-10
    assert cert.residual_intertwine < 1e-9


def test_W_similarity_unitarity_defect():
    # u-chain scaled by (1/3)/(1/2) = 2/3, so ||W*W - I|| = 1 - 4/9
    cert = build_W_uv(MOB, BlaschkeProduct.mobius(1 / 3), 32)
    assert cert.kind == "Similarity"
    assert cert.residual_unitarity == pytest.approx(5 / 9)
    assert cert.residual_intertwine < 1e-12


def test_W_needs_nonzero_origin():
    with pytest.raises(ZeroAtOrigin):
        build_W_uv(Z, MOB, 8)


@pytest.mark.parametrize("u, v, expected", [
    (Z, BlaschkeProduct.power(3), True),
    (Z, MOB, False),
    (MOB, BlaschkeProduct.mobius(-0.5), True),
    (MOB, BlaschkeProduct.mobius(1 / 3), False),
])
def test_decision_examples(u, v, expected):
    dec = decide_unitary_equivalence(u, v, 32)
    assert dec.equivalent is expected
    if expected:
        assert dec.certificate.kind == "Unitary"
        assert dec.certificate.residual_unitarity < 1e-10
        assert dec.certificate.residual_intertwine < 1e-9


@pytest.mark.parametrize("u", CAMPAIGN, ids=CAMPAIGN_IDS)
@pytest.mark.parametrize("v", CAMPAIGN, ids=CAMPAIGN_IDS)
def test_defect_witness_separates_moduli(u, v):
    dec = decide_unitary_equivalence(u, v, 32)
    if dec.witness:
        a, b = abs(value_at_zero(u)), abs(value_at_zero(v))
        assert dec.witness["defect_norm_u"] == pytest.approx(1 - a * a, abs=1e-12)
        assert dec.witness["defect_norm_v"] == pytest.approx(1 - b * b, abs=1e-12)
        assert dec.witness["residual"] < 1e-12


@given(st.floats(0.05, 0.9), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_rotated_zero_gives_unitary_certificate(r, s, t):
    u = BlaschkeProduct.mobius(r * np.exp(1j * s))
    v = BlaschkeProduct.mobius(r * np.exp(1j * t))
    dec = decide_unitary_equivalence(u, v, 16)
    assert dec.equivalent
    assert dec.certificate.residual_unitarity < 1e-10
    assert dec.certificate.residual_intertwine < 1e-12


def test_certificate_serialises():
    cert = build_W_uv(MOB, BlaschkeProduct.mobius(0.5j), 8)
    d = json.loads(cert.to_json())
    assert d["kind"] == "Unitary" and d["N"] == 8
    assert d["u"]["zeros"] == [[0.5, 0.0]]


@given(st.integers(0, 2 ** 32 - 1))
def test_similarity_maps_D_orbits_to_shift_orbits(seed):
    rng = np.random.default_rng(seed)
    b = ambient_basis(MOB, 16)
    cert = build_V(b)
    d = build_D(b).entries
    x = np.zeros(32, dtype=complex)
    x[b.interior_block()] = rng.standard_normal(len(b.interior_block()))
    m = bilateral_shift(16).entries
    np.testing.assert_allclose(cert.matrix.entries @ d @ x, m @ cert.matrix.entries @ x,
                               atol=1e-12)
