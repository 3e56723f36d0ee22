"""Block forms, the flip unitary, similarity to the bilateral shift, and unitary equivalence.

All intertwiners act on labelled coordinates and are exact sparse matrices.
The H^2 + conj(H^2_0) coordinates used by U are ordered

    z^0, ..., z^(N-1), zbar^1, ..., zbar^N
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .blaschke import BlaschkeProduct, value_at_zero
from .dual import (AmbientBasis, OperatorMatrix, ambient_basis, ambient_labels, backward_shift,
                   bilateral_shift, build_D, build_Q, h2_labels, h20bar_labels, hankel_star,
                   monomial_labels, unilateral_shift)
from .errors import IllConditioned, ZeroAtOrigin
from .fourier import FourierVector, multiply
from .model_space import u_series
from .report import VerificationReport, _jsonable, timed

ZERO_TOL = 1e-10       # |u(0)| below this is zero
NONZERO_TOL = 1e-8     # |u(0)| above this is nonzero
MODULUS_TOL = 1e-10


def origin_branch(u: BlaschkeProduct) -> bool:
    """True if u(0) != 0; raises IllConditioned in the ambiguous band."""
    a = abs(value_at_zero(u))
    if a < ZERO_TOL:
        return False
    if a > NONZERO_TOL:
        return True
    raise IllConditioned(f"|u(0)| = {a:.3g} lies between {ZERO_TOL} and {NONZERO_TOL}")


def split_labels(n: int) -> tuple[str, ...]:
    return h2_labels(n) + h20bar_labels(n)


def pair_labels(n: int) -> tuple[str, ...]:
    """H^2 + H^2: the second copy is tagged with a prime."""
    return h2_labels(n) + tuple(f"z^{k}'" for k in range(n))


def build_U(basis: AmbientBasis) -> OperatorMatrix:
    """z^k -> u z^k, zbar^j -> zbar^j, from split coordinates to ambient coordinates."""
    n = basis.N
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    for k in range(n):
        m[basis.uz(k), k] = 1.0
    for j in range(1, n + 1):
        m[basis.zbar(j), n + j - 1] = 1.0
    return OperatorMatrix(m, "H2+H2_0bar", "ambient", basis.labels, split_labels(n),
                          tuple(range(2 * n)))


def direct_sum_ops(a: OperatorMatrix, b: OperatorMatrix, labels=None) -> OperatorMatrix:
    n1, n2 = a.shape[1], b.shape[1]
    m = np.zeros((a.shape[0] + b.shape[0], n1 + n2), dtype=complex)
    m[:a.shape[0], :n1] = a.entries
    m[a.shape[0]:, n1:] = b.entries
    rows = labels or (a.row_labels + b.row_labels)
    cols = labels or (a.col_labels + b.col_labels)
    interior = a.interior_cols + tuple(n1 + i for i in b.interior_cols)
    return OperatorMatrix(m, f"{a.domain}+{b.domain}", f"{a.codomain}+{b.codomain}",
                          rows, cols, interior)


def conjugated_block_form(u: BlaschkeProduct, N: int = 64, tol: float = 1e-9) -> VerificationReport:
    """Check U* D U = [[S, H*_{u zbar}], [0, Q]] with the expected coupling block."""
    with timed() as t:
        basis = ambient_basis(u, N)
        d = build_D(basis)
        U = build_U(basis).entries
        b = U.conj().T @ d.entries @ U
        # D's interior columns, transported to split coordinates.
        cols = [int(np.argmax(np.abs(U[i]))) for i in d.interior_cols]
        h2, h0 = slice(0, N), slice(N, 2 * N)
        lower_left = float(np.max(np.abs(b[h0, h2])))
        s_res = unilateral_shift(N).interior_residual(b[h2, h2])
        q_res = float(np.max(np.abs(b[h0, h0] - build_Q(N).entries)))
        u0 = value_at_zero(u)
        expected = np.zeros((N, N), dtype=complex)
        expected[0, 0] = np.conj(u0)
        coupling = float(np.max(np.abs(b[h2, h0] - expected)))
        phi = multiply(u_series(u, basis.band_max), FourierVector.monomial(-1))
        hank = float(np.max(np.abs(hankel_star(phi, N).entries - expected)))
        interior_all = float(np.max(np.abs(b[:, cols] - _block_expected(N, u0)[:, cols])))
        residual = max(lower_left, s_res, q_res, coupling, hank, interior_all)
    return VerificationReport(
        "block_form", {"u": u, "N": N}, residual, tol, runtime_ms=t[0],
        details={"lower_left_max": lower_left, "shift_block": s_res, "Q_block": q_res,
                 "coupling_block": coupling, "hankel_star_oracle": hank,
                 "coupling_entry": complex(b[0, N])})


def _block_expected(n: int, u0: complex) -> np.ndarray:
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = unilateral_shift(n).entries
    out[n:, n:] = build_Q(n).entries
    out[0, n] = np.conj(u0)
    return out


def build_flip_L(N: int) -> OperatorMatrix:
    """L = I + W with W zbar^j -> z^(j-1): split coordinates to H^2 + H^2.

    Position N+j-1 holds zbar^j on the left and z^(j-1)' on the right, so the
    matrix is the identity; only the labels change.
    """
    m = np.eye(2 * N, dtype=complex)
    return OperatorMatrix(m, "H2+H2_0bar", "H2+H2", pair_labels(N), split_labels(N),
                          tuple(range(2 * N)))


def s_plus_s_star(N: int) -> OperatorMatrix:
    return direct_sum_ops(unilateral_shift(N), backward_shift(N), pair_labels(N))


def flip_check(N: int = 32, tol: float = 1e-12) -> VerificationReport:
    """(S + S*) L = L (S + Q) on interior columns."""
    with timed() as t:
        L = build_flip_L(N).entries
        lhs = s_plus_s_star(N).entries @ L
        sq = direct_sum_ops(unilateral_shift(N), build_Q(N))
        rhs = OperatorMatrix(L @ sq.entries, "", "", (), (), sq.interior_cols)
        residual = rhs.interior_residual(lhs)
        unit = float(np.max(np.abs(L.conj().T @ L - np.eye(2 * N))))
    return VerificationReport("flip", {"N": N}, max(residual, unit), tol, runtime_ms=t[0],
                              details={"intertwine": residual, "unitarity": unit})


def composite_to_pair(basis: AmbientBasis) -> np.ndarray:
    """X = L U*: ambient coordinates to H^2 + H^2."""
    return build_flip_L(basis.N).entries @ build_U(basis).entries.conj().T


def composite_check(u: BlaschkeProduct, N: int = 64, tol: float = 1e-12) -> VerificationReport:
    """For u(0) = 0: X D_u X* = S + S* on interior columns."""
    with timed() as t:
        if origin_branch(u):
            raise ValueError("composite unitary requires u(0) = 0")
        basis = ambient_basis(u, N)
        d = build_D(basis)
        X = composite_to_pair(basis)
        conj_d = X @ d.entries @ X.conj().T
        cols = tuple(int(np.argmax(np.abs(X[:, i]))) for i in d.interior_cols)
        moved = OperatorMatrix(conj_d, "H2+H2", "H2+H2", pair_labels(N), pair_labels(N), cols)
        residual = moved.interior_residual(s_plus_s_star(N))
        unit = float(np.max(np.abs(X.conj().T @ X - np.eye(2 * N))))
    return VerificationReport("composite_unitary", {"u": u, "N": N}, max(residual, unit), tol,
                              runtime_ms=t[0], details={"intertwine": residual, "unitarity": unit})


@dataclass(frozen=True, eq=False)
class IntertwinerCertificate:
    kind: str                     # "Unitary" or "Similarity"
    matrix: OperatorMatrix
    inverse: OperatorMatrix
    residual_intertwine: float
    residual_unitarity: float
    u: BlaschkeProduct
    v: BlaschkeProduct | None
    N: int
    condition_number: float = 1.0
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "residual_intertwine": self.residual_intertwine,
            "residual_unitarity": self.residual_unitarity,
            "u": _jsonable(self.u),
            "v": _jsonable(self.v),
            "N": self.N,
            "condition_number": self.condition_number,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _unitarity(m: np.ndarray) -> float:
    return float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[1]), 2))


def build_V(basis: AmbientBasis) -> IntertwinerCertificate:
    """V_u: zbar^j -> zbar^j, u z^k -> z^k / conj(u(0)); ambient to truncated L^2."""
    u, n = basis.u, basis.N
    if not origin_branch(u):
        raise ZeroAtOrigin("V_u needs u(0) != 0")
    u0 = value_at_zero(u)
    diag = np.concatenate([np.ones(n), np.full(n, 1.0 / np.conj(u0))])
    v = np.diag(diag).astype(complex)
    vinv = np.diag(1.0 / diag).astype(complex)
    V = OperatorMatrix(v, "ambient", "L2", monomial_labels(n), basis.labels, tuple(range(2 * n)))
    Vi = OperatorMatrix(vinv, "L2", "ambient", basis.labels, monomial_labels(n), tuple(range(2 * n)))
    d = build_D(basis)
    sim = OperatorMatrix(v @ d.entries @ vinv, "L2", "L2", monomial_labels(n), monomial_labels(n),
                         d.interior_cols)
    res = sim.interior_residual(bilateral_shift(n))
    return IntertwinerCertificate("Similarity", V, Vi, res, _unitarity(v), u, None, n,
                                  condition_number=float(np.linalg.cond(v)),
                                  extra={"inverse_residual": float(np.max(np.abs(v @ vinv - np.eye(2 * n))))})


def build_W_uv(u: BlaschkeProduct, v: BlaschkeProduct, N: int = 64) -> IntertwinerCertificate:
    """W z^j-bar -> zbar^j, u z^k -> (conj(v(0))/conj(u(0))) v z^k; intertwines D_u and D_v."""
    if not origin_branch(u) or not origin_branch(v):
        raise ZeroAtOrigin("W needs u(0) != 0 and v(0) != 0")
    bu, bv = ambient_basis(u, N), ambient_basis(v, N)
    u0, v0 = value_at_zero(u), value_at_zero(v)
    scale = np.conj(v0) / np.conj(u0)
    diag = np.concatenate([np.ones(N), np.full(N, scale)])
    w, winv = np.diag(diag).astype(complex), np.diag(1.0 / diag).astype(complex)
    W = OperatorMatrix(w, "ambient(u)", "ambient(v)", ambient_labels(N, "v"), bu.labels,
                       tuple(range(2 * N)))
    Wi = OperatorMatrix(winv, "ambient(v)", "ambient(u)", bu.labels, ambient_labels(N, "v"),
                        tuple(range(2 * N)))
    du, dv = build_D(bu), build_D(bv)
    pulled = OperatorMatrix(winv @ dv.entries @ w, "ambient(u)", "ambient(u)", bu.labels,
                            bu.labels, du.interior_cols)
    res = pulled.interior_residual(du)
    unit = _unitarity(w)
    kind = "Unitary" if abs(abs(u0) - abs(v0)) < MODULUS_TOL else "Similarity"
    return IntertwinerCertificate(kind, W, Wi, res, unit, u, v, N,
                                  condition_number=float(np.linalg.cond(w)))


def _composite_zero(u: BlaschkeProduct, v: BlaschkeProduct, N: int) -> IntertwinerCertificate:
    """Both u(0) = v(0) = 0: U_v U_u^* passes through S + S*."""
    bu, bv = ambient_basis(u, N), ambient_basis(v, N)
    w = build_U(bv).entries @ build_U(bu).entries.conj().T
    W = OperatorMatrix(w, "ambient(u)", "ambient(v)", ambient_labels(N, "v"), bu.labels,
                       tuple(range(2 * N)))
    Wi = OperatorMatrix(w.conj().T, "ambient(v)", "ambient(u)", bu.labels,
                        ambient_labels(N, "v"), tuple(range(2 * N)))
    du, dv = build_D(bu), build_D(bv)
    pulled = OperatorMatrix(w.conj().T @ dv.entries @ w, "", "", (), (), du.interior_cols)
    return IntertwinerCertificate("Unitary", W, Wi, pulled.interior_residual(du),
                                  _unitarity(w), u, v, N)


@dataclass(frozen=True)
class EquivalenceDecision:
    equivalent: bool
    certificate: IntertwinerCertificate | None
    modulus_u: float
    modulus_v: float
    witness: dict[str, Any] = field(default_factory=dict)


def decide_unitary_equivalence(u: BlaschkeProduct, v: BlaschkeProduct,
                               N: int = 64) -> EquivalenceDecision:
    """D_u ~ D_v unitarily iff |u(0)| = |v(0)|."""
    a, b = abs(value_at_zero(u)), abs(value_at_zero(v))
    nu, nv = origin_branch(u), origin_branch(v)
    if not nu and not nv:
        return EquivalenceDecision(True, _composite_zero(u, v, N), a, b)
    # A unitary invariant separates the remaining negatives: the defect
    # I - D D* has norm 1 - |u(0)|^2.
    gap = _defect_gap(u, v, N)
    witness = {"defect_norm_u": gap[0], "defect_norm_v": gap[1],
               "residual": abs(abs(gap[0] - gap[1]) - abs(a * a - b * b))}
    if nu != nv:
        return EquivalenceDecision(False, None, a, b, witness)
    cert = build_W_uv(u, v, N)
    return EquivalenceDecision(cert.kind == "Unitary", cert, a, b, witness)


def _defect_gap(u: BlaschkeProduct, v: BlaschkeProduct, N: int) -> tuple[float, float]:
    out = []
    for w in (u, v):
        basis = ambient_basis(w, N)
        d = build_D(basis).entries
        ib = basis.interior_block()
        defect = (np.eye(2 * N) - d @ d.conj().T)[np.ix_(ib, ib)]
        out.append(float(np.linalg.norm(defect, 2)))
    return out[0], out[1]
