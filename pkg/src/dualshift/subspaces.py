"""Invariant subspaces of D_u (and of S + S*) in truncated coordinates.

A SubspaceBasis holds an orthonormal coordinate matrix on one of the labelled
bases from ``dual``.  Equality of subspaces is always decided by two-sided
projection residuals, never by comparing basis vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .blaschke import BlaschkeProduct, is_coprime, value_at_zero
from .dual import AmbientBasis, OperatorMatrix
from .equivalence import origin_branch
from .errors import (NoScorableColumns, NotInvariant, NotOrthogonal, PredicateFailed,
                     RankDeficient, ZeroAtOrigin)
from .fourier import FourierVector, conjugate, multiply
from .linalg import (RANK_TOL, complement, containment_residual, distance, orthonormalize,
                     projector, residual_norms)
from .model_space import default_band, tm_basis, u_series
from .report import VerificationReport, _jsonable, timed

INVARIANCE_TOL = 1e-8
SPLIT_TOL = 1e-8
CHARFN_TOL = 1e-3


def charfn_edge_margin(n: int) -> int:
    """chi_A L^2 has no band-limited counterpart near the truncation edges;
    its pullbacks are scored this far away from them."""
    return n // 4


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    ambient: str
    columns: np.ndarray
    construction: dict[str, Any] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.columns.shape[1]

    def projector(self) -> np.ndarray:
        return projector(self.columns)

    def orthonormality_residual(self) -> float:
        if self.dim == 0:
            return 0.0
        g = self.columns.conj().T @ self.columns
        return float(np.max(np.abs(g - np.eye(self.dim))))


@dataclass(frozen=True)
class ArcUnion:
    """Disjoint arcs (start, end) with 0 <= start < end <= 2 pi."""

    arcs: tuple[tuple[float, float], ...]

    def __post_init__(self):
        arcs = tuple(sorted((float(a), float(b)) for a, b in self.arcs))
        if not arcs:
            raise ValueError("at least one arc required")
        for a, b in arcs:
            if not 0.0 <= a < b <= 2 * np.pi:
                raise ValueError(f"arc ({a}, {b}) not inside [0, 2 pi)")
        for (_, b), (c, _) in zip(arcs, arcs[1:]):
            if c < b:
                raise ValueError("arcs overlap")
        if not 0.0 < self.measure < 2 * np.pi:
            raise ValueError("total measure must lie strictly between 0 and 2 pi")
        object.__setattr__(self, "arcs", arcs)

    @property
    def measure(self) -> float:
        return sum(b - a for a, b in self.arcs)

    def coefficient(self, n: int) -> complex:
        """Fourier coefficient of the indicator function."""
        if n == 0:
            return self.measure / (2 * np.pi)
        return complex(sum((np.exp(-1j * n * a) - np.exp(-1j * n * b)) / (2j * np.pi * n)
                           for a, b in self.arcs))

    def series(self, band: int) -> FourierVector:
        return FourierVector(-band, band, np.array([self.coefficient(n)
                                                    for n in range(-band, band + 1)]))


@dataclass(frozen=True)
class QuotientInner:
    """w = conj(alpha) beta."""

    alpha: BlaschkeProduct
    beta: BlaschkeProduct


@dataclass(frozen=True)
class CharFn:
    arcs: ArcUnion


# -- checking ------------------------------------------------------------------

def scored_space(T: OperatorMatrix, S: SubspaceBasis, edge_margin: int = 0) -> np.ndarray:
    """Orthonormal basis of the part of S supported on T's interior coordinates.

    ``edge_margin`` additionally drops the first and last ``edge_margin``
    coordinates, i.e. the ends of the truncated chains.
    """
    q = S.columns
    n = T.shape[1]
    interior = set(T.interior_cols)
    non = [i for i in range(n)
           if i not in interior or i < edge_margin or i >= n - edge_margin]
    if q.shape[1] == 0 or not non:
        return q
    _, s, vh = np.linalg.svd(q[non, :], full_matrices=True)
    r = int(np.sum(s > RANK_TOL))
    return q @ vh[r:].conj().T


def invariance_residual(T: OperatorMatrix, S: SubspaceBasis, edge_margin: int = 0) -> float:
    """max ||(I - S S*) T b|| over an orthonormal basis b of the scored part of S."""
    y = scored_space(T, S, edge_margin)
    if y.shape[1] == 0:
        raise NoScorableColumns("no direction of the subspace avoids the truncation edge")
    return float(np.max(residual_norms(T.entries @ y, S.columns)))


# -- constructors -----------------------------------------------------------------

def _chain_embed(basis: AmbientBasis, h2: np.ndarray | None = None,
                 zbar: np.ndarray | None = None) -> np.ndarray:
    """Place H^2_N coordinates on the u-chain and conj(H^2_0) coordinates
    (ordered zbar^1..zbar^N) on the zbar-chain."""
    n = basis.N
    cols = (h2 if h2 is not None else zbar).shape[1]
    out = np.zeros((2 * n, cols), dtype=complex)
    if h2 is not None:
        out[basis.u_chain] = h2
    if zbar is not None:
        out[basis.zbar_chain] = zbar[::-1]
    return out


def _truncated_model(w: BlaschkeProduct, n: int) -> np.ndarray:
    """Orthonormalized first-n Taylor coefficients of a basis of K_w (columns)."""
    if w.degree == 0:
        return np.zeros((n, 0), dtype=complex)
    mb = tm_basis(w, default_band(w, n))
    return orthonormalize(mb.matrix()[:n])


def _zbar_conj_coords(alpha: BlaschkeProduct, n: int) -> np.ndarray:
    """zbar * conj(e_k) in zbar^1..zbar^N coordinates: coefficient of zbar^(m+1) is conj(e_k(m))."""
    if alpha.degree == 0:
        return np.zeros((n, 0), dtype=complex)
    mb = tm_basis(alpha, default_band(alpha, n))
    return orthonormalize(mb.matrix()[:n].conj())


def subspace_gamma_uH2(gamma: BlaschkeProduct, basis: AmbientBasis) -> SubspaceBasis:
    """gamma u H^2: the u-chain with u K_gamma removed."""
    n = basis.N
    if gamma.degree >= n:
        raise ValueError("truncation too short for gamma")
    y = complement(_truncated_model(gamma, n))
    cols = _chain_embed(basis, h2=y)
    return SubspaceBasis("ambient", cols, {"kind": "gamma_u_h2", "gamma": gamma, "u": basis.u})


def u_chain(basis: AmbientBasis) -> SubspaceBasis:
    return subspace_gamma_uH2(BlaschkeProduct(), basis)


def zbar_chain(basis: AmbientBasis) -> SubspaceBasis:
    cols = _chain_embed(basis, zbar=np.eye(basis.N, dtype=complex))
    return SubspaceBasis("ambient", cols, {"kind": "h2_0_bar", "u": basis.u})


def subspace_zbar_conj_K(alpha: BlaschkeProduct, basis: AmbientBasis) -> SubspaceBasis:
    """zbar conj(K_alpha), inside the zbar-chain; zero-dimensional for constant alpha."""
    x = _zbar_conj_coords(alpha, basis.N)
    cols = _chain_embed(basis, zbar=x)
    return SubspaceBasis("ambient", cols, {"kind": "zbar_conj_k", "alpha": alpha, "u": basis.u})


def direct_sum(x: SubspaceBasis, y: SubspaceBasis, tol: float = 1e-10) -> SubspaceBasis:
    if x.ambient != y.ambient or x.columns.shape[0] != y.columns.shape[0]:
        raise ValueError("summands live in different spaces")
    if x.dim and y.dim:
        overlap = float(np.max(np.abs(x.columns.conj().T @ y.columns)))
        if overlap > tol:
            raise NotOrthogonal(f"summands overlap by {overlap:.3g}")
    cols = np.concatenate([x.columns, y.columns], axis=1)
    return SubspaceBasis(x.ambient, cols, {"kind": "direct_sum",
                                           "parts": [x.construction, y.construction]})


def _v_inverse(basis: AmbientBasis, f: np.ndarray) -> np.ndarray:
    """Monomial L^2 coordinates to ambient coordinates: z^k -> conj(u(0)) u z^k."""
    out = f.astype(complex).copy()
    out[basis.u_chain] *= np.conj(value_at_zero(basis.u))
    return out


def quotient_space(alpha: BlaschkeProduct, beta: BlaschkeProduct, n: int) -> np.ndarray:
    """conj(alpha) beta H^2 in monomial coordinates zbar^N..zbar^1, z^0..z^(N-1).

    conj(alpha) H^2 = zbar conj(K_alpha) + H^2, and removing conj(alpha) K_beta
    from it leaves conj(alpha) beta H^2.
    """
    x = _zbar_conj_coords(alpha, n)
    amb = np.zeros((2 * n, x.shape[1] + n), dtype=complex)
    amb[:n, :x.shape[1]] = x[::-1]
    amb[n:, x.shape[1]:] = np.eye(n)
    if beta.degree == 0:
        return amb
    band = max(default_band(alpha, n), default_band(beta, n))
    ab = conjugate(u_series(alpha, band)) if alpha.degree else FourierVector.monomial(0)
    gens = []
    for e in tm_basis(beta, band).vectors:
        g = multiply(ab, e).window(-n, n - 1)
        gens.append(g)
    g = np.stack(gens, axis=1)
    g = amb @ (amb.conj().T @ g)
    return complement(orthonormalize(g), within=amb)


def charfn_space(arcs: ArcUnion, n: int) -> np.ndarray:
    """Approximation of chi_A L^2: eigenvectors of the truncated Laurent matrix of
    chi_A with eigenvalue above 1/2."""
    lo, hi = -n, n - 1
    freqs = np.arange(lo, hi + 1)
    c = {k: arcs.coefficient(k) for k in range(lo - hi, hi - lo + 1)}
    t = np.array([[c[m - k] for k in freqs] for m in freqs])
    w, v = np.linalg.eigh(t)
    # frequencies ascending is exactly the monomial order zbar^N..zbar^1, z^0..
    return v[:, w > 0.5]


def pullback_V_inv(u: BlaschkeProduct, target, basis: AmbientBasis) -> SubspaceBasis:
    """V_u^{-1} F for F = conj(alpha) beta H^2 or chi_A L^2."""
    if basis.u != u:
        raise ValueError("basis belongs to another inner function")
    if not origin_branch(u):
        raise ZeroAtOrigin("pullback through V_u needs u(0) != 0")
    n = basis.N
    if isinstance(target, QuotientInner):
        a, b = target.alpha, target.beta
        if not is_coprime(a, b):
            raise ValueError("alpha and beta must be coprime")
        f = quotient_space(a, b, n)
        expect = n + a.degree - b.degree
        if f.shape[1] != expect:
            raise RankDeficient(f"quotient space has dimension {f.shape[1]}, expected {expect}")
        tag = {"kind": "pullback", "alpha": a, "beta": b, "u": u}
    elif isinstance(target, CharFn):
        f = charfn_space(target.arcs, n)
        tag = {"kind": "char_fn", "arcs": [list(x) for x in target.arcs.arcs], "u": u,
               "approximate": True, "edge_margin": charfn_edge_margin(n)}
    else:
        raise TypeError(f"unsupported pullback target {target!r}")
    s = orthonormalize(_v_inverse(basis, f))
    if s.shape[1] != f.shape[1]:
        raise RankDeficient("pullback lost rank")
    return SubspaceBasis("ambient", s, tag)


def vector_z_minus(basis: AmbientBasis, lam: complex) -> np.ndarray:
    """Coordinates of z - lam = u (1 - conj(lam) z) when u is the Mobius map at lam."""
    x = np.zeros(basis.dim, dtype=complex)
    x[basis.uz(0)] = 1.0
    x[basis.uz(1)] = -np.conj(lam)
    return x


def example_6_3_proper_containment(lam: complex, N: int = 64,
                                   tol: float = 1e-8) -> dict[str, Any]:
    """The pullback of conj(alpha) z H^2 with u = alpha = Mobius(lam): a proper subspace
    of zbar conj(K_alpha) + u H^2."""
    from .dual import ambient_basis
    if lam == 0:
        raise ZeroAtOrigin("lambda must be nonzero")
    with timed() as t:
        u = BlaschkeProduct.mobius(lam)
        basis = ambient_basis(u, N)
        s1 = pullback_V_inv(u, QuotientInner(u, BlaschkeProduct.power(1)), basis)
        s2 = direct_sum(subspace_zbar_conj_K(u, basis), u_chain(basis))
        contain = containment_residual(s1.columns, s2.columns)
        x = vector_z_minus(basis, lam)
        dist = distance(x, s1.columns)
        in_s2 = distance(x, s2.columns)
    report = VerificationReport(
        "proper_containment", {"lambda": complex(lam), "N": N}, contain, tol, runtime_ms=t[0],
        details={"distance": dist, "distance_to_larger": in_s2, "dim_S1": s1.dim,
                 "dim_S2": s2.dim})
    return {"distance": dist, "report": report, "S1": s1, "S2": s2}


def cyclic_subspace(T: OperatorMatrix, seed: np.ndarray, n_max: int | None = None,
                    tol: float = 1e-12) -> SubspaceBasis:
    """Orthonormal basis of span{T^n seed} built Arnoldi-style with modified Gram-Schmidt."""
    seed = np.asarray(seed, dtype=complex)
    if n_max is None:
        n_max = 2 * T.shape[1]
    nrm = np.linalg.norm(seed)
    if nrm == 0.0:
        return SubspaceBasis(T.domain, np.zeros((len(seed), 0), dtype=complex),
                             {"kind": "cyclic"})
    q = [seed / nrm]
    for _ in range(n_max):
        w = T.entries @ q[-1]
        for _ in range(2):
            for b in q:
                w = w - np.vdot(b, w) * b
        h = np.linalg.norm(w)
        if h < tol:
            break
        q.append(w / h)
    return SubspaceBasis(T.domain, np.stack(q, axis=1), {"kind": "cyclic", "steps": len(q)})


def kernel_coords(a: complex, n: int) -> np.ndarray:
    """First n Taylor coefficients of 1 / (1 - conj(a) z)."""
    return np.conj(a) ** np.arange(n)


def kernel_pair_cyclic(a: complex = 0.5, N: int = 64, samples: int = 50, seed: int = 0,
                tol: float = 1e-6) -> dict[str, Any]:
    """Cyclic subspace of S + S* generated by k_a + k_a versus {f + f(conj a)(1 - conj(a)^2) k_a}."""
    from .equivalence import s_plus_s_star
    with timed() as t:
        T = s_plus_s_star(N)
        k = kernel_coords(a, N)
        cyc = cyclic_subspace(T, np.concatenate([k, k]), n_max=4 * N)
        rng = np.random.default_rng(seed)
        ab = np.conj(a)
        worst = 0.0
        for _ in range(samples):
            f = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) / np.sqrt(2 * N)
            fa = np.polyval(f[::-1], ab)
            vec = np.concatenate([f, fa * (1 - ab ** 2) * k])
            worst = max(worst, distance(vec, cyc.columns) / np.linalg.norm(vec))
        outside = np.concatenate([np.eye(N)[0], k])
        dist = distance(outside, cyc.columns)
    report = VerificationReport("kernel_pair_cyclic", {"a": complex(a), "N": N, "samples": samples},
                                worst, tol, runtime_ms=t[0],
                                details={"distance": dist, "dim": cyc.dim})
    return {"membership": worst, "distance": dist, "report": report, "subspace": cyc}


# -- classification -----------------------------------------------------------------

@dataclass(frozen=True)
class PminusClass:
    kind: str                   # "Zero", "All" or "ZbarConjK"
    dimension: int
    predicate_residual: float = 0.0


def _zbar_part(S: SubspaceBasis, basis: AmbientBasis) -> np.ndarray:
    return orthonormalize(S.columns[basis.zbar_chain], rank_tol=1e-8)


def _u_part(S: SubspaceBasis, basis: AmbientBasis) -> np.ndarray:
    return orthonormalize(S.columns[basis.u_chain], rank_tol=1e-8)


def classify_pminus_image(S: SubspaceBasis, basis: AmbientBasis) -> PminusClass:
    n = basis.N
    block = S.columns[basis.zbar_chain]
    if block.size == 0 or np.max(np.linalg.norm(block, axis=0)) < 1e-10:
        return PminusClass("Zero", 0)
    x = _zbar_part(S, basis)
    if x.shape[1] == n:
        return PminusClass("All", n)
    # P^-(z g) on the zbar-chain, which is stored as zbar^N..zbar^1.
    q = np.eye(n, k=-1)
    res = float(np.max(residual_norms(q @ x, x)))
    if res > INVARIANCE_TOL:
        raise PredicateFailed(f"P^- image is not invariant under P^- M_z (residual {res:.3g})")
    return PminusClass("ZbarConjK", x.shape[1], res)


@dataclass(frozen=True)
class Classification:
    tag: str
    split_residual: float
    invariance_residual: float
    alpha_degree: int | None = None
    gamma_degree: int | None = None
    origin_nonzero: bool = False

    def to_dict(self) -> dict[str, Any]:
        return _jsonable({"tag": self.tag, "split_residual": self.split_residual,
                          "invariance_residual": self.invariance_residual,
                          "alpha_degree": self.alpha_degree, "gamma_degree": self.gamma_degree,
                          "u0_nonzero": self.origin_nonzero})


def classify_orthogonal_sum(S: SubspaceBasis, basis: AmbientBasis,
                            T: OperatorMatrix | None = None) -> Classification:
    """Decide whether S = X_- + Y_+ and, if so, which of the listed forms it takes."""
    from .dual import build_D
    T = T if T is not None else build_D(basis)
    inv = invariance_residual(T, S)
    if inv > INVARIANCE_TOL:
        raise NotInvariant(f"invariance residual {inv:.3g}")
    n = basis.N
    x, y = _zbar_part(S, basis), _u_part(S, basis)
    px = np.zeros((2 * n, 2 * n), dtype=complex)
    py = np.zeros_like(px)
    px[np.ix_(basis.zbar_chain, basis.zbar_chain)] = projector(x)
    py[np.ix_(basis.u_chain, basis.u_chain)] = projector(y)
    split = float(np.linalg.norm(S.projector() - px - py, 2))
    nonzero = origin_branch(basis.u)
    if split > SPLIT_TOL:
        return Classification("NonSplitting", split, inv, origin_nonzero=nonzero)
    pm = classify_pminus_image(S, basis)
    dy = y.shape[1]
    gamma = n - dy if dy else None
    alpha = pm.dimension if pm.kind == "ZbarConjK" else None
    if pm.kind == "Zero":
        tag = "gamma_u_h2"
    elif dy == 0:
        tag = "h2_0_bar" if pm.kind == "All" else "zbar_conj_k"
    else:
        tag = "h2_0_bar_plus_gamma_u_h2" if pm.kind == "All" else "zbar_conj_k_plus_gamma_u_h2"
    if nonzero and (dy == 0 or (pm.kind != "Zero" and gamma != 0)):
        raise PredicateFailed(f"split invariant subspace {tag} (gamma degree {gamma}) "
                              "cannot occur when u(0) != 0")
    return Classification(tag, split, inv, alpha, gamma, nonzero)
