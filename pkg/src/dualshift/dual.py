"""Matrices of the dual compressed shift and its relatives on truncated bases.

Coordinates on the complement of K_u use the orthonormal family

    zbar^N, ..., zbar^1, u*z^0, ..., u*z^(N-1)

(the "ambient basis").  Structural builders write the exact column action
derived from D_u f = z f - conj(phi_f(0)) k_0; numeric builders go through
Fourier-side multiplication and projections and serve as independent oracles.
A column is *interior* when its image is exactly representable in the
truncation; identities are only asserted on interior columns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, band_for, fourier_coeffs, value_at_zero
from .fourier import FourierVector, multiply, project_minus, project_plus, shift, conjugate
from .model_space import (ModelBasis, conjugation, project_complement, project_model,
                          tm_basis)
from .report import VerificationReport, timed

ESCAPE_TOL = 1e-9


def ambient_labels(n: int, inner: str = "u") -> tuple[str, ...]:
    return tuple(f"zbar^{j}" for j in range(n, 0, -1)) + tuple(f"{inner}*z^{k}" for k in range(n))


def monomial_labels(n: int) -> tuple[str, ...]:
    """Truncated L^2: zbar^N..zbar^1, z^0..z^(N-1)."""
    return tuple(f"zbar^{j}" for j in range(n, 0, -1)) + tuple(f"z^{k}" for k in range(n))


def h2_labels(n: int) -> tuple[str, ...]:
    return tuple(f"z^{k}" for k in range(n))


def h20bar_labels(n: int) -> tuple[str, ...]:
    return tuple(f"zbar^{j}" for j in range(1, n + 1))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    domain: str
    codomain: str
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    interior_cols: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def interior_residual(self, other) -> float:
        """Max entrywise |self - other| over this matrix's interior columns."""
        b = other.entries if isinstance(other, OperatorMatrix) else np.asarray(other)
        cols = list(self.interior_cols)
        if not cols:
            return 0.0
        return float(np.max(np.abs(self.entries[:, cols] - b[:, cols])))


@dataclass(frozen=True, eq=False)
class AmbientBasis:
    u: BlaschkeProduct
    N: int
    interior_margin: int
    band_max: int
    tail_bound: float
    lo: int
    hi: int
    matrix: np.ndarray

    @property
    def labels(self) -> tuple[str, ...]:
        return ambient_labels(self.N)

    @property
    def dim(self) -> int:
        return 2 * self.N

    def zbar(self, j: int) -> int:
        return self.N - j

    def uz(self, k: int) -> int:
        return self.N + k

    @property
    def zbar_chain(self) -> np.ndarray:
        return np.arange(self.N)

    @property
    def u_chain(self) -> np.ndarray:
        return np.arange(self.N, 2 * self.N)

    def interior_block(self) -> np.ndarray:
        """Indices at least ``interior_margin`` away from both truncation edges."""
        m = self.interior_margin
        return np.array([self.zbar(j) for j in range(self.N - m, 0, -1)]
                        + [self.uz(k) for k in range(self.N - m)])

    def element(self, i: int) -> FourierVector:
        return FourierVector(self.lo, self.hi, self.matrix[:, i])

    def vector(self, x: np.ndarray) -> FourierVector:
        return FourierVector(self.lo, self.hi, self.matrix @ x)

    def coords(self, g: FourierVector) -> np.ndarray:
        return self.matrix.conj().T @ g.window(self.lo, self.hi)

    def escape(self, g: FourierVector) -> float:
        """Norm of the part of g outside the span of the basis (within the window)."""
        w = g.window(self.lo, self.hi)
        outside = g.norm() ** 2 - np.linalg.norm(w) ** 2
        r = w - self.matrix @ (self.matrix.conj().T @ w)
        return float(np.sqrt(max(outside, 0.0) + np.linalg.norm(r) ** 2))

    def gram_residual(self) -> float:
        g = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(g - np.eye(self.dim))))


def ambient_basis(u: BlaschkeProduct, N: int = 64, m: int | None = None,
                  band_guard: int = 8) -> AmbientBasis:
    """Labelled orthonormal basis of the truncated complement of K_u."""
    if m is None:
        # degree + 2 where the truncation allows it
        m = max(1, min(u.degree + 2, N - u.degree))
    if m < 1:
        raise ValueError("interior margin must be >= 1")
    if N < 2 or N < u.degree + m:
        raise ValueError(f"N={N} too small for degree {u.degree} with margin {m}")
    band_max = band_for(u, N + u.degree + band_guard)
    useries, tail = fourier_coeffs(u, band_max, tol=1e-12)
    lo, hi = -(N + band_guard), band_max + N
    mat = np.zeros((hi - lo + 1, 2 * N), dtype=complex)
    for j in range(1, N + 1):
        mat[-j - lo, N - j] = 1.0
    uc = useries.window(0, band_max)
    for k in range(N):
        mat[k - lo:k - lo + band_max + 1, N + k] = uc
    return AmbientBasis(u, N, m, band_max, tail, lo, hi, mat)


# -- structural builders ---------------------------------------------------

def build_D(basis: AmbientBasis) -> OperatorMatrix:
    """D_u from its exact column action."""
    n, u0 = basis.N, value_at_zero(basis.u)
    d = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(2, n + 1):
        d[basis.zbar(j - 1), basis.zbar(j)] = 1.0
    d[basis.uz(0), basis.zbar(1)] = np.conj(u0)
    for k in range(n - 1):
        d[basis.uz(k + 1), basis.uz(k)] = 1.0
    interior = tuple(i for i in range(2 * n) if i != basis.uz(n - 1))
    return OperatorMatrix(d, "ambient", "ambient", basis.labels, basis.labels, interior)


def build_D_star(basis: AmbientBasis) -> OperatorMatrix:
    """Adjoint of D_u: zbar^j -> zbar^(j+1), u z^k -> u z^(k-1), u -> u(0) zbar."""
    n, u0 = basis.N, value_at_zero(basis.u)
    d = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(1, n):
        d[basis.zbar(j + 1), basis.zbar(j)] = 1.0
    d[basis.zbar(1), basis.uz(0)] = u0
    for k in range(1, n):
        d[basis.uz(k - 1), basis.uz(k)] = 1.0
    interior = tuple(i for i in range(2 * n) if i != basis.zbar(n))
    return OperatorMatrix(d, "ambient", "ambient", basis.labels, basis.labels, interior)


def bilateral_shift(n: int) -> OperatorMatrix:
    """Multiplication by z on truncated L^2 (monomial coordinates)."""
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    idx = {lab: i for i, lab in enumerate(monomial_labels(n))}
    for j in range(2, n + 1):
        m[idx[f"zbar^{j - 1}"], idx[f"zbar^{j}"]] = 1.0
    m[idx["z^0"], idx["zbar^1"]] = 1.0
    for k in range(n - 1):
        m[idx[f"z^{k + 1}"], idx[f"z^{k}"]] = 1.0
    labels = monomial_labels(n)
    interior = tuple(i for i in range(2 * n) if i != idx[f"z^{n - 1}"])
    return OperatorMatrix(m, "L2", "L2", labels, labels, interior)


def unilateral_shift(n: int) -> OperatorMatrix:
    s = np.eye(n, k=-1, dtype=complex)
    return OperatorMatrix(s, "H2", "H2", h2_labels(n), h2_labels(n), tuple(range(n - 1)))


def backward_shift(n: int) -> OperatorMatrix:
    s = np.eye(n, k=1, dtype=complex)
    return OperatorMatrix(s, "H2", "H2", h2_labels(n), h2_labels(n), tuple(range(n)))


def build_Q(n: int) -> OperatorMatrix:
    """Q g = P^-(z g) on conj(H^2_0), coordinates zbar^1..zbar^N."""
    q = np.eye(n, k=1, dtype=complex)
    return OperatorMatrix(q, "H2_0bar", "H2_0bar", h20bar_labels(n), h20bar_labels(n),
                          tuple(range(n)))


# -- numeric builders (oracles) ----------------------------------------------

def _assemble(basis: AmbientBasis, images, domain="ambient") -> OperatorMatrix:
    cols, interior = [], []
    for i, h in enumerate(images):
        cols.append(basis.coords(h))
        if basis.escape(h) <= ESCAPE_TOL * max(h.norm(), 1.0):
            interior.append(i)
    return OperatorMatrix(np.stack(cols, axis=1), domain, "ambient", basis.labels,
                          basis.labels, tuple(interior))


def dense_D_oracle(basis: AmbientBasis, model: ModelBasis | None = None) -> OperatorMatrix:
    """(I - P_u) M_z on the ambient basis, with P_u taken through the model basis."""
    if model is None:
        model = tm_basis(basis.u, basis.hi)
    images = []
    for i in range(basis.dim):
        g = shift(basis.element(i))
        images.append(g - project_model(basis.u, g, "basis", basis=model))
    return _assemble(basis, images)


def build_dual_tt(u: BlaschkeProduct, phi: FourierVector, basis: AmbientBasis) -> OperatorMatrix:
    """Dual truncated Toeplitz operator (I - P_u) M_phi on the complement of K_u."""
    images = [project_complement(u, multiply(phi, basis.element(i)), basis.hi)
              for i in range(basis.dim)]
    return _assemble(basis, images)


def conjugation_matrix(basis: AmbientBasis) -> np.ndarray:
    """Columns are coordinates of C_u(b); C_u(x) = C @ conj(x) for coordinate vectors x."""
    return np.stack([basis.coords(conjugation(basis.u, basis.element(i), basis.band_max))
                     for i in range(basis.dim)], axis=1)


def build_truncated_toeplitz(u: BlaschkeProduct, phi: FourierVector,
                             model: ModelBasis) -> OperatorMatrix:
    """A_phi = P_u M_phi on K_u in the Takenaka-Malmquist basis."""
    d = model.dim
    a = np.zeros((d, d), dtype=complex)
    for j, e in enumerate(model.vectors):
        g = project_model(u, multiply(phi, e), "formula", band_max=model.band_max + phi.n_max)
        for i, f in enumerate(model.vectors):
            a[i, j] = np.vdot(f.window(0, g.n_max), g.window(0, g.n_max))
    labels = tuple(f"e{k}" for k in range(d))
    return OperatorMatrix(a, "K_u", "K_u", labels, labels, tuple(range(d)))


def build_S_u(u: BlaschkeProduct, model: ModelBasis) -> OperatorMatrix:
    """Compressed shift P_u M_z on K_u."""
    return build_truncated_toeplitz(u, FourierVector.monomial(1), model)


def build_hankel(phi: FourierVector, n: int) -> OperatorMatrix:
    """H_phi f = P^-(phi f) from span{z^0..z^(N-1)} to span{zbar^1..zbar^N}."""
    h = np.zeros((n, n), dtype=complex)
    interior = []
    for k in range(n):
        g = project_minus(multiply(phi, FourierVector.monomial(k)))
        h[:, k] = [g.coeff(-j) for j in range(1, n + 1)]
        if g.n_min >= -n or not np.any(g.window(g.n_min, -n - 1)):
            interior.append(k)
    return OperatorMatrix(h, "H2", "H2_0bar", h20bar_labels(n), h2_labels(n), tuple(interior))


def hankel_star(phi: FourierVector, n: int) -> OperatorMatrix:
    """H_phi^* g = P^+(conj(phi) g) from span{zbar^1..zbar^N} to span{z^0..z^(N-1)}."""
    h = np.zeros((n, n), dtype=complex)
    pb = conjugate(phi)
    interior = []
    for j in range(1, n + 1):
        g = project_plus(multiply(pb, FourierVector.monomial(-j)))
        h[:, j - 1] = [g.coeff(k) for k in range(n)]
        if g.n_max < n or not np.any(g.window(n, g.n_max)):
            interior.append(j - 1)
    return OperatorMatrix(h, "H2_0bar", "H2", h2_labels(n), h20bar_labels(n), tuple(interior))


def block_compression_check(u: BlaschkeProduct, N: int = 64, tol: float = 1e-9) -> VerificationReport:
    """Compress M_z to K_u and to its complement and compare with S_u and D_u."""
    with timed() as t:
        basis = ambient_basis(u, N)
        model = tm_basis(u, basis.hi)
        km = model.matrix()[: basis.hi + 1]
        full = basis.matrix.copy()
        kblock = np.zeros((basis.hi - basis.lo + 1, model.dim), dtype=complex)
        kblock[-basis.lo:, :] = km
        # zbar chain, K_u, u chain
        combined = np.concatenate([full[:, :N], kblock, full[:, N:]], axis=1)
        shifted = np.zeros_like(combined)
        shifted[1:] = combined[:-1]
        m = combined.conj().T @ shifted
        gram = float(np.max(np.abs(combined.conj().T @ combined - np.eye(combined.shape[1]))))
        d = model.dim
        k_idx = np.arange(N, N + d)
        perp = np.concatenate([np.arange(N), np.arange(N + d, 2 * N + d)])
        su = build_S_u(u, model)
        dm = build_D(basis)
        r_k = float(np.max(np.abs(m[np.ix_(k_idx, k_idx)] - su.entries))) if d else 0.0
        r_perp = dm.interior_residual(m[np.ix_(perp, perp)])
        residual = max(r_k, r_perp, gram)
    return VerificationReport(
        "block_compression", {"u": u, "N": N}, residual, tol, runtime_ms=t[0],
        details={"compressed_shift": r_k, "dual": r_perp, "gram": gram})
