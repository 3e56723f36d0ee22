"""The model space K_u = H^2 minus uH^2 for a finite Blaschke product u."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .blaschke import (BlaschkeProduct, band_for, cauchy_tail_bound, evaluate,
                       fourier_coeffs, taylor_coeffs)
from .errors import TailTooLarge
from .fourier import (FourierVector, conjugate, inner_product, multiply,
                      project_minus, project_plus, shift)

BASIS_TAIL_TOL = 1e-10


@lru_cache(maxsize=256)
def u_series(u: BlaschkeProduct, band_max: int) -> FourierVector:
    """Truncated Taylor series of u (cached; u is hashable)."""
    return fourier_coeffs(u, band_max)[0]


@lru_cache(maxsize=256)
def ubar_series(u: BlaschkeProduct, band_max: int) -> FourierVector:
    """conj(u) on the circle, from the truncated series of u."""
    return conjugate(u_series(u, band_max))


@dataclass(frozen=True, eq=False)
class ModelBasis:
    u: BlaschkeProduct
    vectors: tuple[FourierVector, ...]
    band_max: int
    tail_bound: float

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """Coefficients 0..band_max of the basis vectors as columns."""
        if not self.vectors:
            return np.zeros((self.band_max + 1, 0), dtype=complex)
        return np.stack([v.window(0, self.band_max) for v in self.vectors], axis=1)

    def gram(self) -> np.ndarray:
        m = self.matrix()
        return m.conj().T @ m


@dataclass(frozen=True, eq=False)
class KernelVector:
    lam: complex
    vector: FourierVector


def _tm_function(zeros, k):
    lam = zeros[k]
    scale = np.sqrt(1.0 - abs(lam) ** 2)

    def f(z):
        out = scale / (1.0 - np.conj(lam) * z)
        for a in zeros[:k]:
            out = out * (z - a) / (1.0 - np.conj(a) * z)
        return out

    def log_sup(rho):
        out = np.log(scale) - np.log1p(-abs(lam) * rho)
        for a in zeros[:k]:
            out += np.log(rho + abs(a)) - np.log1p(-abs(a) * rho)
        return float(out)

    return f, log_sup


def default_band(u: BlaschkeProduct, extra: int = 0) -> int:
    return band_for(u, u.degree + extra + 8)


def tm_basis(u: BlaschkeProduct, band_max: int | None = None,
             tol: float = BASIS_TAIL_TOL) -> ModelBasis:
    """Takenaka-Malmquist orthonormal basis of K_u, in the order the zeros are stored.

    e_k = sqrt(1-|l_k|^2) / (1 - conj(l_k) z) * prod_{i<k} (z - l_i)/(1 - conj(l_i) z)
    """
    if band_max is None:
        band_max = default_band(u)
    zeros = u.zeros
    vectors, worst = [], 0.0
    for k in range(len(zeros)):
        r = max(abs(a) for a in zeros[:k + 1])
        if r == 0.0:
            c = np.zeros(band_max + 1, dtype=complex)
            c[k] = 1.0
            tail = 0.0
        else:
            f, log_sup = _tm_function(zeros, k)
            c = taylor_coeffs(f, band_max, r)
            tail = cauchy_tail_bound(log_sup, r, band_max)
        if tail > tol:
            raise TailTooLarge(f"basis vector {k}: tail {tail:.3g} > {tol:.3g}")
        worst = max(worst, tail)
        vectors.append(FourierVector.analytic(c))
    return ModelBasis(u, tuple(vectors), band_max, worst)


def kernel(u: BlaschkeProduct, lam: complex, band_max: int | None = None) -> KernelVector:
    """Reproducing kernel (1 - conj(u(lam)) u(z)) / (1 - conj(lam) z) of K_u."""
    if abs(lam) >= 1.0:
        raise ValueError("kernel point must lie in the open disk")
    if band_max is None:
        band_max = default_band(u)
    ul = complex(evaluate(u, lam))
    r = max(u.decay_rate, abs(lam))
    if r == 0.0:
        # u = c z^k and lam = 0: 1 - conj(u(0)) u = 1 exactly (k >= 1) or 0 (k = 0).
        c = np.zeros(band_max + 1, dtype=complex)
        c[0] = 1.0 - np.conj(ul) * (u.constant if u.degree == 0 else 0.0)
        return KernelVector(lam, FourierVector.analytic(c))
    c = taylor_coeffs(lambda z: (1.0 - np.conj(ul) * evaluate(u, z)) / (1.0 - np.conj(lam) * z),
                      band_max, r)
    return KernelVector(lam, FourierVector.analytic(c))


def project_model(u: BlaschkeProduct, f: FourierVector, method: str = "formula",
                  band_max: int | None = None, basis: ModelBasis | None = None) -> FourierVector:
    """Orthogonal projection of f onto K_u.

    ``formula``      P^+ f - u P^+(conj(u) f)
    ``formula_alt``  u P^-(conj(u) P^+ f)
    ``basis``        sum_k <f, e_k> e_k over the Takenaka-Malmquist basis
    """
    if band_max is None:
        band_max = max(default_band(u, max(f.n_max, 0)), basis.band_max if basis else 0)
    out_band = (0, band_max)
    if method == "basis":
        basis = basis if basis is not None else tm_basis(u, band_max)
        out = FourierVector.zeros(*out_band)
        for e in basis.vectors:
            out = out + inner_product(f, e) * e.resized(*out_band)
        return out.resized(*out_band)
    uu, ub = u_series(u, band_max), ubar_series(u, band_max)
    fp = project_plus(f)
    if method == "formula":
        g = project_plus(multiply(ub, f))
        return (fp.resized(*out_band) - multiply(uu, g, out_band, truncate=True)).resized(*out_band)
    if method == "formula_alt":
        g = project_minus(multiply(ub, fp))
        return multiply(uu, g, out_band, truncate=True)
    raise ValueError(f"unknown projection method {method!r}")


def project_complement(u: BlaschkeProduct, f: FourierVector,
                       band_max: int | None = None) -> FourierVector:
    """(I - P_u) f = P^- f + u P^+(conj(u) f)."""
    if band_max is None:
        band_max = default_band(u, max(f.n_max, 0))
    band = (min(f.n_min, 0), band_max)
    g = project_plus(multiply(ubar_series(u, band_max), f))
    return (project_minus(f) + multiply(u_series(u, band_max), g, band, truncate=True)).resized(*band)


def conjugation(u: BlaschkeProduct, f: FourierVector,
                band_max: int | None = None) -> FourierVector:
    """C_u f = u * conj(z f), a conjugate-linear involutive isometry of L^2."""
    if band_max is None:
        band_max = default_band(u, max(f.n_max, -f.n_min))
    return multiply(u_series(u, band_max), conjugate(shift(f)))
