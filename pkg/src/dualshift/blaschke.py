"""Finite Blaschke products and their Fourier expansions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import PoleProximity, TailTooLarge
from .fourier import FourierVector, default_grid_size

ZERO_MARGIN = 1e-6
POLE_TOL = 1e-12
# Aliasing target when sampling analytic functions on the circle.
ALIAS_TOL = 1e-18
MAX_GRID = 1 << 20


@dataclass(frozen=True)
class BlaschkeProduct:
    """c * prod_i (z - l_i) / (1 - conj(l_i) z), zeros listed with multiplicity."""

    constant: complex = 1.0
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError(f"unimodular constant required, |c| = {abs(c)}")
        zs = tuple(complex(z) for z in self.zeros)
        for z in zs:
            if abs(z) > 1.0 - ZERO_MARGIN:
                raise ValueError(f"zero {z} violates |z| <= 1 - {ZERO_MARGIN}")
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "zeros", zs)

    @classmethod
    def mobius(cls, lam: complex, constant: complex = 1.0) -> "BlaschkeProduct":
        return cls(constant, (lam,))

    @classmethod
    def power(cls, k: int) -> "BlaschkeProduct":
        """z^k."""
        return cls(1.0, (0j,) * k)

    @classmethod
    def from_descriptor(cls, d: dict) -> "BlaschkeProduct":
        """Parse ``{"constant": [re, im], "zeros": [[re, im], ...]}``."""
        c = d.get("constant", [1.0, 0.0])
        zeros = d.get("zeros", [])
        return cls(complex(c[0], c[1]), tuple(complex(a, b) for a, b in zeros))

    def descriptor(self) -> dict:
        return {
            "constant": [self.constant.real, self.constant.imag],
            "zeros": [[z.real, z.imag] for z in self.zeros],
        }

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def decay_rate(self) -> float:
        """max |l_i|; Taylor coefficients decay like decay_rate**n."""
        return max((abs(z) for z in self.zeros), default=0.0)

    def __call__(self, z):
        return evaluate(self, z)


def evaluate(u: BlaschkeProduct, z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 + 1e-9):
        raise ValueError("evaluation restricted to the closed unit disk")
    out = np.full(z.shape, u.constant, dtype=complex)
    for lam in u.zeros:
        den = 1.0 - np.conj(lam) * z
        if np.any(np.abs(den) < POLE_TOL):
            raise PoleProximity(f"point within {POLE_TOL} of the pole 1/conj({lam})")
        out = out * (z - lam) / den
    return out if out.ndim else complex(out)


def value_at_zero(u: BlaschkeProduct) -> complex:
    out = u.constant
    for lam in u.zeros:
        out *= -lam
    return complex(out)


def product(u: BlaschkeProduct, v: BlaschkeProduct) -> BlaschkeProduct:
    return BlaschkeProduct(u.constant * v.constant, u.zeros + v.zeros)


def is_coprime(u: BlaschkeProduct, v: BlaschkeProduct, tol: float = 1e-8) -> bool:
    """True iff no zero of u lies within ``tol`` of a zero of v."""
    if not u.zeros or not v.zeros:
        return True
    a = np.array(u.zeros)[:, None]
    b = np.array(v.zeros)[None, :]
    return bool(np.min(np.abs(a - b)) > tol)


RHO_MAX = 1e12


def cauchy_tail_bound(log_sup: Callable[[float], float], r: float,
                      band_max: int) -> float:
    """Bound sum_{n > band_max} |f^(n)| for f analytic on |z| < 1/r.

    Uses |f^(n)| <= sup_{|z|=rho} |f| * rho**-n, minimised over a grid of
    rho in (1, 1/r). ``log_sup(rho)`` is log sup_{|z|=rho} |f|; working in
    logs keeps tiny zeros (huge rho) from overflowing. Any rho in range gives
    a valid bound, so the search is capped at RHO_MAX.
    """
    if r <= 0.0:
        raise ValueError("r must be positive; polynomials have an exact tail of 0")
    hi = min(1.0 / r, RHO_MAX)
    best = np.inf
    for t in np.linspace(0.0, 1.0, 402)[1:-1]:
        rho = 1.0 + t * (hi - 1.0)
        log_b = (log_sup(rho) - (band_max + 1) * np.log(rho)
                 - np.log1p(-1.0 / rho))
        best = min(best, float(np.exp(log_b)))
    return best


def grid_for(band_max: int, r: float) -> int:
    """Sampling grid large enough that aliasing onto [0, band_max] is below ALIAS_TOL."""
    m = default_grid_size(band_max + 1)
    if r > 0.0:
        need = band_max + 1 + int(np.ceil(np.log(ALIAS_TOL) / np.log(r)))
        while m < need and m < MAX_GRID:
            m *= 2
    return m


def taylor_coeffs(func: Callable[[np.ndarray], np.ndarray], band_max: int,
                  r: float) -> np.ndarray:
    """Taylor coefficients 0..band_max of an analytic function by circle sampling."""
    m = grid_for(band_max, r)
    pts = np.exp(2j * np.pi * np.arange(m) / m)
    c = np.fft.fft(func(pts)) / m
    return c[:band_max + 1]


def _log_sup_blaschke(zeros: Sequence[complex]) -> Callable[[float], float]:
    mods = [abs(z) for z in zeros]

    def log_sup(rho: float) -> float:
        return float(sum(np.log(rho + a) - np.log1p(-a * rho) for a in mods))

    return log_sup


def fourier_coeffs(u: BlaschkeProduct, band_max: int,
                   tol: float | None = None) -> tuple[FourierVector, float]:
    """Coefficients u^(0..band_max) and a certified bound on the discarded tail."""
    if band_max < u.degree:
        raise ValueError(f"band_max {band_max} < degree {u.degree}")
    r = u.decay_rate
    if r == 0.0:
        c = np.zeros(band_max + 1, dtype=complex)
        c[u.degree] = u.constant
        return FourierVector.analytic(c), 0.0
    c = taylor_coeffs(lambda z: evaluate(u, z), band_max, r)
    tail = cauchy_tail_bound(_log_sup_blaschke(u.zeros), r, band_max)
    if tol is not None and tail > tol:
        raise TailTooLarge(f"tail bound {tail:.3g} exceeds {tol:.3g} at band_max={band_max}")
    return FourierVector.analytic(c), tail


@lru_cache(maxsize=512)
def band_for(u: BlaschkeProduct, extra: int, tail_tol: float = 1e-16) -> int:
    """A band_max >= extra whose certified tail is below ``tail_tol``."""
    b = max(extra, u.degree)
    r = u.decay_rate
    if r == 0.0:
        return b
    log_sup = _log_sup_blaschke(u.zeros)
    # Start near where a pure geometric tail would cross tail_tol.
    b = max(b, int(np.log(tail_tol * (1.0 - r)) / np.log(r)))
    while cauchy_tail_bound(log_sup, r, b) > tail_tol:
        b += 8
    return b
