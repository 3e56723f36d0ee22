"""Truncated L^2 of the circle, stored as Fourier coefficients.

A :class:`FourierVector` holds the coefficients f^(j) for j in a contiguous
band [n_min, n_max] with n_min <= 0 <= n_max; anything outside the band reads
as zero.  Operations that can grow the band (products, shifts) return the
exact band by default.  If the caller passes ``band=(lo, hi)`` the result must
fit there, otherwise :class:`BandOverflow` is raised unless ``truncate=True``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import BandOverflow, GridTooSmall

Band = tuple[int, int]


@dataclass(frozen=True, eq=False)
class FourierVector:
    n_min: int
    n_max: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.n_min > 0 or self.n_max < 0:
            raise ValueError(f"band [{self.n_min}, {self.n_max}] must contain 0")
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size != self.n_max - self.n_min + 1:
            raise ValueError(
                f"expected {self.n_max - self.n_min + 1} coefficients, got {c.size}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, n_min: int, n_max: int) -> "FourierVector":
        return cls(n_min, n_max, np.zeros(n_max - n_min + 1, dtype=complex))

    @classmethod
    def monomial(cls, j: int, c: complex = 1.0) -> "FourierVector":
        """c * z^j (j < 0 gives powers of z-bar)."""
        lo, hi = min(j, 0), max(j, 0)
        out = np.zeros(hi - lo + 1, dtype=complex)
        out[j - lo] = c
        return cls(lo, hi, out)

    @classmethod
    def from_dict(cls, terms: Mapping[int, complex]) -> "FourierVector":
        if not terms:
            return cls.zeros(0, 0)
        lo, hi = min(min(terms), 0), max(max(terms), 0)
        out = np.zeros(hi - lo + 1, dtype=complex)
        for j, c in terms.items():
            out[j - lo] += c
        return cls(lo, hi, out)

    @classmethod
    def analytic(cls, coeffs) -> "FourierVector":
        """Vector with f^(j) = coeffs[j] for j = 0..len-1."""
        c = np.asarray(coeffs, dtype=complex)
        return cls(0, c.size - 1, c)

    # -- access -----------------------------------------------------------
    @property
    def band(self) -> Band:
        return (self.n_min, self.n_max)

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    def coeff(self, j: int) -> complex:
        if self.n_min <= j <= self.n_max:
            return complex(self.coeffs[j - self.n_min])
        return 0j

    def window(self, n_min: int, n_max: int) -> np.ndarray:
        """Coefficients over [n_min, n_max] as a plain array (zero padded, clipped)."""
        out = np.zeros(n_max - n_min + 1, dtype=complex)
        lo, hi = max(n_min, self.n_min), min(n_max, self.n_max)
        if lo <= hi:
            out[lo - n_min:hi - n_min + 1] = self.coeffs[lo - self.n_min:hi - self.n_min + 1]
        return out

    def resized(self, n_min: int, n_max: int) -> "FourierVector":
        """Same function viewed in another band; coefficients outside are dropped."""
        return FourierVector(n_min, n_max, self.window(n_min, n_max))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    # -- linear structure -------------------------------------------------
    def _combine(self, other: "FourierVector", sign: float) -> "FourierVector":
        lo, hi = min(self.n_min, other.n_min), max(self.n_max, other.n_max)
        return FourierVector(lo, hi, self.window(lo, hi) + sign * other.window(lo, hi))

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __neg__(self):
        return FourierVector(self.n_min, self.n_max, -self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, FourierVector):
            return multiply(self, scalar)
        return FourierVector(self.n_min, self.n_max, complex(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __repr__(self):
        return f"FourierVector(band=[{self.n_min}, {self.n_max}], norm={self.norm():.3g})"


def _fit(lo: int, hi: int, coeffs: np.ndarray, band: Band | None,
         truncate: bool) -> FourierVector:
    """Place exact coefficients on [lo, hi] into the requested (or natural) band."""
    if band is None:
        band = (min(lo, 0), max(hi, 0))
    elif not truncate:
        nz = np.flatnonzero(coeffs) + lo
        if nz.size and (nz[0] < band[0] or nz[-1] > band[1]):
            raise BandOverflow(
                f"result occupies [{nz[0]}, {nz[-1]}], requested band {list(band)}")
    blo, bhi = band
    out = np.zeros(bhi - blo + 1, dtype=complex)
    a, b = max(lo, blo), min(hi, bhi)
    if a <= b:
        out[a - blo:b - blo + 1] = coeffs[a - lo:b - lo + 1]
    return FourierVector(blo, bhi, out)


def inner_product(f: FourierVector, g: FourierVector) -> complex:
    """<f, g> = sum_j f^(j) conj(g^(j)); linear in f."""
    lo, hi = max(f.n_min, g.n_min), min(f.n_max, g.n_max)
    if lo > hi:
        return 0j
    a = f.coeffs[lo - f.n_min:hi - f.n_min + 1]
    b = g.coeffs[lo - g.n_min:hi - g.n_min + 1]
    return complex(np.vdot(b, a))


def multiply(f: FourierVector, g: FourierVector, band: Band | None = None,
             truncate: bool = False) -> FourierVector:
    """Pointwise product on the circle, i.e. convolution of coefficients."""
    c = np.convolve(f.coeffs, g.coeffs)
    return _fit(f.n_min + g.n_min, f.n_max + g.n_max, c, band, truncate)


def project_plus(f: FourierVector) -> FourierVector:
    """Orthogonal projection onto H^2 (frequencies >= 0)."""
    c = f.coeffs.copy()
    c[: -f.n_min] = 0
    return FourierVector(f.n_min, f.n_max, c)


def project_minus(f: FourierVector) -> FourierVector:
    """Orthogonal projection onto conj(H^2_0) (frequencies <= -1)."""
    c = f.coeffs.copy()
    c[-f.n_min:] = 0
    return FourierVector(f.n_min, f.n_max, c)


def shift(f: FourierVector, band: Band | None = None, truncate: bool = False) -> FourierVector:
    """Multiplication by z: coefficient at j moves to j + 1."""
    return _fit(f.n_min + 1, f.n_max + 1, f.coeffs.copy(), band, truncate)


def backshift_analytic(f: FourierVector) -> FourierVector:
    """Backward shift (f - f(0)) / z on the analytic part of f."""
    c = f.window(1, max(f.n_max, 1))
    return FourierVector(0, c.size - 1, c)


def conjugate(f: FourierVector) -> FourierVector:
    """Pointwise complex conjugate on the circle: frequency j <- conj(f^(-j))."""
    return FourierVector(-f.n_max, -f.n_min, np.conj(f.coeffs[::-1]))


def phi_of(f: FourierVector) -> FourierVector:
    """z-bar * conj(P^- f), an element of H^2: coefficient k is conj(f^(-k-1))."""
    depth = max(-f.n_min, 1)
    return FourierVector.analytic([np.conj(f.coeff(-k - 1)) for k in range(depth)])


def phi_at_zero(f: FourierVector) -> complex:
    """Value at 0 of phi_of(f); equals conj(f^(-1))."""
    return complex(np.conj(f.coeff(-1)))


def default_grid_size(width: int) -> int:
    """Next power of two >= 4 * width."""
    return 1 << max(int(np.ceil(np.log2(max(4 * width, 1)))), 0)


def evaluate_on_circle(f: FourierVector, m: int | None = None) -> np.ndarray:
    """Samples f(w^k), k = 0..m-1, at the m-th roots of unity w = exp(2 pi i / m)."""
    width = f.n_max - f.n_min + 1
    if m is None:
        m = default_grid_size(width)
    if m < width:
        raise GridTooSmall(f"{m} points cannot resolve a band of width {width}")
    buf = np.zeros(m, dtype=complex)
    buf[np.mod(f.frequencies, m)] = f.coeffs
    return np.fft.ifft(buf) * m


def samples_to_coeffs(samples, band: Band) -> FourierVector:
    """Inverse of :func:`evaluate_on_circle` for functions supported in ``band``.

    Coefficients outside the band alias onto it, so the caller is responsible
    for the tail being negligible.
    """
    s = np.asarray(samples, dtype=complex)
    lo, hi = band
    if s.size < hi - lo + 1:
        raise GridTooSmall(f"{s.size} samples cannot resolve band [{lo}, {hi}]")
    c = np.fft.fft(s) / s.size
    return FourierVector(lo, hi, c[np.mod(np.arange(lo, hi + 1), s.size)])


def evaluate(f: FourierVector, z) -> np.ndarray:
    """Laurent sum sum_j f^(j) z^j at arbitrary nonzero points (or any point if f is analytic)."""
    z = np.asarray(z, dtype=complex)
    # Horner on the analytic and anti-analytic halves separately.
    out = np.zeros_like(z)
    for c in f.window(0, f.n_max)[::-1]:
        out = out * z + c
    if f.n_min < 0:
        neg = np.zeros_like(z)
        w = 1.0 / z
        for c in f.window(f.n_min, -1):
            neg = (neg + c) * w
        out = out + neg
    return out
