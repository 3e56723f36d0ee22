"""Orthonormalization and subspace comparisons on coordinate matrices."""
from __future__ import annotations

import numpy as np

RANK_TOL = 1e-10


def orthonormalize(a: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Columns are normalized before orthogonalization; a column whose remainder
    falls below ``rank_tol`` is considered dependent and dropped.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    q = np.zeros_like(a)
    k = 0
    for j in range(a.shape[1]):
        w = a[:, j].copy()
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            continue
        w /= nrm
        for _ in range(2):
            for i in range(k):
                w -= np.vdot(q[:, i], w) * q[:, i]
        nrm = np.linalg.norm(w)
        if nrm < rank_tol:
            continue
        q[:, k] = w / nrm
        k += 1
    return q[:, :k]


def complement(q: np.ndarray, within: np.ndarray | None = None,
               rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of span(within) minus span(q); ``within`` defaults to everything."""
    n = q.shape[0]
    w = np.eye(n, dtype=complex) if within is None else within
    if q.shape[1] == 0:
        return w.copy()
    c = w.conj().T @ q
    u, s, _ = np.linalg.svd(c, full_matrices=True)
    rank = int(np.sum(s > rank_tol))
    return w @ u[:, rank:]


def residual_norms(a: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Column norms of (I - q q^*) a."""
    if a.ndim == 1:
        a = a[:, None]
    r = a - q @ (q.conj().T @ a) if q.shape[1] else a
    return np.linalg.norm(r, axis=0)


def distance(x: np.ndarray, q: np.ndarray) -> float:
    return float(residual_norms(x, q)[0])


def containment_residual(a: np.ndarray, q: np.ndarray) -> float:
    """Largest distance from a column of orthonormal ``a`` to span(q); 0 iff span(a) in span(q)."""
    if a.shape[1] == 0:
        return 0.0
    return float(np.max(residual_norms(a, q)))


def mutual_residual(q1: np.ndarray, q2: np.ndarray) -> float:
    """Two-sided containment residual; small iff span(q1) == span(q2)."""
    return max(containment_residual(q1, q2), containment_residual(q2, q1))


def projector(q: np.ndarray) -> np.ndarray:
    return q @ q.conj().T


def rank(a: np.ndarray, tol: float = RANK_TOL) -> int:
    if a.size == 0:
        return 0
    return int(np.sum(np.linalg.svd(a, compute_uv=False) > tol))
