"""Dense symmetric eigenvalues and tolerance-based PSD tests.

Two solvers sit behind :func:`eigenvalues`: a cyclic Jacobi method written
here, and LAPACK's ``syevd`` through numpy. Both report the residual
``max |A v - lambda v|`` so the same contract is checked either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NoConvergence

DEFAULT_TOL = 1e-9
_TINY = float(np.finfo(np.float64).smallest_subnormal)
Method = Literal["lapack", "jacobi"]

# keep batched eigendecompositions under roughly this many float64 entries
_BATCH_ENTRIES = 8_000_000


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Real symmetric matrix. Only the upper triangle of the input is used."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        upper = np.triu(a)
        sym = upper + np.triu(a, 1).T
        sym.setflags(write=False)
        object.__setattr__(self, "a", sym)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def norm_inf(self) -> float:
        return float(np.abs(self.a).sum(axis=1).max()) if self.n else 0.0

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and np.array_equal(self.a, other.a)


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray  # ascending
    residual: float
    vectors: np.ndarray | None = None  # columns match eigenvalues

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[-1])


def _residual(a: np.ndarray, w: np.ndarray, v: np.ndarray) -> float:
    return float(np.abs(a @ v - v * w).max()) if a.size else 0.0


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi with row-major sweep order. Returns (w, V, sweeps) unsorted."""
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v, 0
    amax = np.abs(a).max()
    if amax == 0:
        return np.zeros(n), v, 0
    # power-of-two rescale so the Frobenius norms below cannot under- or overflow
    shift = -np.frexp(amax)[1]
    a = np.ldexp(a, shift)
    w, v, sweeps = _jacobi_sweeps(a, v, max_sweeps)
    return np.ldexp(w, -shift), v, sweeps


def _jacobi_sweeps(a: np.ndarray, v: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray, int]:
    n = a.shape[0]
    scale = np.linalg.norm(a)
    eps = np.finfo(float).eps
    for sweep in range(1, max_sweeps + 1):
        if np.linalg.norm(a - np.diag(np.diag(a))) <= eps * scale:
            return np.diag(a).copy(), v, sweep - 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= eps * eps * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v, max_sweeps


def eigenvalues(
    m: SymMatrix, tol: float = DEFAULT_TOL, method: Method = "lapack", vectors: bool = False
) -> Spectrum:
    """All eigenvalues of ``m`` in ascending order, residual-checked against ``tol * ||m||_inf``."""
    if m.n < 1:
        raise ValueError("empty matrix")
    if tol <= 0:
        raise ValueError("tol must be positive")
    sweeps = 0
    if method == "jacobi":
        w, v, sweeps = jacobi_eigh(m.a)
        order = np.argsort(w, kind="stable")
        w, v = w[order], v[:, order]
    elif method == "lapack":
        w, v = np.linalg.eigh(m.a)
    else:
        raise ValueError(f"unknown method {method!r}")
    res = _residual(m.a, w, v)
    # tol * ||m|| underflows for subnormal input; allow a few ulps of the subnormal grid
    if res > max(tol * m.norm_inf(), 4 * m.n * _TINY):
        raise NoConvergence(sweeps, res)
    return Spectrum(w, res, v if vectors else None)


def min_eigenvalue(m: SymMatrix, tol: float = DEFAULT_TOL, method: Method = "lapack") -> float:
    return eigenvalues(m, tol, method).min


def psd_threshold(m: SymMatrix, tol: float = DEFAULT_TOL) -> float:
    """Eigenvalues at or above ``-psd_threshold`` count as nonnegative."""
    return tol * max(1.0, m.norm_inf())


def is_psd(m: SymMatrix, tol: float = DEFAULT_TOL, method: Method = "lapack") -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return min_eigenvalue(m, tol, method) >= -psd_threshold(m, tol)


def batch_min_eigenvalues(stack: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Smallest eigenvalue of each symmetric matrix in a ``(k, n, n)`` stack.

    Residuals are checked per matrix exactly as in :func:`eigenvalues`.
    """
    k, n, _ = stack.shape
    out = np.empty(k)
    chunk = max(1, _BATCH_ENTRIES // max(1, n * n))
    for lo in range(0, k, chunk):
        block = stack[lo : lo + chunk]
        w, v = np.linalg.eigh(block)
        res = np.abs(block @ v - v * w[:, None, :]).max(axis=(1, 2))
        norms = np.abs(block).sum(axis=2).max(axis=1)
        bad = np.flatnonzero(res > tol * norms)
        if bad.size:
            raise NoConvergence(0, float(res[bad[0]]))
        out[lo : lo + chunk] = w[:, 0]
    return out
