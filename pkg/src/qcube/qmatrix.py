"""Q-matrices ``(q ** d(x, y))``, numerical estimation of the PSD set, and the QEC.

The PSD set of a connected graph with at least two vertices lies inside
[-1, 1] and contains 0 and 1. It is estimated by a uniform scan plus
bisection at every sign change of the smallest eigenvalue, and reported
as a sorted list of disjoint intervals without assuming it is connected.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np
from pydantic import BaseModel

from .errors import NotBipartite, QCubeError
from .graph import DistanceMatrix, Graph, bfs_distances, is_bipartite
from .spectral import (
    _BATCH_ENTRIES,
    DEFAULT_TOL,
    SymMatrix,
    batch_min_eigenvalues,
    eigenvalues,
    is_psd,
    min_eigenvalue,
)

DEFAULT_GRID_STEP = 1 / 512
DEFAULT_DEPTH = 10


class PiReport(BaseModel):
    grid_step: float
    tol: float
    depth: int
    intervals: list[tuple[float, float]]
    full_interval: bool
    samples: list[tuple[float, float]]  # (q, lambda_min) on the grid
    endpoints: list[tuple[float, float]]  # (q, lambda_min) at every refined boundary
    singleton: bool = False  # the set is all of R, not just [-1, 1]

    def excluded(self) -> list[tuple[float, float]]:
        """Gaps of [-1, 1] not covered by ``intervals``."""
        gaps, cur = [], -1.0
        for lo, hi in self.intervals:
            if lo > cur:
                gaps.append((cur, lo))
            cur = hi
        if cur < 1.0:
            gaps.append((cur, 1.0))
        return gaps


class QecReport(BaseModel):
    value: float
    witness: list[float] | None = None  # in graph vertex order


def _powers(d: np.ndarray, q: float) -> np.ndarray:
    # sign handled separately so that Q_{-q} and Lambda Q_q Lambda agree bit for bit
    mag = np.power(abs(q), d.astype(np.float64))
    if q < 0:
        mag = np.where(d % 2 == 1, -mag, mag)
    return mag


def build_q(d: DistanceMatrix, q: float) -> SymMatrix:
    """Q-matrix with ``0 ** 0 == 1``, so ``q == 0`` gives the identity."""
    return SymMatrix(_powers(d.d, float(q)))


def _dist(g: Graph, dist: DistanceMatrix | None) -> DistanceMatrix:
    return dist if dist is not None else bfs_distances(g)


def pi_contains(
    g: Graph, q: float, tol: float = DEFAULT_TOL, dist: DistanceMatrix | None = None
) -> bool:
    if abs(q) > 1:
        raise ValueError("q must lie in [-1, 1]")
    return is_psd(build_q(_dist(g, dist), q), tol)


def lambda_min_many(
    d: DistanceMatrix, qs: Iterable[float], tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Smallest eigenvalue of Q_q and the PSD threshold, for every q in ``qs``."""
    qs = np.asarray(list(qs), dtype=np.float64)
    n = d.n
    dd = d.d.astype(np.float64)
    odd = (d.d % 2 == 1)
    lam = np.empty(len(qs))
    thr = np.empty(len(qs))
    chunk = max(1, _BATCH_ENTRIES // (n * n))
    for lo in range(0, len(qs), chunk):
        block = qs[lo : lo + chunk]
        mag = np.power(np.abs(block)[:, None, None], dd[None])
        sign = np.where((block[:, None, None] < 0) & odd[None], -1.0, 1.0)
        stack = sign * mag
        lam[lo : lo + chunk] = batch_min_eigenvalues(stack, tol)
        thr[lo : lo + chunk] = tol * np.maximum(1.0, mag.sum(axis=2).max(axis=1))
    return lam, thr


def psd_thresholds(d: DistanceMatrix, qs: Iterable[float], tol: float = DEFAULT_TOL) -> np.ndarray:
    """``tol * max(1, ||Q_q||_inf)`` for each q, without forming the matrices."""
    qs = np.asarray(list(qs), dtype=np.float64)
    k = d.diameter + 1
    # layer sizes: counts[x, i] = #{y : d(x, y) = i}
    counts = np.stack([np.bincount(row, minlength=k) for row in d.d])
    norms = (counts[None, :, :] * np.power(np.abs(qs)[:, None, None], np.arange(k))).sum(axis=2)
    return tol * np.maximum(1.0, norms.max(axis=1))


def grid(grid_step: float) -> np.ndarray:
    steps = math.ceil(2.0 / grid_step - 1e-9)
    return -1.0 + 2.0 * np.arange(steps + 1) / steps


def estimate_pi(
    g: Graph,
    grid_step: float = DEFAULT_GRID_STEP,
    tol: float = DEFAULT_TOL,
    depth: int = DEFAULT_DEPTH,
    dist: DistanceMatrix | None = None,
) -> PiReport:
    if not 0 < grid_step <= 0.1:
        raise ValueError("grid_step must lie in (0, 0.1]")
    qs = grid(grid_step)
    if g.is_singleton:
        return PiReport(
            grid_step=grid_step,
            tol=tol,
            depth=depth,
            intervals=[(-1.0, 1.0)],
            full_interval=True,
            samples=[(float(q), 1.0) for q in qs],
            endpoints=[],
            singleton=True,
        )
    d = _dist(g, dist)
    lam, thr = lambda_min_many(d, qs, tol)
    ok = lam >= -thr

    def passes(q: float) -> tuple[bool, float]:
        lq, tq = lambda_min_many(d, [q], tol)
        return bool(lq[0] >= -tq[0]), float(lq[0])

    def refine(good: float, bad: float) -> tuple[float, float]:
        lam_good = None
        for _ in range(depth):
            mid = 0.5 * (good + bad)
            inside, lm = passes(mid)
            if inside:
                good, lam_good = mid, lm
            else:
                bad = mid
        if lam_good is None:
            lam_good = passes(good)[1]
        return good, lam_good

    intervals: list[tuple[float, float]] = []
    endpoints: list[tuple[float, float]] = []
    k, last = 0, len(qs) - 1
    while k <= last:
        if not ok[k]:
            k += 1
            continue
        start = k
        while k < last and ok[k + 1]:
            k += 1
        lo = float(qs[start])
        if start > 0:
            lo, lam_lo = refine(lo, float(qs[start - 1]))
            endpoints.append((lo, lam_lo))
        hi = float(qs[k])
        if k < last:
            hi, lam_hi = refine(hi, float(qs[k + 1]))
            endpoints.append((hi, lam_hi))
        intervals.append((lo, hi))
        k += 1

    return PiReport(
        grid_step=grid_step,
        tol=tol,
        depth=depth,
        intervals=intervals,
        full_interval=bool(ok.all()),
        samples=[(float(q), float(v)) for q, v in zip(qs, lam)],
        endpoints=endpoints,
    )


def write_samples_csv(report: PiReport, fh) -> None:
    fh.write("q,lambda_min\n")
    for q, lam in report.samples:
        fh.write(f"{q:.17g},{lam:.17g}\n")


def _signs(g: Graph, d: DistanceMatrix) -> np.ndarray:
    if not is_bipartite(g).valid:
        raise NotBipartite("graph is not bipartite")
    return np.where(d.d[0] % 2 == 1, -1.0, 1.0)


def lambda_conjugate(g: Graph, d: DistanceMatrix, q: float) -> SymMatrix:
    """``L Q_q L`` with ``L = diag((-1) ** d(x0, x))``; equals Q_{-q} exactly on bipartite graphs."""
    lam = _signs(g, d)
    return SymMatrix(lam[:, None] * build_q(d, q).a * lam[None, :])


def spectrum_symmetry_check(
    g: Graph, qs: Iterable[float], tol: float = DEFAULT_TOL, dist: DistanceMatrix | None = None
) -> bool:
    d = _dist(g, dist)
    _signs(g, d)
    for q in qs:
        a = min_eigenvalue(build_q(d, q), tol)
        b = min_eigenvalue(build_q(d, -q), tol)
        if abs(a - b) > tol * d.n:
            return False
    return True


def qec(g: Graph, tol: float = DEFAULT_TOL, dist: DistanceMatrix | None = None) -> QecReport:
    """Quadratic embedding constant: max of f.D.f over unit f orthogonal to the ones vector.

    The ones direction is pushed to the bottom of the spectrum by subtracting
    ``c * J / n`` with ``c = 1 + n * max(D)``, so the top eigenpair of the
    shifted projected matrix is the constrained maximiser.
    """
    if g.n < 2:
        raise QCubeError("QEC needs at least two vertices")
    d = _dist(g, dist)
    n = d.n
    dm = d.d.astype(np.float64)
    p = np.eye(n) - 1.0 / n
    c = 1.0 + n * dm.max()
    spec = eigenvalues(SymMatrix(p @ dm @ p - c / n), tol, vectors=True)
    f = p @ spec.vectors[:, -1]
    f /= np.linalg.norm(f)
    return QecReport(value=spec.max, witness=[float(x) for x in f])


def schoenberg_cross_check(
    g: Graph,
    grid_step: float = DEFAULT_GRID_STEP,
    tol: float = DEFAULT_TOL,
    dist: DistanceMatrix | None = None,
    pi: PiReport | None = None,
    qec_report: QecReport | None = None,
) -> bool:
    """Agreement of "QEC <= 0" with "Q_q is PSD at every grid point of [0, 1]"."""
    if g.n < 2:
        return True
    d = _dist(g, dist)
    qr = qec_report if qec_report is not None else qec(g, tol, d)
    if pi is not None:
        samples = [(q, lam) for q, lam in pi.samples if q >= 0]
        lam = np.array([s[1] for s in samples])
        thr = psd_thresholds(d, [s[0] for s in samples], tol)
    else:
        qs = grid(grid_step)
        lam, thr = lambda_min_many(d, qs[qs >= 0], tol)
    embeds = qr.value <= tol
    nonneg = bool((lam >= -thr).all())
    return embeds == nonneg
