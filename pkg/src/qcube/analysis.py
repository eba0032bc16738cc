"""Run all four characterisations on one graph and compare them."""

from __future__ import annotations

import time
from contextlib import contextmanager

from pydantic import BaseModel

from .errors import QCubeError
from .graph import Graph, bfs_distances, is_bipartite, is_distance_regular
from .partial_cube import (
    CubeVerdict,
    NonConvexHalfSpace,
    Quintuple,
    djokovic_embedding,
    find_quintuple,
    first_non_convex_half_space,
)
from .qmatrix import (
    DEFAULT_GRID_STEP,
    PiReport,
    QecReport,
    estimate_pi,
    qec,
    schoenberg_cross_check,
)
from .spectral import DEFAULT_TOL

DEFAULT_MAX_N = 2000


class GraphSummary(BaseModel):
    n: int
    m: int
    diameter: int
    vertices: list[str]


class Verdicts(BaseModel):
    full_interval: bool  # Q_q PSD on the whole grid over [-1, 1]
    partial_cube: bool  # hypercube embedding found
    no_quintuple: bool  # bipartite and no five-vertex obstruction
    convex_half_spaces: bool  # bipartite and every G(x, y) convex

    def agree(self) -> bool:
        return len({self.full_interval, self.partial_cube, self.no_quintuple, self.convex_half_spaces}) == 1


class AnalysisReport(BaseModel):
    graph: GraphSummary
    bipartite: bool
    odd_cycle: list[str] | None = None
    distance_regular: bool
    pi: PiReport
    qec: QecReport
    cube: CubeVerdict
    quintuple: Quintuple | None = None
    non_convex: NonConvexHalfSpace | None = None
    verdicts: Verdicts
    equivalence_consistent: bool
    schoenberg_consistent: bool
    runtime_ms: dict[str, float] = {}

    @property
    def verdict(self) -> bool:
        """The common answer; only meaningful when ``equivalence_consistent``."""
        return self.verdicts.full_interval


def verify_equivalences(
    g: Graph,
    grid_step: float = DEFAULT_GRID_STEP,
    tol: float = DEFAULT_TOL,
    max_n: int = DEFAULT_MAX_N,
) -> AnalysisReport:
    """Compute every verdict independently and record whether they agree."""
    if g.n < 2:
        raise QCubeError("analysis needs at least two vertices")
    if g.n > max_n:
        raise QCubeError(f"graph has {g.n} vertices, above the limit of {max_n}")
    timings: dict[str, float] = {}

    @contextmanager
    def stage(name: str):
        t0 = time.perf_counter()
        yield
        timings[name] = (time.perf_counter() - t0) * 1000.0

    with stage("distances"):
        d = bfs_distances(g)
    with stage("bipartite"):
        bip = is_bipartite(g)
    with stage("distance_regular"):
        dr = is_distance_regular(g, d)
    with stage("pi"):
        pi = estimate_pi(g, grid_step, tol, dist=d)
    with stage("qec"):
        qr = qec(g, tol, d)
    with stage("embedding"):
        cube = djokovic_embedding(g, d, cross_check=False)
    with stage("quintuple"):
        quint = find_quintuple(g, d) if bip.valid else None
    with stage("convexity"):
        bad_half = first_non_convex_half_space(g, d) if bip.valid else None
    with stage("schoenberg"):
        schoenberg = schoenberg_cross_check(g, grid_step, tol, dist=d, pi=pi, qec_report=qr)

    verdicts = Verdicts(
        full_interval=pi.full_interval,
        partial_cube=cube.is_partial_cube,
        no_quintuple=bip.valid and quint is None,
        convex_half_spaces=bip.valid and bad_half is None,
    )
    return AnalysisReport(
        graph=GraphSummary(n=g.n, m=g.m, diameter=d.diameter, vertices=list(g.vertices)),
        bipartite=bip.valid,
        odd_cycle=bip.odd_cycle,
        distance_regular=dr.welldefined,
        pi=pi,
        qec=qr,
        cube=cube,
        quintuple=quint,
        non_convex=bad_half,
        verdicts=verdicts,
        equivalence_consistent=verdicts.agree(),
        schoenberg_consistent=schoenberg,
        runtime_ms=timings,
    )
