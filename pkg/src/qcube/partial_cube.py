"""Half-spaces, convexity, the five-vertex obstruction, and hypercube embeddings.

For adjacent ``x, y`` the half-space ``G(x, y)`` is the set of vertices
strictly closer to ``x`` than to ``y``. A connected graph embeds
isometrically in a hypercube exactly when it is bipartite and every
half-space is convex; the embedding coordinates are the classes of the
Djokovic-Winkler relation on edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from pydantic import BaseModel, Field

from .errors import InternalInconsistency, InvalidQuintuple, NotAdjacent
from .graph import DistanceMatrix, Graph, is_bipartite

# cap on booleans materialised at once by the convexity test
_CONVEX_BUDGET = 4_000_000


@dataclass(frozen=True)
class HalfSpace:
    x: str
    y: str
    members: frozenset[str]


class Quintuple(BaseModel):
    vertices: tuple[str, str, str, str, str]
    i: int
    j: int
    h: int
    xi: tuple[int, int, int, int, int]
    distances: list[list[int]]  # 5x5 submatrix of d on the quintuple
    value: int  # xi . D . xi


class EmbeddingMap(BaseModel):
    classes: int
    base: str
    assign: dict[str, list[int]]


class OddCycle(BaseModel):
    kind: Literal["odd_cycle"] = "odd_cycle"
    cycle: list[str]


class NonConvexHalfSpace(BaseModel):
    kind: Literal["non_convex_half_space"] = "non_convex_half_space"
    x: str
    y: str
    z: str  # outside G(x, y) ...
    u: str  # ... yet on a geodesic between these two members
    v: str


class QuintupleCounterexample(BaseModel):
    kind: Literal["quintuple"] = "quintuple"
    quintuple: Quintuple


Counterexample = Union[OddCycle, NonConvexHalfSpace, QuintupleCounterexample]


class CubeVerdict(BaseModel):
    is_partial_cube: bool
    embedding: EmbeddingMap | None = None
    counterexample: Counterexample | None = Field(default=None, discriminator="kind")


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1


def _half_mask(d: np.ndarray, a: int, b: int) -> np.ndarray:
    return d[:, a] == d[:, b] - 1


def half_space(g: Graph, d: DistanceMatrix, x: str, y: str) -> HalfSpace:
    a, b = g.idx(x), g.idx(y)
    if not g.adjacent(a, b):
        raise NotAdjacent(f"{x!r} and {y!r} are not adjacent")
    mask = _half_mask(d.d, a, b)
    return HalfSpace(x, y, frozenset(g.vertices[k] for k in np.flatnonzero(mask)))


def _convex_violation(d: np.ndarray, mask: np.ndarray) -> tuple[int, int, int] | None:
    """Lexicographically first (z, u, v) with u, v in the set, z outside, z on a u-v geodesic."""
    inside = np.flatnonzero(mask)
    outside = np.flatnonzero(~mask)
    if inside.size < 2 or outside.size == 0:
        return None
    duv = d[np.ix_(inside, inside)]
    k = inside.size
    step = max(1, _CONVEX_BUDGET // (k * k))
    for lo in range(0, outside.size, step):
        zs = outside[lo : lo + step]
        dz = d[np.ix_(zs, inside)]  # (z, member)
        hit = (dz[:, :, None] + dz[:, None, :]) == duv[None]
        flat = hit.reshape(len(zs), -1).any(axis=1)
        if flat.any():
            zi = int(np.argmax(flat))
            u, v = np.argwhere(hit[zi])[0]
            return int(zs[zi]), int(inside[u]), int(inside[v])
    return None


def is_convex(
    g: Graph, d: DistanceMatrix, u_set
) -> tuple[str, str, str] | None:
    """``None`` if ``u_set`` is geodesically convex, else the first violation ``(z, u, v)``."""
    members = list(u_set)
    if not members:
        raise ValueError("u_set must be nonempty")
    mask = np.zeros(g.n, dtype=bool)
    mask[[g.idx(v) for v in members]] = True
    hit = _convex_violation(d.d, mask)
    if hit is None:
        return None
    return tuple(g.vertices[k] for k in hit)  # type: ignore[return-value]


def ordered_edges(g: Graph) -> list[tuple[int, int]]:
    return [(a, b) for a in range(g.n) for b in g.adjacency[a]]


def first_non_convex_half_space(g: Graph, d: DistanceMatrix) -> NonConvexHalfSpace | None:
    for a, b in ordered_edges(g):
        hit = _convex_violation(d.d, _half_mask(d.d, a, b))
        if hit is not None:
            z, u, v = (g.vertices[k] for k in hit)
            return NonConvexHalfSpace(x=g.vertices[a], y=g.vertices[b], z=z, u=u, v=v)
    return None


def xi_vector(j: int, h: int) -> tuple[int, int, int, int, int]:
    big, small = -(j + h + 2), j + h
    return (big, small, small, big, 4)


def quadratic_form(dist5, xi) -> int:
    """``sum_{a,b} xi_a xi_b dist5[a][b]`` in exact integer arithmetic."""
    return sum(xi[a] * xi[b] * int(dist5[a][b]) for a in range(5) for b in range(5))


def _check_structure(d: np.ndarray, idx: tuple[int, ...]) -> str | None:
    x1, x2, x3, x4, x5 = idx
    if d[x1, x2] != 1:
        return "x1 and x2 are not adjacent"
    if d[x3, x4] != 1:
        return "x3 and x4 are not adjacent"
    if d[x3, x1] != d[x3, x2] - 1:
        return "x3 is not in G(x1, x2)"
    if d[x4, x2] != d[x4, x1] - 1:
        return "x4 is not in G(x2, x1)"
    if d[x5, x1] != d[x5, x2] - 1:
        return "x5 is not in G(x1, x2)"
    if d[x5, x4] != d[x5, x3] - 1:
        return "x5 is not in G(x4, x3)"
    return None


def _check_derived(d: np.ndarray, idx: tuple[int, ...]) -> str | None:
    x1, x2, x3, x4, x5 = idx
    i, j, h = d[x1, x3], d[x1, x5], d[x4, x5]
    expected = {
        (x2, x3): i + 1,
        (x2, x5): j + 1,
        (x3, x5): h + 1,
        (x1, x4): i + 1,
        (x2, x4): i,
    }
    for (a, b), want in expected.items():
        if d[a, b] != want:
            return f"distance between positions {idx.index(a) + 1} and {idx.index(b) + 1} is {d[a, b]}, expected {want}"
    return None


def _make_quintuple(g: Graph, d: np.ndarray, idx: tuple[int, ...]) -> Quintuple:
    x1, x2, x3, x4, x5 = idx
    i, j, h = int(d[x1, x3]), int(d[x1, x5]), int(d[x4, x5])
    sub = d[np.ix_(idx, idx)].astype(int).tolist()
    xi = xi_vector(j, h)
    return Quintuple(
        vertices=tuple(g.vertices[k] for k in idx),
        i=i,
        j=j,
        h=h,
        xi=xi,
        distances=sub,
        value=quadratic_form(sub, xi),
    )


def find_quintuple(g: Graph, d: DistanceMatrix) -> Quintuple | None:
    """First quintuple in lexicographic vertex-index order, or ``None``."""
    dd = d.d
    edges = ordered_edges(g)
    if not edges:
        return None
    pos = {e: k for k, e in enumerate(edges)}
    tail = np.array([a for a, _ in edges])
    head = np.array([b for _, b in edges])
    rev = np.array([pos[(b, a)] for a, b in edges])
    halves = dd[:, tail] == dd[:, head] - 1  # (vertex, edge)
    halves = halves.T.copy()  # (edge, vertex)
    bipartite = is_bipartite(g).valid
    for e, (x1, x2) in enumerate(edges):
        h12, h21 = halves[e], halves[rev[e]]
        cand = np.flatnonzero(h12[tail] & h21[head])
        if cand.size == 0:
            continue
        # x5 must lie in G(x1, x2) and in G(x4, x3), the reverse of edge (x3, x4)
        inter = halves[rev[cand]] & h12[None, :]
        rows = inter.any(axis=1)
        if not rows.any():
            continue
        r = int(np.argmax(rows))
        x3, x4 = edges[cand[r]]
        x5 = int(np.argmax(inter[r]))
        idx = (x1, x2, x3, x4, x5)
        problem = _check_structure(dd, idx) or (bipartite and _check_derived(dd, idx))
        if problem:
            raise InternalInconsistency(f"quintuple search produced an invalid quintuple: {problem}")
        return _make_quintuple(g, dd, idx)
    return None


def quintuple_witness_value(d: DistanceMatrix, quint: Quintuple) -> int:
    """Recompute ``xi . D . xi`` from ``d``; equals ``8 (i + 1)`` for a valid quintuple."""
    index = {v: k for k, v in enumerate(d.labels)}
    try:
        idx = tuple(index[v] for v in quint.vertices)
    except KeyError as exc:
        raise InvalidQuintuple(f"unknown vertex {exc.args[0]!r}") from None
    problem = _check_structure(d.d, idx) or _check_derived(d.d, idx)
    if problem:
        raise InvalidQuintuple(problem)
    x1, x2, x3, x4, x5 = idx
    xi = xi_vector(int(d.d[x1, x5]), int(d.d[x4, x5]))
    if tuple(quint.xi) != xi:
        raise InvalidQuintuple(f"xi is {tuple(quint.xi)}, expected {xi}")
    return quadratic_form(d.d[np.ix_(idx, idx)], xi)


def theta_classes(g: Graph, d: DistanceMatrix) -> list[list[int]]:
    """Transitive closure of the Djokovic-Winkler relation, as lists of edge indices.

    Edges are indexed as in ``g.edges()``; classes are ordered by their
    smallest edge index.
    """
    edges = g.edges()
    x = np.array([a for a, _ in edges])
    y = np.array([b for _, b in edges])
    dd = d.d
    related = (dd[np.ix_(x, x)] + dd[np.ix_(y, y)]) != (dd[np.ix_(x, y)] + dd[np.ix_(y, x)])
    uf = UnionFind(len(edges))
    for e, f in zip(*np.nonzero(np.triu(related, 1))):
        uf.union(int(e), int(f))
    groups: dict[int, list[int]] = {}
    for e in range(len(edges)):
        groups.setdefault(uf.find(e), []).append(e)
    return sorted(groups.values(), key=lambda c: c[0])


def verify_embedding(d: DistanceMatrix, emb: EmbeddingMap) -> bool:
    """True iff symmetric-difference sizes reproduce every graph distance."""
    if set(emb.assign) != set(d.labels):
        return False
    if emb.assign.get(emb.base):
        return False
    bits = np.zeros((d.n, max(emb.classes, 1)), dtype=np.int64)
    for k, label in enumerate(d.labels):
        for c in emb.assign[label]:
            if not 0 <= c < emb.classes:
                return False
            bits[k, c] = 1
    hamming = bits @ (1 - bits).T
    hamming = hamming + hamming.T
    return bool(np.array_equal(hamming, d.d))


def djokovic_embedding(g: Graph, d: DistanceMatrix, cross_check: bool = True) -> CubeVerdict:
    """Recognise a partial cube and build its hypercube embedding, or explain why not.

    With ``cross_check`` the verdict is compared against :func:`find_quintuple`
    and any disagreement raises :class:`InternalInconsistency`.
    """
    bip = is_bipartite(g)
    if not bip.valid:
        return CubeVerdict(is_partial_cube=False, counterexample=OddCycle(cycle=bip.odd_cycle))

    dd = d.d
    edges = g.edges()
    classes = theta_classes(g, d)
    sides: list[np.ndarray] = []
    failure: NonConvexHalfSpace | None = None
    cut_mismatch = False
    for cls in classes:
        a, b = edges[cls[0]]
        side = _half_mask(dd, a, b)
        crossing = {k for k, (u, v) in enumerate(edges) if side[u] != side[v]}
        if crossing != set(cls):
            cut_mismatch = True
        for x, y, mask in ((a, b, side), (b, a, ~side)):
            hit = _convex_violation(dd, mask)
            if hit is not None and failure is None:
                z, u, v = (g.vertices[k] for k in hit)
                failure = NonConvexHalfSpace(x=g.vertices[x], y=g.vertices[y], z=z, u=u, v=v)
        sides.append(side)

    embedding = None
    if failure is None and not cut_mismatch:
        base_side = [s[0] for s in sides]
        assign = {
            g.vertices[v]: [c for c, s in enumerate(sides) if s[v] != base_side[c]]
            for v in range(g.n)
        }
        embedding = EmbeddingMap(classes=len(classes), base=g.vertices[0], assign=assign)
        if not verify_embedding(d, embedding):
            embedding = None

    if embedding is not None:
        if cross_check and (quint := find_quintuple(g, d)) is not None:
            raise InternalInconsistency(
                f"embedding found but quintuple {quint.vertices} exists"
            )
        return CubeVerdict(is_partial_cube=True, embedding=embedding)

    if failure is not None:
        if cross_check and find_quintuple(g, d) is None:
            raise InternalInconsistency(
                f"half-space G({failure.x}, {failure.y}) is not convex but no quintuple exists"
            )
        return CubeVerdict(is_partial_cube=False, counterexample=failure)
    quint = find_quintuple(g, d)
    if quint is None:
        raise InternalInconsistency("no embedding, no non-convex half-space and no quintuple")
    return CubeVerdict(
        is_partial_cube=False, counterexample=QuintupleCounterexample(quintuple=quint)
    )
