"""Simple undirected graphs, the edge-list format, and BFS distance machinery."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import Disconnected, EmptyGraph, MalformedLine, SelfLoop, UnknownVertex


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with string labels and a dense index mapping.

    Vertex order is the order in which labels were first seen; every derived
    matrix is indexed in that order.
    """

    vertices: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    index: dict[str, int] = field(repr=False, compare=False)

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[str, str]], vertices: Sequence[str] = ()
    ) -> "Graph":
        """Build a graph; ``vertices`` fixes the leading part of the vertex order."""
        index: dict[str, int] = {}
        labels: list[str] = []

        def _add(v: str) -> int:
            if v not in index:
                index[v] = len(labels)
                labels.append(v)
            return index[v]

        for v in vertices:
            _add(str(v))
        pairs = []
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise SelfLoop(f"self-loop on {u!r}")
            pairs.append((_add(u), _add(v)))
        nbrs = [set() for _ in labels]
        for a, b in pairs:
            nbrs[a].add(b)
            nbrs[b].add(a)
        if not labels:
            raise EmptyGraph("graph has no vertices")
        return cls(tuple(labels), tuple(tuple(sorted(s)) for s in nbrs), index)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def is_singleton(self) -> bool:
        return self.n == 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges as index pairs ``(a, b)`` with ``a < b``, sorted."""
        return [(a, b) for a, nb in enumerate(self.adjacency) for b in nb if a < b]

    def edge_labels(self) -> list[tuple[str, str]]:
        return [(self.vertices[a], self.vertices[b]) for a, b in self.edges()]

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def idx(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {label!r}") from None

    def relabel_order(self, order: Sequence[int]) -> "Graph":
        """Same graph with vertex order permuted: new position k holds old vertex order[k]."""
        labels = [self.vertices[i] for i in order]
        return Graph.from_edges(self.edge_labels(), vertices=labels)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    One edge ``u v`` per line, ``#`` starts a comment, blank lines are
    ignored. A lone token declares an isolated vertex, which is only legal
    when it is the only vertex of the graph.
    """
    edges: list[tuple[str, str]] = []
    singles: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1:
            singles.append((lineno, tokens[0]))
        elif len(tokens) == 2:
            if tokens[0] == tokens[1]:
                raise SelfLoop(f"self-loop on {tokens[0]!r}", line=lineno)
            edges.append((tokens[0], tokens[1]))
        else:
            raise MalformedLine(f"expected 1 or 2 tokens, got {len(tokens)}", line=lineno)
    if not edges and not singles:
        raise EmptyGraph("no edges and no vertex declarations")
    if singles:
        labels = {t for _, t in singles}
        if edges or len(labels) > 1:
            lineno = singles[0][0] if edges else singles[1][0]
            raise MalformedLine(
                "isolated-vertex declaration is only legal for a single-vertex graph", line=lineno
            )
        return Graph.from_edges([], vertices=[singles[0][1]])
    return Graph.from_edges(edges)


def format_edge_list(g: Graph) -> str:
    if g.is_singleton:
        return g.vertices[0] + "\n"
    return "".join(f"{u} {v}\n" for u, v in g.edge_labels())


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    d: np.ndarray  # (n, n) int64, read-only

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def diameter(self) -> int:
        return int(self.d.max())

    def __getitem__(self, key):
        return self.d[key]


def bfs_distances(g: Graph) -> DistanceMatrix:
    comps = g.components()
    if len(comps) > 1:
        raise Disconnected([g.vertices[c[0]] for c in comps])
    n = g.n
    d = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = d[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = row[u] + 1
            for w in g.adjacency[u]:
                if row[w] < 0:
                    row[w] = du
                    queue.append(w)
    d.setflags(write=False)
    return DistanceMatrix(g.vertices, d)


@dataclass(frozen=True)
class Bipartition:
    coloring: dict[str, int]
    valid: bool
    odd_cycle: list[str] | None = None  # certificate when not valid


def is_bipartite(g: Graph) -> Bipartition:
    """2-colour by BFS from the first vertex; return an odd cycle on failure."""
    comps = g.components()
    if len(comps) > 1:
        raise Disconnected([g.vertices[c[0]] for c in comps])
    color = [-1] * g.n
    parent = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    clash = None
    while queue and clash is None:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if color[w] < 0:
                color[w] = 1 - color[u]
                parent[w] = u
                queue.append(w)
            elif color[w] == color[u]:
                clash = (u, w)
                break
    if clash is None:
        return Bipartition({g.vertices[i]: c for i, c in enumerate(color)}, True)

    # both endpoints sit on the same BFS layer; walk up to the common ancestor
    u, w = clash
    path_u, path_w = [u], [w]
    while path_u[-1] != path_w[-1]:
        path_u.append(parent[path_u[-1]])
        path_w.append(parent[path_w[-1]])
    cycle = path_u + path_w[-2::-1]
    coloring = {g.vertices[i]: c for i, c in enumerate(color) if c >= 0}
    return Bipartition(coloring, False, [g.vertices[i] for i in cycle])


@dataclass(frozen=True)
class IntersectionNumbers:
    """Counts ``p[(i, j, h)]`` of vertices at distance i from x and j from y, for x, y at distance h.

    ``numbers`` is only filled when the counts are pair-independent. Otherwise
    ``witness`` names two pairs at the same distance with different counts.
    """

    diameter: int
    welldefined: bool
    numbers: dict[tuple[int, int, int], int]
    witness: tuple[tuple[str, str], tuple[str, str], tuple[int, int, int]] | None = None

    def p(self, i: int, j: int, h: int) -> int:
        return self.numbers.get((i, j, h), 0)


def is_distance_regular(g: Graph, dist: DistanceMatrix | None = None) -> IntersectionNumbers:
    dist = dist if dist is not None else bfs_distances(g)
    d = dist.d
    n, k = dist.n, dist.diameter + 1
    table = np.full((k, k * k), -1, dtype=np.int64)
    owner: dict[int, tuple[int, int]] = {}
    for x in range(n):
        # counts[y, i*k + j] = #{z : d(x,z)=i, d(z,y)=j}
        codes = d[x][None, :] * k + d
        flat = (np.arange(n)[:, None] * (k * k) + codes).ravel()
        counts = np.bincount(flat, minlength=n * k * k).reshape(n, k * k)
        for y in range(n):
            h = d[x, y]
            if table[h, 0] < 0:
                table[h] = counts[y]
                owner[h] = (x, y)
                continue
            if not np.array_equal(table[h], counts[y]):
                bad = int(np.flatnonzero(table[h] != counts[y])[0])
                ox, oy = owner[h]
                lab = dist.labels
                return IntersectionNumbers(
                    dist.diameter,
                    False,
                    {},
                    ((lab[ox], lab[oy]), (lab[x], lab[y]), (bad // k, bad % k, int(h))),
                )
    numbers = {
        (i, j, h): int(table[h, i * k + j])
        for h in range(k)
        for i in range(k)
        for j in range(k)
        if table[h, i * k + j] > 0
    }
    return IntersectionNumbers(dist.diameter, True, numbers)
