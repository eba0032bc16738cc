"""Deterministic generators for the graph families used as test corpus.

Coxeter groups of types A, B and I2(m) are realised as concrete
permutation models. Their Cayley graphs come with the inversion-set map
``theta(x) = {positive roots sent negative by x}``, which embeds each graph
isometrically into the hypercube on the positive roots.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Literal

from .errors import OrderCapExceeded, OutOfRange
from .graph import DistanceMatrix, Graph, bfs_distances

DEFAULT_ORDER_CAP = 50_000


def _subset_label(s) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def gen_hypercube(n: int) -> Graph:
    if not 1 <= n <= 16:
        raise OutOfRange("hypercube dimension must lie in 1..16")
    labels = [_subset_label(k + 1 for k in range(n) if mask >> k & 1) for mask in range(1 << n)]
    edges = [
        (labels[mask], labels[mask | 1 << k])
        for mask in range(1 << n)
        for k in range(n)
        if not mask >> k & 1
    ]
    return Graph.from_edges(edges, vertices=labels)


def gen_doubled_odd(m: int) -> Graph:
    """Middle two layers of the hypercube on a (2m+1)-set."""
    if not 1 <= m <= 4:
        raise OutOfRange("doubled Odd parameter must lie in 1..4")
    ground = range(1, 2 * m + 2)
    small = list(combinations(ground, m))
    large = list(combinations(ground, m + 1))
    labels = [_subset_label(s) for s in small + large]
    edges = [
        (_subset_label(s), _subset_label(t))
        for s in small
        for t in large
        if set(s) <= set(t)
    ]
    return Graph.from_edges(edges, vertices=labels)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise OutOfRange("cycle length must be at least 3")
    return Graph.from_edges([(str(k), str((k + 1) % n)) for k in range(n)], vertices=[str(k) for k in range(n)])


def gen_path(n: int) -> Graph:
    if n < 1:
        raise OutOfRange("path needs at least one vertex")
    return Graph.from_edges([(str(k), str(k + 1)) for k in range(n - 1)], vertices=[str(k) for k in range(n)])


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise OutOfRange("complete graph needs at least one vertex")
    return Graph.from_edges(
        [(str(a), str(b)) for a, b in combinations(range(n), 2)], vertices=[str(k) for k in range(n)]
    )


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``a0..`` and ``b0..``; vertex order lists the first part first."""
    if a < 1 or b < 1:
        raise OutOfRange("both parts need at least one vertex")
    left = [f"a{k}" for k in range(a)]
    right = [f"b{k}" for k in range(b)]
    return Graph.from_edges([(u, v) for u in left for v in right], vertices=left + right)


def gen_petersen() -> Graph:
    """2-subsets of a 5-set, adjacent when disjoint."""
    pairs = list(combinations(range(1, 6), 2))
    labels = [_subset_label(p) for p in pairs]
    edges = [
        (_subset_label(p), _subset_label(r))
        for p, r in combinations(pairs, 2)
        if not set(p) & set(r)
    ]
    return Graph.from_edges(edges, vertices=labels)


def gen_random_tree(n: int, seed: int = 0) -> Graph:
    """Vertex k > 0 attaches to a uniformly random earlier vertex."""
    if n < 1:
        raise OutOfRange("tree needs at least one vertex")
    rng = random.Random(seed)
    edges = [(str(rng.randrange(k)), str(k)) for k in range(1, n)]
    return Graph.from_edges(edges, vertices=[str(k) for k in range(n)])


# ---------------------------------------------------------------------------
# Coxeter groups


@dataclass(frozen=True)
class CoxeterSpec:
    kind: Literal["A", "B", "I2"]
    param: int  # rank n for A(n) and B(n); m for I2(m)

    def __post_init__(self):
        if self.kind not in ("A", "B", "I2"):
            raise OutOfRange(f"unsupported Coxeter type {self.kind!r}")
        if self.kind == "I2" and self.param < 2:
            raise OutOfRange("I2(m) needs m >= 2")
        if self.param < 1:
            raise OutOfRange("rank must be at least 1")

    @property
    def rank(self) -> int:
        return 2 if self.kind == "I2" else self.param

    @property
    def order(self) -> int:
        if self.kind == "A":
            return math.factorial(self.param + 1)
        if self.kind == "B":
            return 2**self.param * math.factorial(self.param)
        return 2 * self.param

    @property
    def name(self) -> str:
        return f"{self.kind}({self.param})"

    @classmethod
    def parse(cls, text: str) -> "CoxeterSpec":
        """Accepts ``A3``, ``A(3)``, ``B2``, ``I2(5)``."""
        t = text.strip().upper().replace("(", "").replace(")", "")
        if t.startswith("I2") and t[2:].isdigit():
            return cls("I2", int(t[2:]))
        if t[:1] in ("A", "B") and t[1:].isdigit():
            return cls(t[0], int(t[1:]))  # type: ignore[arg-type]
        raise OutOfRange(f"cannot parse Coxeter type {text!r}")


@dataclass(frozen=True)
class RootSet:
    positive_roots: tuple[str, ...]
    theta: dict[str, frozenset[int]]  # vertex label -> indices into positive_roots


Element = tuple[int, ...]


def _perm_label(x: Element) -> str:
    return "[" + ",".join(str(v) for v in x) + "]"


def _cayley_bfs(
    identity: Hashable,
    generators: list[Callable],
    label: Callable[[Hashable], str],
    cap: int,
) -> tuple[list, list[tuple[int, int]]]:
    """Enumerate the group from the identity; an edge joins x and s.x for each generator s."""
    index = {identity: 0}
    elements = [identity]
    edges: list[tuple[int, int]] = []
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = s(x)
            if y not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
            a, b = index[x], index[y]
            if a < b:
                edges.append((a, b))
    return elements, edges


def _type_a(n: int, cap: int):
    size = n + 1

    def swap_values(i: int):
        # left multiplication by the transposition (i, i+1) acts on values
        def act(x: Element) -> Element:
            return tuple(i + 1 if v == i else i if v == i + 1 else v for v in x)

        return act

    gens = [swap_values(i) for i in range(1, size)]
    elements, edges = _cayley_bfs(tuple(range(1, size + 1)), gens, _perm_label, cap)
    # root e_b - e_a for positions a < b; x sends it negative iff x(a) > x(b)
    roots = list(combinations(range(1, size + 1), 2))
    names = tuple(f"e{b}-e{a}" for a, b in roots)

    def theta(x: Element) -> frozenset[int]:
        return frozenset(k for k, (a, b) in enumerate(roots) if x[a - 1] > x[b - 1])

    return elements, edges, names, theta, _perm_label


def _type_b(n: int, cap: int):
    def swap_values(i: int):
        def act(x: Element) -> Element:
            out = []
            for v in x:
                a = abs(v)
                a = i + 1 if a == i else i if a == i + 1 else a
                out.append(a if v > 0 else -a)
            return tuple(out)

        return act

    def flip_one(x: Element) -> Element:
        return tuple(-v if abs(v) == 1 else v for v in x)

    gens = [flip_one] + [swap_values(i) for i in range(1, n)]
    elements, edges = _cayley_bfs(tuple(range(1, n + 1)), gens, _perm_label, cap)

    # positive roots as sparse vectors {coordinate: coefficient}; a vector is
    # positive when its highest nonzero coordinate has a positive coefficient
    roots: list[dict[int, int]] = [{k: 1} for k in range(1, n + 1)]
    names = [f"e{k}" for k in range(1, n + 1)]
    for a, b in combinations(range(1, n + 1), 2):
        roots.append({b: 1, a: -1})
        names.append(f"e{b}-e{a}")
        roots.append({b: 1, a: 1})
        names.append(f"e{b}+e{a}")

    def image_negative(x: Element, root: dict[int, int]) -> bool:
        top, sign = 0, 0
        for coord, coef in root.items():
            v = x[coord - 1]
            if abs(v) > top:
                top, sign = abs(v), coef * (1 if v > 0 else -1)
        return sign < 0

    def theta(x: Element) -> frozenset[int]:
        return frozenset(k for k, r in enumerate(roots) if image_negative(x, r))

    return elements, edges, tuple(names), theta, _perm_label


def _type_i2(m: int, cap: int):
    # affine maps z -> eps * z + c on Z_m; s: z -> -z, t: z -> 1 - z, so st has order m
    def compose(f: Element, g: Element) -> Element:
        (e1, c1), (e2, c2) = f, g
        return (e1 * e2, (e1 * c2 + c1) % m)

    s, t = (-1, 0), (-1, 1)
    gens = [lambda x: compose(s, x), lambda x: compose(t, x)]
    elements, edges = _cayley_bfs((1, 0), gens, str, cap)

    # reduced words from the BFS tree: the word of s.x is "s" + word(x)
    graph = Graph.from_edges([(str(a), str(b)) for a, b in edges], vertices=[str(k) for k in range(len(elements))])
    depth = bfs_distances(graph).d[0]
    index = {x: k for k, x in enumerate(elements)}
    words = {elements[0]: ""}
    for x in elements:
        for letter, gen in zip("st", (s, t)):
            y = compose(gen, x)
            if y not in words and depth[index[y]] == depth[index[x]] + 1:
                words[y] = letter + words[x]

    # positive roots beta_0 = alpha_s, beta_1 = s alpha_t, ..., beta_{m-1} = alpha_t;
    # theta(x) is an initial run when x has right descent s, a final run when t
    names = tuple(f"beta{k}" for k in range(m))

    def theta(x: Element) -> frozenset[int]:
        length = int(depth[index[x]])
        if length == 0:
            return frozenset()
        if words[x].endswith("s"):
            return frozenset(range(length))
        return frozenset(range(m - length, m))

    def label(x: Element) -> str:
        return words[x] or "e"

    return elements, edges, names, theta, label


def gen_coxeter_cayley(spec: CoxeterSpec, cap: int = DEFAULT_ORDER_CAP) -> tuple[Graph, RootSet]:
    if spec.order > cap:
        raise OrderCapExceeded(f"{spec.name} has order {spec.order} > cap {cap}")
    builder = {"A": _type_a, "B": _type_b, "I2": _type_i2}[spec.kind]
    elements, edges, names, theta, label = builder(spec.param, cap)
    labels = [label(x) for x in elements]
    g = Graph.from_edges([(labels[a], labels[b]) for a, b in edges], vertices=labels)
    return g, RootSet(names, {labels[k]: theta(x) for k, x in enumerate(elements)})


def coxeter_theta_isometry_check(
    g: Graph, roots: RootSet, dist: DistanceMatrix | None = None
) -> bool:
    """Exhaustive check that |theta(x) ^ theta(y)| equals the Cayley distance."""
    d = dist if dist is not None else bfs_distances(g)
    sets = [roots.theta[v] for v in g.vertices]
    return all(
        len(sets[a] ^ sets[b]) == d.d[a, b] for a in range(g.n) for b in range(a + 1, g.n)
    ) and all(len(s) == d.d[0, k] for k, s in enumerate(sets))


FAMILIES = {
    "hypercube": (gen_hypercube, 1),
    "doubled-odd": (gen_doubled_odd, 1),
    "cycle": (gen_cycle, 1),
    "path": (gen_path, 1),
    "complete": (gen_complete, 1),
    "complete-bipartite": (gen_complete_bipartite, 2),
    "petersen": (lambda: gen_petersen(), 0),
}


def generate(family: str, params: list[str], seed: int | None = None) -> Graph:
    """Dispatch used by the command line: ``generate("cycle", ["6"])``."""
    if family == "random-tree":
        if len(params) != 1:
            raise OutOfRange("random-tree takes one parameter: n")
        return gen_random_tree(int(params[0]), seed or 0)
    if family == "coxeter":
        if len(params) == 1:
            spec = CoxeterSpec.parse(params[0])
        elif len(params) == 2:
            spec = CoxeterSpec.parse(params[0] + params[1])
        else:
            raise OutOfRange("coxeter takes a type such as A3, B2 or I2(5)")
        return gen_coxeter_cayley(spec)[0]
    if family not in FAMILIES:
        known = ", ".join(sorted([*FAMILIES, "random-tree", "coxeter"]))
        raise OutOfRange(f"unknown family {family!r}; known: {known}")
    fn, arity = FAMILIES[family]
    if len(params) != arity:
        raise OutOfRange(f"{family} takes {arity} integer parameter(s)")
    return fn(*(int(p) for p in params))
