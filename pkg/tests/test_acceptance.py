"""Acceptance suite, one test group per numbered criterion.

Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``;
the terminal summary ends with one PASS/FAIL line per criterion.
"""

import functools
import random
import sys
import time

import numpy as np
import pytest

from oracles import connected_atlas_graphs, from_nx, isomorphic
from qcube.analysis import verify_equivalences
from qcube.families import (
    CoxeterSpec,
    coxeter_theta_isometry_check,
    gen_complete,
    gen_complete_bipartite,
    gen_coxeter_cayley,
    gen_cycle,
    gen_doubled_odd,
    gen_hypercube,
    gen_path,
    gen_petersen,
    gen_random_tree,
)
from qcube.graph import bfs_distances, is_bipartite, is_distance_regular
from qcube.partial_cube import (
    EmbeddingMap,
    djokovic_embedding,
    find_quintuple,
    quintuple_witness_value,
    verify_embedding,
)
from qcube.qmatrix import build_q, estimate_pi, lambda_min_many, pi_contains, qec
from qcube.spectral import eigenvalues

GRID_STEP = 1 / 512
TOL = 1e-9
COXETER = ["A2", "A3", "B2", "B3", "I2(3)", "I2(4)", "I2(5)", "I2(6)"]


def family_corpus():
    out = [(f"Q{n}", gen_hypercube(n)) for n in range(1, 5)]
    out += [(f"O{m}", gen_doubled_odd(m)) for m in (1, 2)]
    out += [(f"C{n}", gen_cycle(n)) for n in range(3, 13)]
    out += [(f"T{n}s{s}", gen_random_tree(n, s)) for n in (2, 5, 9, 14, 20) for s in range(4)]
    out += [(f"K{a},{b}", gen_complete_bipartite(a, b)) for a in range(1, 5) for b in range(a, 5)]
    out += [(name, gen_coxeter_cayley(CoxeterSpec.parse(name))[0]) for name in COXETER]
    return out


@functools.cache
def corpus_reports():
    """Reports for the criterion-4 corpus, with the wall time spent building them."""
    graphs = [(f"atlas{k}", from_nx(G)) for k, G in enumerate(connected_atlas_graphs())]
    graphs += family_corpus()
    t0 = time.perf_counter()
    reports = [(name, g, verify_equivalences(g, GRID_STEP, TOL)) for name, g in graphs]
    return reports, time.perf_counter() - t0


@functools.cache
def distance_regular_reports():
    graphs = [(f"Q{n}", gen_hypercube(n)) for n in range(1, 6)]
    graphs += [(f"O{m}", gen_doubled_odd(m)) for m in range(1, 4)]
    graphs += [(f"C{n}", gen_cycle(n)) for n in range(3, 13)]
    graphs += [(f"K{n}", gen_complete(n)) for n in range(2, 7)]
    graphs += [(f"K{n},{n}", gen_complete_bipartite(n, n)) for n in range(1, 5)]
    graphs += [("Petersen", gen_petersen())]
    t0 = time.perf_counter()
    reports = [(name, g, verify_equivalences(g, GRID_STEP, TOL)) for name, g in graphs]
    return reports, time.perf_counter() - t0


NON_BIPARTITE = {"K3": gen_complete(3), "C5": gen_cycle(5), "C7": gen_cycle(7), "Petersen": gen_petersen()}
BIPARTITE = {
    name: g
    for name, g in [
        ("Q3", gen_hypercube(3)),
        ("Q4", gen_hypercube(4)),
        ("C6", gen_cycle(6)),
        ("C10", gen_cycle(10)),
        ("O2", gen_doubled_odd(2)),
        ("K2,3", gen_complete_bipartite(2, 3)),
        ("K3,4", gen_complete_bipartite(3, 4)),
        ("T12", gen_random_tree(12, 1)),
        ("A3", gen_coxeter_cayley(CoxeterSpec("A", 3))[0]),
        ("B3", gen_coxeter_cayley(CoxeterSpec("B", 3))[0]),
    ]
}


@pytest.mark.criterion(1)
def test_c1_bipartite_sign_symmetry():
    t0 = time.perf_counter()
    for name, g in NON_BIPARTITE.items():
        assert not pi_contains(g, -1), name
    for name, g in BIPARTITE.items():
        assert is_bipartite(g).valid, name
        assert pi_contains(g, -1), name
        d = bfs_distances(g)
        qs = [0.25, 0.5, 0.75, 1.0]
        plus, _ = lambda_min_many(d, qs)
        minus, _ = lambda_min_many(d, [-q for q in qs])
        assert np.abs(plus - minus).max() <= 1e-7 * g.n, name
    assert time.perf_counter() - t0 < 5


@pytest.mark.criterion(2)
def test_c2_k3_anchor():
    w = eigenvalues(build_q(bfs_distances(gen_complete(3)), -1)).eigenvalues
    np.testing.assert_allclose(w, [-1, 2, 2], rtol=0, atol=1e-10)


@pytest.mark.criterion(3)
def test_c3_complete_graph_endpoints():
    t0 = time.perf_counter()
    for n in (3, 4, 5):
        r = estimate_pi(gen_complete(n), GRID_STEP, TOL)
        assert r.intervals[0][0] == pytest.approx(-1 / (n - 1), abs=1e-3)
        assert r.intervals[-1][1] == 1.0
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(4)
def test_c4_equivalence_agreement():
    reports, elapsed = corpus_reports()
    assert len(reports) >= 300
    bad = [name for name, _, r in reports if not r.equivalence_consistent]
    assert bad == []
    assert elapsed < 600
    # the corpus must exercise both answers
    verdicts = {r.verdict for _, _, r in reports}
    assert verdicts == {True, False}


@pytest.mark.criterion(5)
def test_c5_distance_regular_classification():
    reports, elapsed = distance_regular_reports()
    positives = [gen_hypercube(n) for n in range(1, 6)]
    positives += [gen_doubled_odd(m) for m in range(1, 4)]
    positives += [gen_cycle(n) for n in range(4, 13, 2)]
    for name, g, r in reports:
        assert is_distance_regular(g).welldefined, name
        expected = any(h.n == g.n and h.m == g.m and isomorphic(g, h) for h in positives)
        assert r.pi.full_interval == expected, name
        assert r.cube.is_partial_cube == expected, name
    assert elapsed < 120


@pytest.mark.criterion(6)
def test_c6_k23_quintuple(k23):
    d = bfs_distances(k23)
    quint = find_quintuple(k23, d)
    assert quint is not None
    value = quintuple_witness_value(d, quint)
    assert isinstance(value, int) and value == 8 * (quint.i + 1)
    assert qec(k23, TOL, d).value > 0
    gaps = estimate_pi(k23, GRID_STEP, TOL, dist=d).excluded()
    assert any(min(hi, 1) > max(lo, 0) for lo, hi in gaps)


@functools.cache
def coxeter_embeddings():
    out = []
    for name in COXETER:
        g, roots = gen_coxeter_cayley(CoxeterSpec.parse(name))
        d = bfs_distances(g)
        out.append((name, g, roots, d, djokovic_embedding(g, d)))
    return out


@pytest.mark.criterion(7)
def test_c7_coxeter_embeddings():
    t0 = time.perf_counter()
    for name, g, roots, d, verdict in coxeter_embeddings():
        assert coxeter_theta_isometry_check(g, roots, d), name
        assert verdict.is_partial_cube, name
        assert verdict.embedding.classes == len(roots.positive_roots), name
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(8)
def test_c8_qec_anchors():
    assert qec(gen_complete(2)).value == pytest.approx(-1, abs=1e-9)
    assert qec(gen_path(3)).value == pytest.approx(-2 / 3, abs=1e-9)


@pytest.mark.criterion(8)
def test_c8_schoenberg_on_corpus():
    reports, _ = corpus_reports()
    bad = [name for name, _, r in reports if not r.schoenberg_consistent]
    assert bad == []


def produced_embeddings():
    out = []
    for source in (corpus_reports, distance_regular_reports):
        for name, g, r in source()[0]:
            if r.cube.embedding is not None:
                out.append((name, bfs_distances(g), r.cube.embedding))
    for name, _, _, d, verdict in coxeter_embeddings():
        out.append((name, d, verdict.embedding))
    return out


@pytest.mark.criterion(9)
def test_c9_embeddings_verify():
    embeddings = produced_embeddings()
    assert len(embeddings) > 100
    for name, d, emb in embeddings:
        assert verify_embedding(d, emb), name


@pytest.mark.criterion(9)
def test_c9_single_bit_mutations():
    rng = random.Random(20240101)
    embeddings = produced_embeddings()
    for _ in range(100):
        name, d, emb = rng.choice(embeddings)
        vertex = rng.choice(sorted(emb.assign))
        bit = rng.randrange(emb.classes)
        assign = {k: list(v) for k, v in emb.assign.items()}
        assign[vertex] = sorted(set(assign[vertex]) ^ {bit})
        mutated = EmbeddingMap(classes=emb.classes, base=emb.base, assign=assign)
        assert not verify_embedding(d, mutated), (name, vertex, bit)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
