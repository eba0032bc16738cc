import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import pivoted_cholesky_psd
from qcube.families import gen_complete, gen_cycle, gen_path
from qcube.graph import bfs_distances
from qcube.qmatrix import build_q
from qcube.spectral import (
    SymMatrix,
    eigenvalues,
    is_psd,
    jacobi_eigh,
    min_eigenvalue,
    psd_threshold,
)

METHODS = ["lapack", "jacobi"]
ANCHOR = [[1, -1, -1], [-1, 1, -1], [-1, -1, 1]]


@pytest.mark.parametrize("method", METHODS)
class TestEigenvalues:
    def test_k3_anchor(self, method):
        w = eigenvalues(SymMatrix(ANCHOR), method=method).eigenvalues
        np.testing.assert_allclose(w, [-1, 2, 2], atol=1e-12)

    def test_identity(self, method):
        np.testing.assert_array_equal(eigenvalues(SymMatrix(np.eye(4)), method=method).eigenvalues, [1, 1, 1, 1])

    def test_c4_q_matrix(self, method):
        m = build_q(bfs_distances(gen_cycle(4)), 0.5)
        w = eigenvalues(m, method=method).eigenvalues
        np.testing.assert_allclose(w, [0.25, 0.75, 0.75, 2.25], atol=1e-12)

    def test_residual_contract(self, method):
        rng = np.random.default_rng(11)
        m = SymMatrix(rng.normal(size=(15, 15)))
        spec = eigenvalues(m, 1e-9, method)
        assert spec.residual <= 1e-9 * m.norm_inf()
        assert np.all(np.diff(spec.eigenvalues) >= 0)

    def test_deterministic(self, method):
        m = SymMatrix(np.random.default_rng(3).normal(size=(9, 9)))
        a = eigenvalues(m, method=method).eigenvalues
        b = eigenvalues(m, method=method).eigenvalues
        assert np.array_equal(a, b)


def test_min_eigenvalue_examples():
    assert min_eigenvalue(build_q(bfs_distances(gen_complete(3)), -1)) == pytest.approx(-1, abs=1e-12)
    # Q_{-1}(P3) = v v^T with v = (1, -1, 1)
    assert min_eigenvalue(build_q(bfs_distances(gen_path(3)), -1)) == pytest.approx(0, abs=1e-12)
    assert min_eigenvalue(SymMatrix(np.zeros((3, 3)))) == 0


def test_is_psd_examples():
    d = bfs_distances(gen_cycle(5))
    assert is_psd(build_q(d, 1))
    assert is_psd(build_q(d, 0))
    assert not is_psd(build_q(bfs_distances(gen_complete(3)), -1))
    assert psd_threshold(SymMatrix(np.ones((4, 4)))) == pytest.approx(4e-9)
    assert psd_threshold(SymMatrix(np.eye(2) * 1e-3)) == 1e-9


def test_symmetry_enforced_from_upper_triangle():
    m = SymMatrix([[1.0, 2.0], [99.0, 3.0]])
    assert m.a.tolist() == [[1.0, 2.0], [2.0, 3.0]]


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(5)
    for n in (1, 2, 5, 12, 30):
        a = SymMatrix(rng.normal(size=(n, n))).a
        w, v, sweeps = jacobi_eigh(a)
        np.testing.assert_allclose(np.sort(w), np.linalg.eigvalsh(a), atol=1e-11)
        np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-12)
        assert sweeps < 20


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("scale", [4e-320, 5.3e-287, 1e-150, 1e150, 1e300])
def test_extreme_scales(method, scale):
    a = scale * np.array([[2.0, 1.0], [1.0, 2.0]])
    w = eigenvalues(SymMatrix(a), method=method).eigenvalues
    np.testing.assert_allclose(w, [scale, 3 * scale], rtol=1e-3 if scale < 1e-307 else 1e-12, atol=0)


def test_bad_arguments():
    with pytest.raises(ValueError):
        eigenvalues(SymMatrix(np.eye(2)), tol=0)
    with pytest.raises(ValueError):
        eigenvalues(SymMatrix(np.eye(2)), method="qr")


sym_matrices = st.integers(1, 10).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-5, 5, allow_nan=False, width=64))
)


@settings(max_examples=80, deadline=None)
@given(sym_matrices, st.sampled_from(METHODS))
def test_trace_identity(a, method):
    m = SymMatrix(a)
    w = eigenvalues(m, method=method).eigenvalues
    assert abs(w.sum() - np.trace(m.a)) <= m.n * 1e-9 * max(1.0, m.norm_inf())


@settings(max_examples=60, deadline=None)
@given(sym_matrices, st.randoms(use_true_random=False))
def test_signed_permutation_invariance(a, rnd):
    m = SymMatrix(a)
    n = m.n
    perm = list(range(n))
    rnd.shuffle(perm)
    p = np.zeros((n, n))
    for k, j in enumerate(perm):
        p[k, j] = rnd.choice([-1.0, 1.0])
    w1 = eigenvalues(m).eigenvalues
    w2 = eigenvalues(SymMatrix(p.T @ m.a @ p)).eigenvalues
    np.testing.assert_allclose(w1, w2, atol=n * 1e-9 * max(1.0, m.norm_inf()))


def test_is_psd_agrees_with_pivoted_cholesky():
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 200:
        n = int(rng.integers(1, 13))
        # mix of PSD Gram matrices and indefinite ones
        if rng.random() < 0.5:
            b = rng.normal(size=(n, int(rng.integers(1, n + 1))))
            a = b @ b.T
        else:
            a = rng.normal(size=(n, n))
        m = SymMatrix(a)
        thr = psd_threshold(m)
        lam = np.linalg.eigvalsh(m.a)[0]
        if abs(lam) <= 10 * thr:
            continue  # ambiguous near-zero case
        assert is_psd(m) == pivoted_cholesky_psd(m.a, thr), (m.a, lam)
        checked += 1
