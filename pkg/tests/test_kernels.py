import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from fasclique import kernels

IMPLS = ("loops", "numpy")


def _random_adj(rng, n, p=0.5):
    a = (rng.random((n, n)) < p).astype(np.uint8)
    a = np.triu(a, 1)
    return a | a.T


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_left_adjacency_agrees(n, seed):
    rng = np.random.default_rng(seed)
    upper = np.triu((rng.random((n, n)) < 0.5).astype(np.uint8), 1)
    mask = np.triu(rng.random((n, n)) < 0.8, 1)
    orient = (upper & mask) | ((1 - upper) * mask).T
    pos = rng.permutation(n).astype(np.int64)
    a, b = (kernels.left_adjacency(orient, pos, impl=i) for i in IMPLS)
    assert np.array_equal(a, b)
    assert np.array_equal(a, a.T)
    # an arc u -> v is kept exactly when u sits before v
    for u, v in zip(*np.nonzero(orient)):
        assert a[u, v] == (pos[u] < pos[v])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 40), st.integers(0, 2**32 - 1))
def test_pair_common_counts_agrees(ma, mb, c, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 2, (ma, c), dtype=np.uint8)
    B = rng.integers(0, 2, (mb, c), dtype=np.uint8)
    want = A.astype(np.int64) @ B.astype(np.int64).T
    for impl in IMPLS:
        assert np.array_equal(kernels.pair_common_counts(A, B, impl=impl), want)


def test_pair_common_counts_shape_error():
    with pytest.raises(ValueError):
        kernels.pair_common_counts(np.zeros((2, 3)), np.zeros((2, 4)))


@pytest.mark.parametrize("seed", range(10))
def test_prefix_and_extend_agree(seed):
    rng = np.random.default_rng(seed)
    k, n = 4, 7
    adj = _random_adj(rng, k * n, 0.6)
    starts = np.arange(0, k * n + 1, n)
    cliques = np.column_stack([rng.integers(i * n, (i + 1) * n, 12) for i in range(2)])
    a, b = (kernels.prefix_common_counts(adj, cliques, starts, impl=i) for i in IMPLS)
    assert np.array_equal(a, b)
    for q in range(len(cliques)):
        for r in range(2):
            for t in range(k):
                common = adj[cliques[q, : r + 1]].all(axis=0)[starts[t]:starts[t + 1]].sum()
                assert a[q, r, t] == common
    cand = np.arange(2 * n, 3 * n)
    e1, e2 = (kernels.extend_cliques(adj, cliques, cand, impl=i) for i in IMPLS)
    assert sorted(map(tuple, e1)) == sorted(map(tuple, e2))
    for row in e1:
        assert adj[row[0], row[2]] and adj[row[1], row[2]]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12), st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_hopcroft_karp_matches_scipy(nl, nr, p, seed):
    rng = np.random.default_rng(seed)
    biadj = (rng.random((nl, nr)) < p).astype(np.uint8)
    rows, cols = np.nonzero(biadj)
    indptr = np.concatenate([[0], np.cumsum(np.bincount(rows, minlength=nl))])
    want = 0
    if nl and nr:
        want = int((maximum_bipartite_matching(csr_matrix(biadj), perm_type="column") >= 0).sum())
    for impl in IMPLS:
        ml, mr = kernels.hopcroft_karp(indptr, cols, nl, nr, impl=impl)
        assert int((ml >= 0).sum()) == want
        for i, j in enumerate(ml):
            if j >= 0:
                assert biadj[i, j] and mr[j] == i


def test_env_flag_selects_numpy():
    import os
    import subprocess
    import sys

    code = "from fasclique import kernels; print(kernels._IMPL)"
    env = dict(os.environ, FASCLIQUE_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"


def test_benchmark_runs(capsys):
    import importlib.util
    import pathlib

    path = pathlib.Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--n", "30", "--repeat", "1"])
    assert "hopcroft_karp" in capsys.readouterr().out
