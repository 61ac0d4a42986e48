"""Time the compiled-loop kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--n 600] [--repeat 5]

The first call of every jitted kernel is made before timing so compilation
is excluded.  With numba missing, only the numpy column is meaningful.
"""
import argparse
import timeit

import numpy as np

from fasclique import kernels
from fasclique.order import VertexOrder, left_graph
from fasclique.tournament import sample_random


def _cases(n, seed):
    t = sample_random(n, 3, seed)
    L = left_graph(t, VertexOrder.random(t.num_vertices, seed))
    adj = np.asarray(L.adj)
    p0, p1, p2 = (L.part(i) for i in range(3))
    pairs = kernels.extend_cliques(adj, p0.reshape(-1, 1)[: n // 2], p1)
    biadj = adj[np.ix_(p0, p1)]
    rows, cols = np.nonzero(biadj)
    indptr = np.concatenate([[0], np.cumsum(np.bincount(rows, minlength=n))])
    return {
        "left_adjacency": (t.orient, L.order.positions),
        "pair_common_counts": (adj[p0][:, p2], adj[p1][:, p2]),
        "prefix_common_counts": (adj, pairs[:2000], L.part_starts),
        "extend_cliques": (adj, pairs[:500], p2),
        "hopcroft_karp": (indptr, cols, n, n),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=600, help="part size of the k=3 test tournament")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"numba enabled: {kernels.USE_NUMBA}")
    print(f"{'kernel':<22}{'loops (s)':>12}{'numpy (s)':>12}{'ratio':>9}")
    for name, call_args in _cases(args.n, args.seed).items():
        fn = getattr(kernels, name)
        times = {}
        for impl in ("loops", "numpy"):
            fn(*call_args, impl=impl)  # warm-up / compile
            times[impl] = min(timeit.repeat(lambda: fn(*call_args, impl=impl),
                                            number=1, repeat=args.repeat))
        ratio = times["numpy"] / times["loops"] if times["loops"] else float("nan")
        print(f"{name:<22}{times['loops']:>12.4f}{times['numpy']:>12.4f}{ratio:>9.2f}")


if __name__ == "__main__":
    main()
