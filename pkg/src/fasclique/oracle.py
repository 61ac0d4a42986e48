"""Exact ground truth for tiny instances.

Deliberately independent of the pipeline: k=2 packings use scipy's matcher,
larger k a plain branch and bound over explicitly listed cliques.
"""
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import ResourceError
from .order import VertexOrder, left_graph_from_adjacency
from .tournament import _cross_pairs, from_bits

EXACT_MAX_N = 8
FK_MAX_VERTICES = 8
ENUM_MAX_PAIRS = 24


@dataclass
class ExactPacking:
    size: int
    witness: list


def _transversal_cliques(adj, parts):
    out = []
    for combo in itertools.product(*parts):
        if all(adj[a, b] for a, b in itertools.combinations(combo, 2)):
            out.append(tuple(int(v) for v in combo))
    return out


def max_transversal_packing(L, max_n=EXACT_MAX_N):
    """Largest set of vertex-disjoint transversal k-cliques in ``L``."""
    parts = [L.part(i).tolist() for i in range(L.k)]
    if L.k == 2:
        sub = csr_matrix(L.adj[np.ix_(parts[0], parts[1])])
        match = maximum_bipartite_matching(sub, perm_type="column")
        wit = [(parts[0][i], parts[1][j]) for i, j in enumerate(match) if j >= 0]
        return ExactPacking(len(wit), wit)
    if max(len(p) for p in parts) > max_n:
        raise ResourceError(f"exact packing limited to parts of size <= {max_n} for k >= 3")
    cliques = _transversal_cliques(L.adj, parts)
    pivot = min(range(L.k), key=lambda i: (len(parts[i]), i))
    by_vertex = {v: [c for c in cliques if c[pivot] == v] for v in parts[pivot]}
    order = parts[pivot]
    vp = L.vertex_part

    best = []
    used = set()
    for c in cliques:
        if used.isdisjoint(c):
            best.append(c)
            used.update(c)

    def free_count(used_set):
        return min(len(p) - sum(1 for v in p if v in used_set) for p in parts)

    def rec(i, used_set, chosen):
        nonlocal best
        if len(chosen) + min(len(order) - i, free_count(used_set)) <= len(best):
            return
        if i == len(order):
            best = list(chosen)
            return
        for c in by_vertex[order[i]]:
            if used_set.isdisjoint(c):
                chosen.append(c)
                rec(i + 1, used_set | set(c), chosen)
                chosen.pop()
        rec(i + 1, used_set, chosen)

    rec(0, frozenset(), [])
    assert all(sorted(vp[v] for v in c) == list(range(L.k)) for c in best)
    return ExactPacking(len(best), best)


def _left_bit_rows(t, perms):
    """For every order (rows of ``perms``), one 0/1 per cross pair: is it a left edge?"""
    iu, ju = _cross_pairs(t.part_sizes)
    pos = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    pos[rows, perms] = np.arange(perms.shape[1])[None, :]
    forward = t.orient[iu, ju].astype(bool)
    return (forward[None, :] == (pos[:, iu] < pos[:, ju])).astype(np.uint8)


def brute_force_fk(t, max_vertices=FK_MAX_VERTICES, return_order=False):
    """Exact f_k(t): minimum over all vertex orders of the exact max clique packing."""
    n_v = t.num_vertices
    if n_v > max_vertices:
        raise ResourceError(f"{n_v} vertices exceed the brute-force limit {max_vertices}")
    perms = np.array(list(itertools.permutations(range(n_v))), dtype=np.int64)
    bits = _left_bit_rows(t, perms)
    uniq, first = np.unique(bits, axis=0, return_index=True)
    iu, ju = _cross_pairs(t.part_sizes)
    best, best_order = None, None
    for row, idx in zip(uniq, first):
        adj = np.zeros((n_v, n_v), dtype=np.uint8)
        adj[iu, ju] = row
        adj[ju, iu] = row
        size = max_transversal_packing(left_graph_from_adjacency(adj, t.part_sizes)).size
        if best is None or size < best:
            best, best_order = size, VertexOrder(perms[idx])
            if best == 0:
                break
    if return_order:
        return best, best_order
    return best


def num_cross_pairs(part_sizes):
    n = sum(part_sizes)
    return (n * n - sum(s * s for s in part_sizes)) // 2


def enumerate_tournaments(part_sizes, max_pairs=ENUM_MAX_PAIRS):
    """Every orientation, in lexicographic order of the cross-pair bit string."""
    part_sizes = tuple(int(s) for s in part_sizes)
    p = num_cross_pairs(part_sizes)
    if p > max_pairs:
        raise ResourceError(f"{p} cross pairs exceed the enumeration limit {max_pairs}")
    for mask in range(2**p):
        bits = [(mask >> (p - 1 - i)) & 1 for i in range(p)]
        yield mask, from_bits(part_sizes, bits)


def upper_bound(t):
    return max(0, min(t.part_sizes) - t.k + 1)
