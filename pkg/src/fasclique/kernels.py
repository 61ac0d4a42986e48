"""Hot inner loops.

Every kernel has a compiled loop form (``*_loops``, jitted when numba is
enabled) and a vectorized numpy form (``*_numpy``).  The unsuffixed name is
the one the rest of the package calls; it is bound at import time according
to :data:`fasclique._accel.USE_NUMBA`.

All adjacency matrices are ``uint8`` with 0/1 entries.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "left_adjacency",
    "pair_common_counts",
    "prefix_common_counts",
    "extend_cliques",
    "hopcroft_karp",
    "USE_NUMBA",
]

_CHUNK_CELLS = 1 << 24


def _chunk_rows(row_cells):
    return max(1, _CHUNK_CELLS // max(1, row_cells))


# --------------------------------------------------------------------------
# left-to-right adjacency


def _left_adjacency_loops(orient, pos):
    n = orient.shape[0]
    out = np.zeros((n, n), dtype=np.uint8)
    for u in range(n):
        for v in range(u + 1, n):
            if pos[u] < pos[v]:
                e = orient[u, v]
            else:
                e = orient[v, u]
            out[u, v] = e
            out[v, u] = e
    return out


def left_adjacency_numpy(orient, pos):
    before = pos[:, None] < pos[None, :]
    fwd = orient.astype(bool) & before
    return (fwd | fwd.T).astype(np.uint8)


left_adjacency_loops = njit(_left_adjacency_loops)


# --------------------------------------------------------------------------
# common neighbourhood sizes between two row sets


def _pair_common_counts_loops(rows_a, rows_b):
    ma, c = rows_a.shape
    mb = rows_b.shape[0]
    out = np.zeros((ma, mb), dtype=np.int64)
    for i in range(ma):
        for j in range(mb):
            s = 0
            for x in range(c):
                s += rows_a[i, x] & rows_b[j, x]
            out[i, j] = s
    return out


def pair_common_counts_numpy(rows_a, rows_b):
    return rows_a.astype(np.int32) @ rows_b.astype(np.int32).T


pair_common_counts_loops = njit(_pair_common_counts_loops)


# --------------------------------------------------------------------------
# per-prefix common neighbourhood sizes, split by part


def _prefix_common_counts_loops(adj, cliques, part_starts):
    m, r = cliques.shape
    k = part_starts.shape[0] - 1
    n = adj.shape[0]
    out = np.zeros((m, r, k), dtype=np.int64)
    mask = np.empty(n, dtype=np.uint8)
    for i in range(m):
        for x in range(n):
            mask[x] = 1
        for j in range(r):
            row = adj[cliques[i, j]]
            for x in range(n):
                mask[x] &= row[x]
            for t in range(k):
                s = 0
                for x in range(part_starts[t], part_starts[t + 1]):
                    s += mask[x]
                out[i, j, t] = s
    return out


def prefix_common_counts_numpy(adj, cliques, part_starts):
    m, r = cliques.shape
    k = len(part_starts) - 1
    n = adj.shape[0]
    out = np.zeros((m, r, k), dtype=np.int64)
    step = _chunk_rows(n)
    for lo in range(0, m, step):
        block = cliques[lo:lo + step]
        mask = np.ones((len(block), n), dtype=bool)
        for j in range(r):
            mask &= adj[block[:, j]].astype(bool)
            csum = np.concatenate(
                [np.zeros((len(block), 1), dtype=np.int64), np.cumsum(mask, axis=1)],
                axis=1,
            )
            out[lo:lo + step, j, :] = csum[:, part_starts[1:]] - csum[:, part_starts[:-1]]
    return out


prefix_common_counts_loops = njit(_prefix_common_counts_loops)


# --------------------------------------------------------------------------
# clique extension by one part


def _extend_cliques_loops(adj, cliques, candidates):
    m, r = cliques.shape
    c = candidates.shape[0]
    count = 0
    for i in range(m):
        for j in range(c):
            v = candidates[j]
            ok = True
            for x in range(r):
                if adj[cliques[i, x], v] == 0:
                    ok = False
                    break
            if ok:
                count += 1
    out = np.empty((count, r + 1), dtype=np.int64)
    p = 0
    for i in range(m):
        for j in range(c):
            v = candidates[j]
            ok = True
            for x in range(r):
                if adj[cliques[i, x], v] == 0:
                    ok = False
                    break
            if ok:
                for x in range(r):
                    out[p, x] = cliques[i, x]
                out[p, r] = v
                p += 1
    return out


def extend_cliques_numpy(adj, cliques, candidates):
    m, r = cliques.shape
    pieces = []
    step = _chunk_rows(len(candidates) * max(r, 1))
    sub = adj[:, candidates].astype(bool)
    for lo in range(0, m, step):
        block = cliques[lo:lo + step]
        ok = sub[block].all(axis=1)
        ii, jj = np.nonzero(ok)
        pieces.append(np.column_stack([block[ii], candidates[jj]]))
    if not pieces:
        return np.empty((0, r + 1), dtype=np.int64)
    return np.concatenate(pieces).astype(np.int64)


extend_cliques_loops = njit(_extend_cliques_loops)


# --------------------------------------------------------------------------
# Hopcroft-Karp over a CSR bipartite graph


def _hopcroft_karp_loops(indptr, indices, n_left, n_right):
    inf = n_left + n_right + 1
    match_l = np.full(n_left, -1, dtype=np.int64)
    match_r = np.full(n_right, -1, dtype=np.int64)
    dist = np.empty(n_left, dtype=np.int64)
    queue = np.empty(n_left, dtype=np.int64)
    it = np.empty(n_left, dtype=np.int64)
    stack = np.empty(n_left, dtype=np.int64)
    while True:
        head = 0
        tail = 0
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = inf
        found = False
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(indptr[u], indptr[u + 1]):
                w = match_r[indices[e]]
                if w == -1:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if not found:
            break
        for u in range(n_left):
            it[u] = indptr[u]
        for s in range(n_left):
            if match_l[s] != -1:
                continue
            top = 0
            stack[0] = s
            while top >= 0:
                u = stack[top]
                pushed = False
                augmented = False
                while it[u] < indptr[u + 1]:
                    v = indices[it[u]]
                    w = match_r[v]
                    if w == -1:
                        for i in range(top, -1, -1):
                            uu = stack[i]
                            vv = indices[it[uu]]
                            match_l[uu] = vv
                            match_r[vv] = uu
                        augmented = True
                        break
                    if dist[w] == dist[u] + 1:
                        top += 1
                        stack[top] = w
                        pushed = True
                        break
                    it[u] += 1
                if augmented:
                    break
                if not pushed:
                    dist[u] = inf
                    top -= 1
                    if top >= 0:
                        it[stack[top]] += 1
    return match_l, match_r


# No vectorized form exists; the fallback runs the same loops interpreted.
hopcroft_karp_numpy = _hopcroft_karp_loops
hopcroft_karp_loops = njit(_hopcroft_karp_loops)


_IMPL = "loops" if USE_NUMBA else "numpy"
_TABLE = {
    "loops": (left_adjacency_loops, pair_common_counts_loops, prefix_common_counts_loops,
              extend_cliques_loops, hopcroft_karp_loops),
    "numpy": (left_adjacency_numpy, pair_common_counts_numpy, prefix_common_counts_numpy,
              extend_cliques_numpy, hopcroft_karp_numpy),
}


def _u8(a):
    return np.ascontiguousarray(a, dtype=np.uint8)


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def left_adjacency(orient, pos, impl=None):
    return _TABLE[impl or _IMPL][0](_u8(orient), _i64(pos))


def pair_common_counts(rows_a, rows_b, impl=None):
    rows_a, rows_b = _u8(rows_a), _u8(rows_b)
    if rows_a.ndim != 2 or rows_b.ndim != 2 or rows_a.shape[1] != rows_b.shape[1]:
        raise ValueError("row blocks must be 2-d with matching column counts")
    return np.asarray(_TABLE[impl or _IMPL][1](rows_a, rows_b), dtype=np.int64)


def prefix_common_counts(adj, cliques, part_starts, impl=None):
    cliques = _i64(cliques).reshape(len(cliques), -1)
    return _TABLE[impl or _IMPL][2](_u8(adj), cliques, _i64(part_starts))


def extend_cliques(adj, cliques, candidates, impl=None):
    cliques = _i64(cliques).reshape(len(cliques), -1)
    return _TABLE[impl or _IMPL][3](_u8(adj), cliques, _i64(candidates))


def hopcroft_karp(indptr, indices, n_left, n_right, impl=None):
    return _TABLE[impl or _IMPL][4](_i64(indptr), _i64(indices), int(n_left), int(n_right))
