"""Structural predicates on left graphs and sampled checks of the random-tournament properties."""
import math

import numpy as np

from . import kernels
from .constants import MU, theoretical_constants
from .errors import ParameterError, PreconditionError, ResourceError
from .order import VertexOrder, left_graph
from .tournament import sample_random

DEFAULT_TUPLE_BUDGET = 10**8


def signs(vector):
    """Normalise a direction vector (``"+-"``, ``[1, -1]``, ``['+', '-']``) to a tuple of +1/-1."""
    out = []
    for s in vector:
        if s in ("+", 1, True):
            out.append(1)
        elif s in ("-", -1, False):
            out.append(-1)
        else:
            raise ParameterError(f"direction entries must be '+' or '-', got {s!r}")
    return tuple(out)


def two_thirds_power(n):
    return math.floor(n ** (2.0 / 3.0))


def _consistent_mask(t, seq, vector, targets):
    mask = np.ones(len(targets), dtype=bool)
    for v, s in zip(seq, vector):
        if s > 0:
            mask &= t.orient[v, targets].astype(bool)
        else:
            mask &= t.orient[targets, v].astype(bool)
    return mask


def consistent_set(t, seq, D, target_part):
    """Vertices of ``target_part`` that are out-neighbours of ``seq[j]`` where ``D[j]`` is
    ``+`` and in-neighbours where it is ``-``."""
    vec = signs(D)
    if len(vec) != len(seq):
        raise ParameterError(f"sequence length {len(seq)} != direction length {len(vec)}")
    if len(set(seq)) != len(seq):
        raise ParameterError("sequence vertices must be distinct")
    targets = t.part(target_part)
    return set(targets[_consistent_mask(t, seq, vec, targets)].tolist())


def _check_disjoint(tuples):
    seen = set()
    for p in tuples:
        for v in p:
            if v in seen:
                raise ParameterError(f"tuples overlap at vertex {v}")
            seen.add(v)


def inconsistent_set(t, tuples, W_hat, t_idx):
    """Vertices of part ``t_idx`` that fail consistency with every ``tuples[i]`` under ``W_hat[i]``."""
    if len(tuples) != len(W_hat):
        raise ParameterError(f"{len(tuples)} tuples but {len(W_hat)} direction vectors")
    _check_disjoint(tuples)
    targets = t.part(t_idx)
    alive = np.ones(len(targets), dtype=bool)
    for p, w in zip(tuples, W_hat):
        vec = signs(w)
        if len(vec) != len(p):
            raise ParameterError("each direction vector must match its tuple length")
        alive &= ~_consistent_mask(t, p, vec, targets)
    return set(targets[alive].tolist())


def friendly_vertices(L, threshold):
    """Per part, the vertices with at least ``threshold`` L-neighbours in every other part."""
    deg = L.degrees_by_part()
    vp = L.vertex_part
    out = []
    for i in range(L.k):
        ids = L.part(i)
        others = np.delete(deg[ids], i, axis=1)
        out.append(ids[np.all(others >= threshold, axis=1)])
    return out


def friendly_clique_mask(L, cliques, constants):
    """Vectorised friendliness test for an ``(M, r)`` array of transversal cliques on parts ``0..r-1``."""
    cliques = np.asarray(cliques, dtype=np.int64).reshape(len(cliques), -1)
    m, r = cliques.shape
    if m == 0 or r >= L.k:
        return np.ones(m, dtype=bool)
    counts = kernels.prefix_common_counts(L.adj, cliques, L.part_starts)
    thr = np.array([constants.clique_threshold(rp) for rp in range(1, r + 1)])
    return np.all(counts[:, :, r:] >= thr[None, :, None], axis=(1, 2))


def is_friendly_clique(L, clique, constants):
    clique = [int(v) for v in clique]
    vp = L.vertex_part
    if [vp[v] for v in clique] != list(range(len(clique))):
        raise PreconditionError("clique must hold one vertex of each of parts 0..r-1 in order")
    if not L.is_clique(clique):
        raise PreconditionError(f"{clique} is not a clique of the left graph")
    return bool(friendly_clique_mask(L, [clique], constants)[0])


def _tuple_rows(L, tuples):
    """Row ``i``: common L-neighbourhood indicator of ``tuples[i]``."""
    rows = np.ones((len(tuples), L.adj.shape[0]), dtype=bool)
    for i, p in enumerate(tuples):
        for v in p:
            rows[i] &= L.adj[v].astype(bool)
    return rows


def check_property1_sample(L, R, S, r):
    """Edges of the tuple/vertex graph between tuples ``R`` and part-``r`` vertices ``S``.

    Returns ``(edge_count, bound, passed)`` with bound ``|R||S| / 2^(r+1)``.
    """
    R = [tuple(p) for p in R]
    _check_disjoint(R)
    S = list(S)
    rows = _tuple_rows(L, R)
    count = int(rows[:, S].sum()) if R and S else 0
    bound = len(R) * len(S) / 2 ** (r + 1)
    return count, bound, count >= bound


def enumerate_cliques(L, vertex_sets):
    """All cliques ``(a_1, .., a_r)`` of L with ``a_i`` in ``vertex_sets[i]``."""
    cur = np.asarray(vertex_sets[0], dtype=np.int64).reshape(-1, 1)
    for vs in vertex_sets[1:]:
        cur = kernels.extend_cliques(L.adj, cur, np.asarray(vs, dtype=np.int64))
    return cur


def check_property2_sample(L, S_sets, constants, budget=DEFAULT_TUPLE_BUDGET,
                           allow_estimate=True, samples=20000, rng=None):
    """Count friendly r-cliques spanning ``S_1..S_r``.

    Returns ``(count, bound, passed, exact)``.  Above ``budget`` candidate
    tuples the count is a uniform-sampling estimate (``exact=False``).
    """
    r = len(S_sets)
    n = constants.n
    bound = 0.5 * float(MU) ** r * n**r * 2.0 ** (-math.comb(r, 2))
    if any(len(s) == 0 for s in S_sets):
        return 0, bound, False, True
    total = math.prod(len(s) for s in S_sets)
    if total <= budget:
        cl = enumerate_cliques(L, S_sets)
        count = int(friendly_clique_mask(L, cl, constants).sum()) if len(cl) else 0
        return count, bound, count >= bound, True
    if not allow_estimate:
        raise ResourceError(f"{total} tuples exceed the exhaustive budget {budget}")
    rng = np.random.default_rng(rng)
    pick = np.column_stack([rng.choice(np.asarray(s), size=samples) for s in S_sets])
    is_cl = np.ones(samples, dtype=bool)
    for a in range(r):
        for b in range(a + 1, r):
            is_cl &= L.adj[pick[:, a], pick[:, b]].astype(bool)
    hits = pick[is_cl]
    good = friendly_clique_mask(L, hits, constants).sum() if len(hits) else 0
    est = int(round(total * good / samples))
    return est, bound, est >= bound, False


def property3_bound(n, r, d):
    return n * (1 - 2.0**-r) ** d + two_thirds_power(n)


def check_property3(t, tuples, W_hat, t_idx, d, r):
    if len(tuples) != d:
        raise ParameterError(f"d={d} but {len(tuples)} tuples given")
    size = len(inconsistent_set(t, tuples, W_hat, t_idx))
    return size <= property3_bound(t.part_sizes[t_idx], r, d)


def property4_bound(n, q):
    return n * 0.5**q + two_thirds_power(n)


def check_property4(t, seq, D, s):
    vp = t.vertex_part
    if len({int(vp[v]) for v in seq}) > 1:
        raise ParameterError("sequence must lie inside a single part")
    size = len(consistent_set(t, seq, D, s))
    return size <= property4_bound(t.part_sizes[s], len(seq))


def low_degree_vertices(L, threshold):
    """Per part, vertices whose total L-degree is below ``threshold``."""
    deg = L.adj.sum(axis=1)
    return [L.part(i)[deg[L.part(i)] < threshold] for i in range(L.k)]


# --------------------------------------------------------------------------
# Monte Carlo drivers


def _random_witness(prop, t, L, rng, max_q=5):
    k = t.k
    n = min(t.part_sizes)
    if prop == 1:
        r = int(rng.integers(1, k))
        perms = [rng.permutation(t.part(i)) for i in range(r)]
        P = list(zip(*[p.tolist() for p in perms]))
        lo = max(1, math.ceil(n / 10))
        R_idx = rng.choice(n, size=int(rng.integers(lo, n + 1)), replace=False)
        S = rng.choice(t.part(r), size=int(rng.integers(lo, n + 1)), replace=False)
        return check_property1_sample(L, [P[i] for i in R_idx], S.tolist(), r)[2]
    if prop == 2:
        r = int(rng.integers(1, k))
        lo = math.ceil(n / 18)
        S_sets = [rng.choice(t.part(i), size=int(rng.integers(lo, n + 1)), replace=False)
                  for i in range(r)]
        c = theoretical_constants(k, n)
        return check_property2_sample(L, S_sets, c, rng=rng)[2]
    if prop == 3:
        r = int(rng.integers(1, k))
        t_idx = int(rng.integers(r, k))
        d = int(rng.integers(1, max_q + 1))
        d = min(d, n)
        perms = [rng.permutation(t.part(i))[:d] for i in range(r)]
        tuples = list(zip(*[p.tolist() for p in perms]))
        W = [rng.choice(["+", "-"], size=r).tolist() for _ in range(d)]
        return check_property3(t, tuples, W, t_idx, d, r)
    if prop == 4:
        q = int(rng.integers(1, min(max_q, n) + 1))
        ell = int(rng.integers(0, k))
        s = int(rng.integers(0, k))
        seq = rng.choice(t.part(ell), size=q, replace=False).tolist()
        D = rng.choice(["+", "-"], size=q).tolist()
        return check_property4(t, seq, D, s)
    raise ParameterError(f"property must be 1..4, got {prop}")


def verify_property(prop, k, n, trials, seed, witnesses_per_tournament=1):
    """Draw fresh ``(T, pi, witness)`` triples and count how many pass."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    ss = np.random.SeedSequence(seed)
    passes = 0
    done = 0
    for child in ss.spawn(trials):
        t_seed, p_seed, w_seed = child.spawn(3)
        t = sample_random(n, k, t_seed)
        L = left_graph(t, VertexOrder.random(t.num_vertices, p_seed))
        rng = np.random.default_rng(w_seed)
        for _ in range(witnesses_per_tournament):
            passes += bool(_random_witness(prop, t, L, rng))
            done += 1
    return {
        "property": prop,
        "trials": done,
        "passes": passes,
        "parameters": {"k": k, "n": n, "seed": seed,
                       "witnesses_per_tournament": witnesses_per_tournament},
    }
