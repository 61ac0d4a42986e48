"""Gradual matching: grow perfect r-sets into n-k+1 disjoint transversal k-cliques."""
import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .absorber import (
    DEFAULT_MAX_RETRIES,
    a_star_has_slack,
    build_absorber,
    resample_a_star,
    select_a_star,
)
from .constants import make_constants
from .errors import PreconditionError, StageFailure
from .matching import bipartite_max_matching, neighbourhood
from .order import left_graph


@dataclass
class PerfectRSet:
    """``n`` disjoint r-tuples covering parts ``0..r-1``; ``star`` indexes the clique tuples."""

    r: int
    tuples: list
    star: list

    @property
    def star_tuples(self):
        return [self.tuples[i] for i in self.star]

    def check_perfect(self, L):
        flat = [v for p in self.tuples for v in p]
        covered = sorted(flat)
        expect = sorted(int(v) for i in range(self.r) for v in L.part(i))
        return covered == expect and all(
            [int(L.vertex_part[v]) for v in p] == list(range(self.r)) for p in self.tuples
        )


@dataclass
class PackingResult:
    status: str
    cliques: list = field(default_factory=list)
    stage: str = None
    diagnostic: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "success"

    def to_dict(self):
        diag = {k: v for k, v in self.diagnostic.items() if not isinstance(v, np.ndarray)}
        return {
            "status": self.status,
            "stage": self.stage,
            "num_cliques": len(self.cliques),
            "cliques": [list(map(int, c)) for c in self.cliques],
            "diagnostic": diag,
            "trace": self.trace,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, default=int)


def verify_packing(L, cliques):
    """Pairwise disjoint, one vertex per part, every pair adjacent in ``L``."""
    seen = set()
    vp = L.vertex_part
    for c in cliques:
        c = [int(v) for v in c]
        if sorted(int(vp[v]) for v in c) != list(range(L.k)):
            return False
        if seen.intersection(c) or len(set(c)) != len(c):
            return False
        seen.update(c)
        if not L.is_clique(c):
            return False
    return True


def b_sets(L, absorber):
    """Per part, the ``A*`` vertices not used by any absorber level."""
    used = absorber.vertex_set()
    return [np.array([v for v in a if v not in used], dtype=np.int64) for a in absorber.a_star]


def _leftovers(L, a_star, part):
    star = set(int(v) for v in a_star[part])
    return [int(v) for v in L.part(part) if int(v) not in star]


def _common_rows(L, tuples):
    rows = np.ones((len(tuples), L.adj.shape[0]), dtype=np.uint8)
    for j in range(len(tuples[0]) if len(tuples) else 0):
        rows &= L.adj[[p[j] for p in tuples]]
    return rows


def _friendly_filter(L, left_rows, right_vertices, later_sets, threshold):
    """Mask of left/right pairs whose joint common neighbourhood is large in every later set."""
    keep = np.ones((len(left_rows), len(right_vertices)), dtype=bool)
    right_rows = L.adj[right_vertices]
    for bt in later_sets:
        counts = kernels.pair_common_counts(left_rows[:, bt], right_rows[:, bt])
        keep &= counts >= threshold
    return keep


def _match_or_fail(stage, left, right, biadj, extra):
    m = bipartite_max_matching(left, right, biadj)
    extra["matching_size"] = m.size
    if m.is_perfect():
        return m
    hall = m.hall_violator()
    nb = neighbourhood(biadj, hall)
    raise StageFailure(stage, f"filtered graph has no perfect matching ({m.size}/{len(left)})", {
        "hall_set": [left[i] for i in hall],
        "hall_neighbourhood": [right[j] for j in nb],
        "hall_indices": hall,
        "matching_size": m.size,
        "side_size": len(left),
        "biadj": biadj.astype(np.uint8),
        "left": left,
        "right": right,
    })


def _removed_per_vertex(h, keep):
    removed = h & ~keep
    return int(max(removed.sum(axis=1).max(initial=0), removed.sum(axis=0).max(initial=0)))


def _check_extendable(L, P, absorber, constants, stage):
    r, k = P.r, L.k
    a_star = [set(map(int, a)) for a in absorber.a_star]
    for p in P.star_tuples:
        if not L.is_clique(p) or any(int(p[i]) not in a_star[i] for i in range(r)):
            raise StageFailure(stage, f"star tuple {p} is not a clique on A*", {"tuple": list(p)})
    prefixes = {tuple(p) for p in P.star_tuples}
    for lvl in range(r, k):
        for q in absorber.levels.get(lvl, []):
            if tuple(q[:r]) not in prefixes:
                raise StageFailure(stage, f"absorber prefix {q[:r]} missing", {"tuple": list(q)})
    if r < k:
        thr = constants.extendable_threshold(r)
        rows = _common_rows(L, P.star_tuples)
        for t in range(r, k):
            cnt = rows[:, L.part(t)].sum(axis=1)
            bad = np.flatnonzero(cnt < thr)
            if len(bad):
                p = P.star_tuples[bad[0]]
                raise StageFailure(stage, f"tuple {p} has {cnt[bad[0]]} < {thr} common neighbours "
                                   f"in part {t}", {"tuple": list(p), "part": t})


def build_p2(L, absorber, constants, trace=None, verify=True):
    """First gradual-matching step: pair ``B_1`` with ``B_2`` through friendly edges."""
    k = L.k
    n = L.n
    m = constants.m if k > 2 else 0
    B = b_sets(L, absorber)
    size = n - k + 1 - (k - 2) * m
    if len(B[0]) != size or len(B[1]) != size:
        raise StageFailure("p2", f"B-set sizes {len(B[0])}, {len(B[1])} != {size}")
    trace = {} if trace is None else trace
    h1 = L.adj[np.ix_(B[0], B[1])].astype(bool)
    keep = _friendly_filter(L, L.adj[B[0]], B[1], B[2:], constants.edge_threshold(1))
    filt = h1 & keep
    trace.update(h1_edges=int(h1.sum()), h1_friendly_edges=int(filt.sum()),
                 h1_max_removed_per_vertex=_removed_per_vertex(h1, keep))
    mt = _match_or_fail("p2_matching", B[0].tolist(), B[1].tolist(), filt.astype(np.uint8), trace)
    tuples = [(int(a), int(b)) for a, b in mt.pairs]
    for lvl in sorted(absorber.levels):
        tuples += [(int(q[0]), int(q[1])) for q in absorber.levels[lvl]]
    star = list(range(len(tuples)))
    tuples += list(zip(_leftovers(L, absorber.a_star, 0), _leftovers(L, absorber.a_star, 1)))
    P = PerfectRSet(2, tuples, star)
    if verify:
        _check_extendable(L, P, absorber, constants, "p2_extendable")
    return P


def extend_set(L, P, absorber, constants, trace=None, verify=True):
    """Extend an extendable perfect r-set to an (r+1)-set via a friendly matching."""
    r, k = P.r, L.k
    if not 2 <= r <= k - 1:
        raise PreconditionError(f"can only extend 2 <= r <= k-1, got r={r}")
    n, m = L.n, constants.m
    B = b_sets(L, absorber)
    higher = [q for lvl in range(r + 1, k) for q in absorber.levels.get(lvl, [])]
    blocked = {tuple(q[:r]) for q in higher}
    J = [tuple(p) for p in P.star_tuples if tuple(p) not in blocked]
    right = B[r]
    size = (n - k + 1) - m * (k - 1 - r)
    if len(J) != size or len(right) != size:
        raise StageFailure(f"extend_{r}", f"side sizes {len(J)}, {len(right)} != {size}")
    trace = {} if trace is None else trace
    rows = _common_rows(L, J)
    hr = rows[:, right].astype(bool)
    keep = _friendly_filter(L, rows, right, B[r + 1:], constants.edge_threshold(r))
    filt = hr & keep
    trace.update(edges=int(hr.sum()), friendly_edges=int(filt.sum()),
                 max_removed_per_vertex=_removed_per_vertex(hr, keep))
    mt = _match_or_fail(f"extend_{r}_matching", J, right.tolist(), filt.astype(np.uint8), trace)
    tuples = [tuple(p) + (int(v),) for p, v in mt.pairs]
    tuples += [tuple(int(x) for x in q[: r + 1]) for q in higher]
    star = list(range(len(tuples)))
    rest = [P.tuples[i] for i in range(len(P.tuples)) if i not in set(P.star)]
    tuples += [tuple(p) + (v,) for p, v in zip(rest, _leftovers(L, absorber.a_star, r))]
    Q = PerfectRSet(r + 1, tuples, star)
    if verify:
        _check_extendable(L, Q, absorber, constants, f"extend_{r}_extendable")
    return Q


def packing_precondition(L, constants):
    k, n = L.k, L.n
    if len(set(L.part_sizes)) != 1:
        raise PreconditionError(f"parts must be equal, got {L.part_sizes}; reduce first")
    if n < k:
        raise PreconditionError(f"need n >= k, got n={n}, k={k}")
    if k > 2 and n - k + 1 - (k - 2) * constants.m < 1:
        raise PreconditionError(f"absorber size m={constants.m} leaves no free vertices (n={n}, k={k})")


def run_pipeline(L, constants, rng=None, retries=DEFAULT_MAX_RETRIES, verify=True):
    """Absorber + gradual matching on a prepared left graph."""
    packing_precondition(L, constants)
    k = L.k
    trace = {"attempts": []}
    rng = np.random.default_rng(rng)
    try:
        a_star = select_a_star(L, constants)
    except StageFailure as exc:
        return PackingResult("stage_failure", stage=exc.stage, diagnostic=exc.diagnostic, trace=trace)
    # with k = 2 the only freedom left for a retry is the choice of A*
    randomized = k > 2 or a_star_has_slack(L, constants)
    attempts = max(1, retries) if randomized else 1
    last = None
    for attempt in range(attempts):
        info = {}
        trace["attempts"].append(info)
        if attempt > 0:
            a_star = resample_a_star(L, constants, rng)
        try:
            absorber = build_absorber(L, a_star, constants, rng, max_retries=max(1, retries))
            info["absorber_attempts"] = absorber.attempts
            info["absorber_failures"] = absorber.trace
            info["p2"] = {}
            P = build_p2(L, absorber, constants, info["p2"], verify)
            while P.r < k:
                info[f"extend_{P.r}"] = {}
                P = extend_set(L, P, absorber, constants, info[f"extend_{P.r}"], verify)
        except StageFailure as exc:
            info["failure"] = exc.stage
            last = exc
            if exc.stage == "absorber":
                break
            continue
        cliques = [tuple(int(v) for v in c) for c in P.star_tuples]
        if not verify_packing(L, cliques):
            raise AssertionError("pipeline produced an invalid packing")
        return PackingResult("success", cliques, trace=trace)
    return PackingResult("stage_failure", stage=last.stage, diagnostic=last.diagnostic, trace=trace)


def find_clique_packing(t, pi, constants=None, rng=None, retries=DEFAULT_MAX_RETRIES,
                        mode="practical", verify=True):
    """Find ``n - k + 1`` disjoint transversal k-cliques in the left graph of ``(t, pi)``."""
    L = left_graph(t, pi)
    if constants is None:
        constants = make_constants(t.k, min(t.part_sizes), mode)
    return run_pipeline(L, constants, rng, retries, verify)
