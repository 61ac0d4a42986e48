"""Randomised absorber: disjoint friendly cliques that can swallow awkward vertices later."""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import enumerate_cliques, friendly_clique_mask, friendly_vertices
from .errors import StageFailure

DEFAULT_ENUM_BUDGET = 10**7
DEFAULT_MAX_RETRIES = 20


@dataclass
class Absorber:
    """``levels[r]`` holds the ``m`` selected r-cliques (vertex ``i`` in part ``i``)."""

    levels: dict
    a_star: list
    attempts: int = 1
    trace: list = field(default_factory=list)

    def vertices(self):
        return [v for r in sorted(self.levels) for q in self.levels[r] for v in q]

    def vertex_set(self):
        return set(self.vertices())

    def to_json(self):
        return json.dumps({
            "levels": {str(r): [list(map(int, q)) for q in qs] for r, qs in self.levels.items()},
            "a_star": [list(map(int, a)) for a in self.a_star],
            "attempts": self.attempts,
        })

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        levels = {int(r): [tuple(q) for q in qs] for r, qs in obj["levels"].items()}
        return cls(levels, [list(a) for a in obj["a_star"]], obj.get("attempts", 1))


def select_a_star(L, constants):
    """Lowest-id ``n - k + 1`` friendly vertices of every part."""
    keep = L.n - L.k + 1
    chosen = []
    friendly = friendly_vertices(L, constants.thresholds["friendly_vertex"])
    for i, f in enumerate(friendly):
        if len(f) < keep:
            raise StageFailure(
                "a_star",
                f"part {i} has {len(f)} friendly vertices, need {keep}",
                {"part": i, "friendly": len(f), "needed": keep},
            )
        chosen.append(f[:keep])
    return chosen


def resample_a_star(L, constants, rng):
    """Uniformly random ``n - k + 1`` friendly vertices per part (sorted)."""
    keep = L.n - L.k + 1
    select_a_star(L, constants)
    friendly = friendly_vertices(L, constants.thresholds["friendly_vertex"])
    return [np.sort(rng.choice(f, size=keep, replace=False)) for f in friendly]


def a_star_has_slack(L, constants):
    keep = L.n - L.k + 1
    return any(len(f) > keep for f in friendly_vertices(L, constants.thresholds["friendly_vertex"]))


def _candidate_pool(L, a_star, r, constants, budget):
    """All friendly r-cliques on ``A*_1..A*_r``, or ``None`` if enumeration is over budget."""
    if math.prod(len(a) for a in a_star[:r]) > budget:
        return None
    cl = enumerate_cliques(L, a_star[:r])
    if len(cl) == 0:
        return cl
    return cl[friendly_clique_mask(L, cl, constants)]


def _pick_disjoint(pool, used, m, rng):
    """Sequentially take uniformly random candidates disjoint from everything taken so far."""
    picked = []
    for idx in rng.permutation(len(pool)):
        q = pool[idx]
        if any(int(v) in used for v in q):
            continue
        picked.append(tuple(int(v) for v in q))
        used.update(picked[-1])
        if len(picked) == m:
            break
    return picked


def _sample_disjoint(L, a_star, r, used, m, constants, rng, tries_per_pick=20000):
    """Rejection-sampling variant of :func:`_pick_disjoint` for huge pools."""
    picked = []
    for _ in range(m):
        free = [np.array([v for v in a.tolist() if v not in used]) for a in a_star[:r]]
        if any(len(f) == 0 for f in free):
            break
        got = None
        for _ in range(tries_per_pick):
            q = [int(rng.choice(f)) for f in free]
            if L.is_clique(q) and friendly_clique_mask(L, [q], constants)[0]:
                got = tuple(q)
                break
        if got is None:
            break
        picked.append(got)
        used.update(got)
    return picked


def absorption_counts(L, level_tuples, targets):
    """For each target vertex, how many tuples it extends to a larger clique."""
    if len(level_tuples) == 0:
        return np.zeros(len(targets), dtype=np.int64)
    q = np.asarray(level_tuples, dtype=np.int64)
    ok = np.ones((len(targets), len(q)), dtype=bool)
    tg = np.asarray(targets, dtype=np.int64)
    for j in range(q.shape[1]):
        ok &= L.adj[np.ix_(tg, q[:, j])].astype(bool)
    return ok.sum(axis=1)


def absorption_degree(L, absorber, v, r):
    if r not in absorber.levels:
        raise ValueError(f"absorber has no level {r}")
    return int(absorption_counts(L, absorber.levels[r], [v])[0])


def build_absorber(L, a_star, constants, rng=None, max_retries=DEFAULT_MAX_RETRIES,
                   budget=DEFAULT_ENUM_BUDGET):
    """Select ``m`` disjoint friendly r-cliques for each level ``r = 2..k-1``.

    Each attempt runs the levels in order, then requires every vertex of
    ``A*_{r+1}`` to extend at least ``absorber_extension`` tuples of level
    ``r``.  Failed attempts are retried with fresh randomness.
    """
    k = L.k
    if k == 2:
        return Absorber({}, [list(map(int, a)) for a in a_star], attempts=0)
    rng = np.random.default_rng(rng)
    m = constants.m
    need = constants.thresholds["absorber_extension"]
    pools = {r: _candidate_pool(L, a_star, r, constants, budget) for r in range(2, k)}
    trace = []
    last = None
    for attempt in range(1, max_retries + 1):
        used = set()
        levels = {}
        failure = None
        for r in range(2, k):
            if pools[r] is None:
                got = _sample_disjoint(L, a_star, r, used, m, constants, rng)
            else:
                got = _pick_disjoint(pools[r], used, m, rng)
            if len(got) < m:
                failure = {"attempt": attempt, "level": r, "reason": "pool_exhausted",
                           "selected": len(got), "needed": m}
                break
            levels[r] = got
        if failure is None:
            for r in range(2, k):
                counts = absorption_counts(L, levels[r], a_star[r])
                bad = np.flatnonzero(counts < need)
                if len(bad):
                    failure = {"attempt": attempt, "level": r, "reason": "absorption",
                               "vertex": int(a_star[r][bad[0]]), "degree": int(counts[bad[0]]),
                               "needed": need, "violations": int(len(bad))}
                    break
        if failure is None:
            return Absorber(levels, [list(map(int, a)) for a in a_star], attempt, trace)
        trace.append(failure)
        last = failure
    raise StageFailure("absorber", f"no valid absorber after {max_retries} attempts", last)
