"""Maximum bipartite matching with Hall-violator certificates."""
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels


@dataclass
class Matching:
    """Result of :func:`bipartite_max_matching`.

    ``match_left[i]`` is the right index matched to left index ``i`` (or -1);
    ``pairs`` lists the matched ``(left_item, right_item)`` pairs.
    """

    left: list
    right: list
    biadj: np.ndarray = field(repr=False)
    match_left: np.ndarray = field(repr=False)
    match_right: np.ndarray = field(repr=False)

    @property
    def size(self):
        return int(np.sum(self.match_left >= 0))

    @property
    def pairs(self):
        return [(self.left[i], self.right[j]) for i, j in enumerate(self.match_left.tolist()) if j >= 0]

    def is_perfect(self):
        return self.size == len(self.left) == len(self.right)

    def hall_violator(self):
        """Left indices ``R`` with ``|N(R)| < |R|``, or ``None`` if the left side saturates.

        Collected by alternating BFS from the unmatched left vertices; every
        right vertex reached is matched, so ``|N(R)| = |R| - #unmatched``.
        """
        free = np.flatnonzero(self.match_left < 0)
        if len(free) == 0:
            return None
        seen_l = set(free.tolist())
        queue = deque(free.tolist())
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(self.biadj[u]).tolist():
                w = int(self.match_right[v])
                if w >= 0 and w not in seen_l:
                    seen_l.add(w)
                    queue.append(w)
        return sorted(seen_l)

    def has_augmenting_path(self):
        """Independent BFS for an augmenting path (used as an optimality check)."""
        free_r = set(np.flatnonzero(self.match_right < 0).tolist())
        free_l = np.flatnonzero(self.match_left < 0).tolist()
        seen = set(free_l)
        queue = deque(free_l)
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(self.biadj[u]).tolist():
                if v in free_r:
                    return True
                w = int(self.match_right[v])
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return False


def neighbourhood(biadj, rows):
    rows = list(rows)
    if not rows:
        return []
    return np.flatnonzero(np.asarray(biadj)[rows].any(axis=0)).tolist()


def bipartite_max_matching(left, right, adjacency):
    """Maximum-cardinality matching between ``left`` and ``right``.

    ``adjacency`` is either a ``len(left) x len(right)`` 0/1 array or a
    predicate ``adjacency(l, r) -> bool`` on the items themselves.  The result
    is deterministic in the input order.
    """
    left, right = list(left), list(right)
    if callable(adjacency):
        biadj = np.array([[bool(adjacency(a, b)) for b in right] for a in left], dtype=np.uint8)
        biadj = biadj.reshape(len(left), len(right))
    else:
        biadj = np.ascontiguousarray(adjacency, dtype=np.uint8)
        if biadj.shape != (len(left), len(right)):
            raise ValueError(f"adjacency shape {biadj.shape} != ({len(left)}, {len(right)})")
    rows, cols = np.nonzero(biadj)
    indptr = np.zeros(len(left) + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    indptr = np.cumsum(indptr)
    if len(left) == 0 or len(right) == 0:
        ml = np.full(len(left), -1, dtype=np.int64)
        mr = np.full(len(right), -1, dtype=np.int64)
    else:
        ml, mr = kernels.hopcroft_karp(indptr, cols, len(left), len(right))
    return Matching(left, right, biadj, np.asarray(ml), np.asarray(mr))
