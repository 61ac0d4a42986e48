"""Vertex orders, left-to-right edge graphs and feedback arc set utilities."""
import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterError, PreconditionError


@dataclass(frozen=True, eq=False)
class VertexOrder:
    """A permutation of the vertices; ``sequence[i]`` is the vertex at position ``i``."""

    sequence: tuple

    def __post_init__(self):
        seq = tuple(int(v) for v in self.sequence)
        if sorted(seq) != list(range(len(seq))):
            raise ParameterError("order must list every vertex 0..N-1 exactly once")
        object.__setattr__(self, "sequence", seq)

    @property
    def positions(self):
        pos = np.empty(len(self.sequence), dtype=np.int64)
        pos[list(self.sequence)] = np.arange(len(self.sequence))
        return pos

    def __len__(self):
        return len(self.sequence)

    def __eq__(self, other):
        return isinstance(other, VertexOrder) and self.sequence == other.sequence

    def __hash__(self):
        return hash(self.sequence)

    def reversed(self):
        return VertexOrder(self.sequence[::-1])

    def to_json(self):
        return json.dumps(list(self.sequence))

    @classmethod
    def from_json(cls, text):
        try:
            seq = json.loads(text)
        except ValueError as exc:
            raise ParameterError(f"order file is not JSON: {exc}") from exc
        if not isinstance(seq, list):
            raise ParameterError("order file must hold a JSON array of vertex ids")
        return cls(seq)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def random(cls, n, rng):
        return cls(np.random.default_rng(rng).permutation(n))


@dataclass(frozen=True, eq=False)
class LeftGraph:
    """Undirected k-partite graph of the edges an order sends left to right."""

    adj: np.ndarray = field(repr=False)
    order: VertexOrder
    part_sizes: tuple
    tournament: object = field(default=None, repr=False)

    @property
    def k(self):
        return len(self.part_sizes)

    @property
    def n(self):
        """Common part size; only meaningful for equal parts."""
        return min(self.part_sizes)

    @property
    def part_starts(self):
        return np.concatenate([[0], np.cumsum(self.part_sizes)]).astype(np.int64)

    @property
    def vertex_part(self):
        return np.repeat(np.arange(self.k), self.part_sizes)

    def part(self, i):
        s = self.part_starts
        return np.arange(s[i], s[i + 1])

    def degrees_by_part(self):
        """``(N, k)`` array: number of L-neighbours of each vertex in each part."""
        s = self.part_starts
        return np.add.reduceat(self.adj.astype(np.int64), s[:-1], axis=1)

    def num_edges(self):
        return int(self.adj.sum()) // 2

    def is_clique(self, vertices):
        vs = list(vertices)
        sub = self.adj[np.ix_(vs, vs)]
        return bool(np.all(sub + np.eye(len(vs), dtype=np.uint8)))

    def directed_edges(self):
        """Left-to-right edges as ``(earlier, later)`` pairs."""
        us, vs = np.nonzero(np.triu(self.adj))
        pos = self.order.positions
        out = [(u, v) if pos[u] < pos[v] else (v, u) for u, v in zip(us.tolist(), vs.tolist())]
        return sorted(out)


def left_graph(t, pi):
    """The graph L_pi(T): tournament edges ``(u, v)`` with ``u`` before ``v``."""
    if not isinstance(pi, VertexOrder):
        pi = VertexOrder(pi)
    if len(pi) != t.num_vertices:
        raise ParameterError(f"order has {len(pi)} vertices, tournament has {t.num_vertices}")
    adj = kernels.left_adjacency(t.orient, pi.positions)
    adj.setflags(write=False)
    return LeftGraph(adj, pi, t.part_sizes, t)


def left_graph_from_adjacency(adj, part_sizes, order=None):
    """Wrap an arbitrary symmetric k-partite adjacency (tests, oracles)."""
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    n = adj.shape[0]
    if order is None:
        order = VertexOrder.identity(n)
    return LeftGraph(adj, order, tuple(int(s) for s in part_sizes))


def _is_acyclic(m):
    alive = np.ones(m.shape[0], dtype=bool)
    indeg = m.sum(axis=0).astype(np.int64)
    while alive.any():
        src = alive & (indeg == 0)
        if not src.any():
            return False
        alive &= ~src
        indeg -= m[src].sum(axis=0)
    return True


def _edge_matrix(t, edges):
    n = t.num_vertices
    m = np.zeros((n, n), dtype=np.int64)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or not t.orient[u, v]:
            raise ParameterError(f"({u}, {v}) is not an edge of the tournament")
        m[u, v] = 1
    return m


def is_feedback_arc_set(t, edges):
    """True iff deleting ``edges`` from ``t`` leaves an acyclic digraph."""
    rest = t.orient.astype(np.int64) - _edge_matrix(t, edges)
    return _is_acyclic(rest)


def minimalize_fas(t, edges):
    """Greedily drop edges (ascending ``(u, v)``) while the set stays a FAS."""
    removed = _edge_matrix(t, edges)
    rest = t.orient.astype(np.int64) - removed
    if not _is_acyclic(rest):
        raise PreconditionError("input edge set is not a feedback arc set")
    keep = []
    for u, v in sorted({(int(a), int(b)) for a, b in edges}):
        rest[u, v] = 1
        if _is_acyclic(rest):
            continue
        rest[u, v] = 0
        keep.append((u, v))
    return keep


@dataclass(frozen=True)
class Witness:
    order: VertexOrder
    excluded: list
    fas: list
    paired_parts: list


def upper_bound_witness(t):
    """Order whose left graph isolates k-1 smallest-part vertices from one part each.

    ``u_i`` (the i-th vertex of the first smallest part) is placed between its
    out-neighbours and in-neighbours in the i-th remaining part, so every edge
    between them runs right to left.  At most ``s - k + 1`` transversal cliques
    survive in the resulting left graph.
    """
    k = t.k
    s = min(t.part_sizes)
    if s < k - 1:
        raise PreconditionError(f"smallest part has {s} < k-1 = {k - 1} vertices")
    small = t.part_sizes.index(s)
    others = [i for i in range(k) if i != small]
    us = t.part(small)[: k - 1].tolist()
    seq, placed = [], set()
    for u, p in zip(us, others):
        block = t.part(p)
        outs = [int(x) for x in block if t.orient[u, x]]
        ins = [int(x) for x in block if t.orient[x, u]]
        seq += outs + [u] + ins
        placed.update(outs + ins + [u])
    seq += [v for v in range(t.num_vertices) if v not in placed]
    star = np.zeros_like(t.orient, dtype=bool)
    for u, p in zip(us, others):
        star[u, t.part(p)] = True
        star[t.part(p), u] = True
    us_, vs_ = np.nonzero(t.orient.astype(bool) & ~star)
    fas = list(zip(us_.tolist(), vs_.tolist()))
    return Witness(VertexOrder(seq), us, fas, others)


def witness_isolates(t, w):
    """Post-hoc check: no left-graph edge joins ``u_i`` to its paired part."""
    lg = left_graph(t, w.order)
    return all(not lg.adj[u, t.part(p)].any() for u, p in zip(w.excluded, w.paired_parts))
