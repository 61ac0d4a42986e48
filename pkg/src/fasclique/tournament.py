"""k-partite tournaments: representation, random generation and I/O."""
import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, ParameterError, PreconditionError

MAGIC = b"KPT1"


@dataclass(frozen=True, eq=False)
class Tournament:
    """Orientation of a complete multipartite graph.

    Vertices are ``0..N-1`` with part ``i`` occupying the contiguous id range
    ``part_starts[i]:part_starts[i+1]``.  ``orient[u, v] == 1`` iff ``u -> v``;
    same-part entries are zero.
    """

    part_sizes: tuple
    orient: np.ndarray = field(repr=False)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.part_sizes)
        if len(sizes) < 2 or min(sizes) < 1:
            raise ParameterError(f"need k >= 2 parts of size >= 1, got {sizes}")
        object.__setattr__(self, "part_sizes", sizes)
        orient = np.ascontiguousarray(self.orient, dtype=np.uint8)
        n = sum(sizes)
        if orient.shape != (n, n):
            raise ParameterError(f"orientation matrix must be {n}x{n}, got {orient.shape}")
        cross = ~self.same_part_mask()
        total = orient + orient.T
        if np.any(total[cross] != 1) or np.any(orient[~cross]):
            raise ParameterError("orientation must pick exactly one direction per cross-part pair")
        orient.setflags(write=False)
        object.__setattr__(self, "orient", orient)

    @property
    def k(self):
        return len(self.part_sizes)

    @property
    def num_vertices(self):
        return int(sum(self.part_sizes))

    @property
    def part_starts(self):
        return np.concatenate([[0], np.cumsum(self.part_sizes)]).astype(np.int64)

    @property
    def vertex_part(self):
        return np.repeat(np.arange(self.k), self.part_sizes)

    def part(self, i):
        s = self.part_starts
        return np.arange(s[i], s[i + 1])

    def same_part_mask(self):
        vp = np.repeat(np.arange(len(self.part_sizes)), self.part_sizes)
        return vp[:, None] == vp[None, :]

    def has_edge(self, u, v):
        return bool(self.orient[u, v])

    def edges(self):
        """All directed edges ``(u, v)`` in ascending ``(u, v)`` order."""
        us, vs = np.nonzero(self.orient)
        return list(zip(us.tolist(), vs.tolist()))

    def cross_pairs(self):
        """Cross-part pairs ``(i, j)`` with ``i < j`` in row-major order."""
        iu, ju = np.triu_indices(self.num_vertices, 1)
        vp = self.vertex_part
        keep = vp[iu] != vp[ju]
        return iu[keep], ju[keep]

    def __eq__(self, other):
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.part_sizes == other.part_sizes and np.array_equal(self.orient, other.orient)

    def __hash__(self):
        return hash((self.part_sizes, self.orient.tobytes()))


def _cross_pairs(part_sizes):
    n = sum(part_sizes)
    vp = np.repeat(np.arange(len(part_sizes)), part_sizes)
    iu, ju = np.triu_indices(n, 1)
    keep = vp[iu] != vp[ju]
    return iu[keep], ju[keep]


def from_bits(part_sizes, bits):
    """Build a tournament from one bit per cross pair (1 means ``i -> j``, ``i < j``)."""
    part_sizes = tuple(int(s) for s in part_sizes)
    iu, ju = _cross_pairs(part_sizes)
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.shape != iu.shape:
        raise ParameterError(f"expected {len(iu)} orientation bits, got {bits.size}")
    n = sum(part_sizes)
    orient = np.zeros((n, n), dtype=np.uint8)
    orient[iu, ju] = bits
    orient[ju, iu] = 1 - bits
    return Tournament(part_sizes, orient)


def to_bits(t):
    iu, ju = t.cross_pairs()
    return t.orient[iu, ju].copy()


def sample_tournament(part_sizes, seed):
    """Uniformly random orientation of the complete multipartite graph."""
    part_sizes = tuple(int(s) for s in part_sizes)
    if len(part_sizes) < 2 or min(part_sizes) < 1:
        raise ParameterError(f"need k >= 2 parts of size >= 1, got {part_sizes}")
    rng = np.random.default_rng(seed)
    iu, _ = _cross_pairs(part_sizes)
    return from_bits(part_sizes, rng.integers(0, 2, size=len(iu), dtype=np.uint8))


def sample_random(n, k, seed):
    """A tournament from R(n, k): ``k`` parts of ``n`` vertices each."""
    if n < 1 or k < 2:
        raise ParameterError(f"need n >= 1 and k >= 2, got n={n}, k={k}")
    return sample_tournament((n,) * k, seed)


def turan_part_sizes(N, k):
    if k < 2 or N < k:
        raise ParameterError(f"need k >= 2 and N >= k, got N={N}, k={k}")
    q, rem = divmod(N, k)
    return tuple([q + 1] * rem + [q] * (k - rem))


def sample_turan(N, k, seed):
    """Random orientation of the Turan graph T(N, k); larger parts come first."""
    return sample_tournament(turan_part_sizes(N, k), seed)


def induced(t, vertices):
    """Sub-tournament on ``vertices`` (kept in ascending order, parts renumbered)."""
    vertices = np.sort(np.asarray(vertices, dtype=np.int64))
    vp = t.vertex_part[vertices]
    sizes = [int(np.sum(vp == i)) for i in range(t.k)]
    sizes = [s for s in sizes if s > 0]
    return Tournament(tuple(sizes), t.orient[np.ix_(vertices, vertices)])


def reduce_to_equal_parts(t):
    """Drop the last vertex of every oversized part so all parts match the smallest."""
    lo, hi = min(t.part_sizes), max(t.part_sizes)
    if hi - lo > 1:
        raise PreconditionError(f"part sizes differ by {hi - lo} > 1: {t.part_sizes}")
    if hi == lo:
        return t
    starts = t.part_starts
    keep = np.concatenate([np.arange(starts[i], starts[i] + lo) for i in range(t.k)])
    return induced(t, keep)


def neighbors(t, v, sign, part):
    """Out- (``sign='out'``) or in-neighbours of ``v`` inside part ``part``."""
    if sign not in ("out", "in", "+", "-"):
        raise ParameterError(f"sign must be 'out' or 'in', got {sign!r}")
    ids = t.part(part)
    row = t.orient[v, ids] if sign in ("out", "+") else t.orient[ids, v]
    return set(ids[row.astype(bool)].tolist())


# --------------------------------------------------------------------------
# serialization


def serialize(t):
    """Binary ``.kpt`` encoding.

    ``b"KPT1"``, ``k`` as little-endian u32, ``k`` part sizes as u32, then one
    bit per cross-part pair ``(i, j)``, ``i < j``, row-major, MSB-first within
    each byte, zero padded.  A set bit means ``i -> j``.
    """
    head = MAGIC + struct.pack(f"<{t.k + 1}I", t.k, *t.part_sizes)
    return head + np.packbits(to_bits(t)).tobytes()


def deserialize(data):
    data = bytes(data)
    if len(data) < 8:
        raise FormatError("stream too short for header", len(data))
    if data[:4] != MAGIC:
        raise FormatError(f"bad magic {data[:4]!r}", 0)
    (k,) = struct.unpack_from("<I", data, 4)
    if k < 2:
        raise FormatError(f"k must be >= 2, got {k}", 4)
    end = 8 + 4 * k
    if len(data) < end:
        raise FormatError(f"truncated part-size table, need {end} bytes", len(data))
    sizes = struct.unpack_from(f"<{k}I", data, 8)
    if min(sizes) < 1:
        raise FormatError("part sizes must be positive", 8 + 4 * sizes.index(min(sizes)))
    n = sum(sizes)
    num_pairs = (n * n - sum(s * s for s in sizes)) // 2
    nbytes = (num_pairs + 7) // 8
    if len(data) != end + nbytes:
        off = min(len(data), end + nbytes)
        raise FormatError(
            f"expected {nbytes} orientation bytes for {num_pairs} pairs, got {len(data) - end}", off
        )
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8, offset=end))
    if bits[num_pairs:].any():
        raise FormatError("nonzero padding bits", len(data) - 1)
    return from_bits(sizes, bits[:num_pairs])


def to_json(t):
    payload = {
        "magic": MAGIC.decode(),
        "k": t.k,
        "part_sizes": list(t.part_sizes),
        "bits": "".join(map(str, to_bits(t).tolist())),
    }
    return json.dumps(payload, indent=1)


def from_json(text):
    try:
        obj = json.loads(text)
        if obj.get("magic") != MAGIC.decode():
            raise FormatError(f"bad magic {obj.get('magic')!r}")
        sizes = obj["part_sizes"]
        if obj["k"] != len(sizes):
            raise FormatError("k does not match part_sizes length")
        bits = [int(c) for c in obj["bits"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed JSON tournament: {exc}") from exc
    if any(b not in (0, 1) for b in bits):
        raise FormatError("bits must be 0/1")
    return from_bits(sizes, bits)


def load(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if str(path).endswith(".json"):
        return from_json(data.decode())
    return deserialize(data)


def save(t, path):
    if str(path).endswith(".json"):
        with open(path, "w") as fh:
            fh.write(to_json(t))
    else:
        with open(path, "wb") as fh:
            fh.write(serialize(t))
