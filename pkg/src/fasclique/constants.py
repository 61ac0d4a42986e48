"""Proof constants and the desk-scale thresholds used by the pipeline."""
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ParameterError

MU = Fraction(1, 18)
FRIENDLY_VERTEX_DIVISOR = 17

PRACTICAL_DEFAULTS = {
    "mu": MU,
    "d": 4,
    "delta": 0.25,
    "absorber_fraction": 0.02,
    "vertex_scale": 1.0,
    "clique_scale": 0.5,
    "edge_scale": 1.0,
}


def _inequalities(d, r):
    """Both conditions on ``d`` for a given ``r``, evaluated exactly."""
    d = Fraction(d)
    first = (MU - d ** (1 - 2 * r)) / (d * r + 1) > (1 - Fraction(1, 2**r)) ** int(d)
    second = (d ** (2 - 2 * r) - d ** (1 - 2 * r)) / (d + 1) > Fraction(1, 2 ** int(d))
    return first, second


def d_is_valid(d, k):
    return all(all(_inequalities(d, r)) for r in range(1, k + 1))


@lru_cache(maxsize=None)
def smallest_d(k):
    """Least ``d`` satisfying both inequality families for ``r = 1..k``."""
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    d = 2
    while not d_is_valid(d, k):
        d += 1
    return d


@dataclass
class Constants:
    k: int
    n: int
    mu: float
    rho: float
    d: int
    delta: float
    epsilon: float
    m: int
    mode: str
    thresholds: dict = field(default_factory=dict)

    def clique_threshold(self, r_prime):
        return self.thresholds["friendly_clique"][r_prime]

    def edge_threshold(self, r):
        return self.thresholds["friendly_edge"][r]

    def extendable_threshold(self, r):
        return self.thresholds["extendable"][r]

    def to_json(self):
        payload = asdict(self)
        payload["thresholds"] = {
            name: ({str(a): b for a, b in val.items()} if isinstance(val, dict) else val)
            for name, val in self.thresholds.items()
        }
        return json.dumps(payload, indent=2)


def _rho(mu, k):
    return 0.25 * float(mu) ** k * 2.0 ** (-math.comb(k, 2))


def theoretical_constants(k, n):
    if k < 2 or n < 1:
        raise ParameterError(f"need k >= 2 and n >= 1, got k={k}, n={n}")
    rho = _rho(MU, k)
    d = smallest_d(k)
    delta = min(rho / k**2, 1.0 / (2 * k * d ** (2 * k)))
    eps = delta * rho / 5
    m = math.ceil(delta * n)
    thresholds = {
        "friendly_vertex": n / FRIENDLY_VERTEX_DIVISOR,
        "friendly_clique": {rp: n / 2 ** (rp + 1) for rp in range(1, k + 1)},
        "friendly_edge": {r: n / d ** (2 * r) for r in range(1, k)},
        "extendable": {r: n / d ** (2 * r - 2) for r in range(2, k + 1)},
        "absorber_extension": delta * rho * n / 4,
    }
    return Constants(k, n, float(MU), rho, d, delta, eps, m, "theoretical", thresholds)


def practical_constants(k, n, overrides=None):
    """Desk-scale constants: same threshold shapes, workable parameter values.

    Recognised overrides: ``mu``, ``d``, ``delta``, ``absorber_fraction`` and
    the multiplicative ``vertex_scale``, ``clique_scale``, ``edge_scale``.
    """
    if k < 2 or n < 1:
        raise ParameterError(f"need k >= 2 and n >= 1, got k={k}, n={n}")
    params = dict(PRACTICAL_DEFAULTS)
    for key, val in (overrides or {}).items():
        if key not in params:
            raise ParameterError(f"unknown constants override {key!r}")
        if val is None or val <= 0:
            raise ParameterError(f"override {key} must be positive, got {val}")
        params[key] = val
    d = int(params["d"])
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {params['d']}")
    mu = params["mu"]
    delta = float(params["delta"])
    rho = _rho(mu, k)
    m = math.ceil(delta * n)
    es = params["edge_scale"]
    thresholds = {
        "friendly_vertex": params["vertex_scale"] * n / FRIENDLY_VERTEX_DIVISOR,
        "friendly_clique": {
            rp: params["clique_scale"] * n / 2 ** (rp + 1) for rp in range(1, k + 1)
        },
        "friendly_edge": {r: max(1.0, es * n / d ** (2 * r)) for r in range(1, k)},
        "extendable": {r: max(1.0, es * n / d ** (2 * r - 2)) for r in range(2, k + 1)},
        "absorber_extension": max(1, math.ceil(params["absorber_fraction"] * m)),
    }
    return Constants(k, n, float(mu), rho, d, delta, delta * rho / 5, m, "practical", thresholds)


def make_constants(k, n, mode="practical", overrides=None):
    if mode == "theoretical":
        if overrides:
            raise ParameterError("overrides only apply in practical mode")
        return theoretical_constants(k, n)
    if mode == "practical":
        return practical_constants(k, n, overrides)
    raise ParameterError(f"unknown constants mode {mode!r}")
