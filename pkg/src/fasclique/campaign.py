"""Seeded Monte Carlo campaigns over (tournament, order strategy) pairs."""
import csv
import io
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constants import make_constants
from .errors import ParameterError
from .order import VertexOrder, upper_bound_witness
from .packing import find_clique_packing
from .tournament import sample_random

STRATEGIES = ("random", "identity", "witness", "degree_sorted")
CSV_COLUMNS = ("strategy", "status", "num_cliques", "count")


@dataclass
class CampaignSpec:
    k: int
    n: int
    trials: int
    strategies: tuple = ("random",)
    mode: str = "practical"
    seed: int = 0
    threads: int = 1
    retries: int = 20

    def validate(self):
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if not self.strategies:
            raise ParameterError("at least one order strategy is required")
        bad = [s for s in self.strategies if s not in STRATEGIES]
        if bad:
            raise ParameterError(f"unknown strategies {bad}; choose from {STRATEGIES}")
        if self.k < 2 or self.n < 1:
            raise ParameterError(f"need k >= 2 and n >= 1, got k={self.k}, n={self.n}")


@dataclass
class CampaignReport:
    spec: dict
    per_strategy: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def deterministic_view(self):
        return {"spec": {k: v for k, v in self.spec.items() if k != "threads"},
                "per_strategy": self.per_strategy}


def trial_seed(base_seed, trial, strategy_index=None):
    key = [int(base_seed), int(trial)]
    if strategy_index is not None:
        key.append(int(strategy_index))
    return np.random.SeedSequence(key)


def degree_sorted_order(t):
    """Vertices by ascending out-degree, ties by id: a greedy small-FAS order."""
    out = t.orient.sum(axis=1)
    return VertexOrder(sorted(range(t.num_vertices), key=lambda v: (int(out[v]), v)))


def strategy_order(name, t, seed):
    if name == "random":
        return VertexOrder.random(t.num_vertices, seed)
    if name == "identity":
        return VertexOrder.identity(t.num_vertices)
    if name == "witness":
        return upper_bound_witness(t).order
    if name == "degree_sorted":
        return degree_sorted_order(t)
    raise ParameterError(f"unknown strategy {name!r}")


def _run_trial(args):
    spec, i = args
    t = sample_random(spec.n, spec.k, trial_seed(spec.seed, i))
    constants = make_constants(spec.k, spec.n, spec.mode)
    rows = []
    for j, name in enumerate(spec.strategies):
        pi_seed, abs_seed = trial_seed(spec.seed, i, j).spawn(2)
        start = time.perf_counter()
        res = find_clique_packing(t, strategy_order(name, t, pi_seed), constants,
                                  rng=abs_seed, retries=spec.retries)
        rows.append((name, res.status, res.stage, len(res.cliques), time.perf_counter() - start))
    return i, rows


def run_campaign(spec):
    spec.validate()
    jobs = [(spec, i) for i in range(spec.trials)]
    if spec.threads > 1:
        with ProcessPoolExecutor(max_workers=spec.threads) as pool:
            results = list(pool.map(_run_trial, jobs, chunksize=max(1, spec.trials // (4 * spec.threads))))
    else:
        results = [_run_trial(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    per = {}
    timing = {}
    for name in spec.strategies:
        hist, fails, secs = Counter(), Counter(), []
        succ = 0
        for _, rows in results:
            for sname, status, stage, count, dt in rows:
                if sname != name:
                    continue
                hist[(status, count)] += 1
                secs.append(dt)
                if status == "success":
                    succ += 1
                else:
                    fails[stage] += 1
        per[name] = {
            "trials": spec.trials,
            "successes": succ,
            "success_rate": succ / spec.trials,
            "histogram": [{"status": s, "num_cliques": c, "count": hist[(s, c)]}
                          for s, c in sorted(hist)],
            "stage_failures": dict(sorted(fails.items())),
        }
        timing[name] = {"total_s": float(sum(secs)), "mean_s": float(np.mean(secs)),
                        "max_s": float(max(secs))}
    spec_dict = {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(spec).items()}
    return CampaignReport(spec_dict, per, timing)


def emit_report(report, fmt):
    """Serialize a report; ``csv`` gives one histogram row per (strategy, status, cliques)."""
    if fmt == "json":
        return json.dumps({"spec": report.spec, "per_strategy": report.per_strategy,
                           "timing": report.timing}, indent=1, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for name in sorted(report.per_strategy):
            for row in report.per_strategy[name]["histogram"]:
                w.writerow([name, row["status"], row["num_cliques"], row["count"]])
        return buf.getvalue()
    raise ParameterError(f"unknown report format {fmt!r}")


def report_from_json(text):
    obj = json.loads(text)
    return CampaignReport(obj["spec"], obj["per_strategy"], obj.get("timing", {}))
