"""Command-line entry point: ``fasclique <subcommand> ...``."""
import argparse
import csv
import json
import sys

import numpy as np

from . import tournament as tmod
from .analysis import verify_property
from .campaign import STRATEGIES, CampaignSpec, emit_report, run_campaign, strategy_order
from .constants import make_constants
from .errors import FascliqueError, ParameterError
from .oracle import brute_force_fk, enumerate_tournaments, max_transversal_packing, upper_bound
from .order import VertexOrder, left_graph
from .packing import find_clique_packing


def _write(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_overrides(items):
    out = {}
    for item in items or []:
        key, _, val = item.partition("=")
        if not val:
            raise ParameterError(f"override must look like key=value, got {item!r}")
        try:
            out[key] = float(val)
        except ValueError as exc:
            raise ParameterError(f"override {key} is not a number: {val!r}") from exc
    return out


def cmd_gen(args):
    if args.turan:
        t = tmod.sample_turan(args.n, args.k, args.seed)
    else:
        t = tmod.sample_random(args.n, args.k, args.seed)
    if args.out:
        tmod.save(t, args.out)
    else:
        sys.stdout.write(tmod.to_json(t) + "\n")
    return 0


def cmd_constants(args):
    mode = "practical" if args.practical else "theoretical"
    c = make_constants(args.k, args.n, mode, _parse_overrides(args.set) or None)
    _write(args, c.to_json())
    return 0


def cmd_pack(args):
    t = tmod.load(args.input)
    if len(set(t.part_sizes)) > 1:
        t = tmod.reduce_to_equal_parts(t)
    if args.order_file:
        with open(args.order_file) as fh:
            pi = VertexOrder.from_json(fh.read())
    else:
        pi = strategy_order(args.strategy, t, np.random.SeedSequence([args.seed, 1]))
    overrides = _parse_overrides(args.set) or None
    c = make_constants(t.k, min(t.part_sizes), args.mode, overrides)
    res = find_clique_packing(t, pi, c, rng=np.random.SeedSequence([args.seed, 2]),
                              retries=args.retries, verify=not args.no_verify)
    if args.emit_cliques:
        with open(args.emit_cliques, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"part{i}" for i in range(t.k)])
            for cl in res.cliques:
                w.writerow(cl)
    _write(args, res.to_json())
    return 0 if res.ok else 3


def cmd_verify(args):
    rep = verify_property(args.property, args.k, args.n, args.trials, args.seed,
                          args.witnesses)
    _write(args, json.dumps(rep, indent=1))
    return 0


def cmd_oracle(args):
    if args.oracle_cmd == "fk":
        t = tmod.load(args.input)
        fk, order = brute_force_fk(t, return_order=True)
        L = left_graph(t, order)
        wit = max_transversal_packing(L)
        _write(args, json.dumps({"f_k": fk, "bound": upper_bound(t),
                                 "minimizing_order": list(order.sequence),
                                 "packing": [list(c) for c in wit.witness]}, indent=1))
        return 0
    rows = ["tournament_bitmask,f_k,bound,bound_tight"]
    for mask, t in enumerate_tournaments((args.n,) * args.k):
        fk = brute_force_fk(t)
        b = upper_bound(t)
        rows.append(f"{mask},{fk},{b},{int(fk == b)}")
    _write(args, "\n".join(rows))
    return 0


def cmd_campaign(args):
    spec = CampaignSpec(args.k, args.n, args.trials, tuple(args.strategies), args.mode,
                        args.seed, args.threads, args.retries)
    rep = run_campaign(spec)
    _write(args, emit_report(rep, args.format))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base RNG seed")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("--out", help="output path (default: stdout)")

    p = argparse.ArgumentParser(prog="fasclique", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", parents=[common], help="sample a random k-partite tournament")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--n", type=int, required=True,
                   help="part size, or total vertex count with --turan")
    g.add_argument("--turan", action="store_true", help="orient the Turan graph T(n, k)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("constants", parents=[common], help="dump the pipeline constants")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--practical", action="store_true")
    c.add_argument("--set", action="append", metavar="KEY=VALUE")
    c.set_defaults(func=cmd_constants)

    pk = sub.add_parser("pack", parents=[common], help="run the clique packing pipeline")
    pk.add_argument("--input", required=True, help=".kpt or .json tournament")
    pk.add_argument("--order-file", help="JSON array of vertex ids in order")
    pk.add_argument("--strategy", choices=STRATEGIES, default="random",
                    help="order to use when no --order-file is given")
    pk.add_argument("--mode", choices=("theoretical", "practical"), default="practical")
    pk.add_argument("--retries", type=int, default=20)
    pk.add_argument("--set", action="append", metavar="KEY=VALUE")
    pk.add_argument("--no-verify", action="store_true", help="skip extendability checks")
    pk.add_argument("--emit-cliques", metavar="CSV")
    pk.set_defaults(func=cmd_pack)

    v = sub.add_parser("verify", parents=[common], help="sample random-tournament properties")
    v.add_argument("--property", type=int, choices=(1, 2, 3, 4), required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--witnesses", type=int, default=1, help="witnesses per tournament")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact computations on tiny instances")
    osub = o.add_subparsers(dest="oracle_cmd", required=True)
    of = osub.add_parser("fk", parents=[common])
    of.add_argument("--input", required=True)
    oe = osub.add_parser("exhaust", parents=[common])
    oe.add_argument("--k", type=int, required=True)
    oe.add_argument("--n", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    cp = sub.add_parser("campaign", parents=[common], help="Monte Carlo packing campaign")
    cp.add_argument("--k", type=int, required=True)
    cp.add_argument("--n", type=int, required=True)
    cp.add_argument("--trials", type=int, default=100)
    cp.add_argument("--strategies", nargs="+", default=["random"])
    cp.add_argument("--mode", choices=("theoretical", "practical"), default="practical")
    cp.add_argument("--retries", type=int, default=20)
    cp.add_argument("--format", choices=("json", "csv"), default="json")
    cp.set_defaults(func=cmd_campaign)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FascliqueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
