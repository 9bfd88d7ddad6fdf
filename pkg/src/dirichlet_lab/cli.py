"""dlab: reproducible desk-scale experiments over the sieve, series, and
norm machinery, reported as json, csv, or plot-ready columns."""

from __future__ import annotations

import argparse
import math
import sys

from . import arith, asymptotics, harness
from . import dirichlet as dl


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _ints(text: str) -> list[int]:
    return [int(float(tok)) for tok in text.split(",") if tok]


def _lognums(text: str) -> list[float]:
    """Accept e<k> for e^k alongside plain floats: 'e3,e4,20.1'."""
    out = []
    for tok in text.split(","):
        if not tok:
            continue
        if tok.startswith("e") and tok[1:].replace(".", "", 1).isdigit():
            out.append(math.e ** float(tok[1:]))
        else:
            out.append(float(tok))
    return out


def _complexes(text: str) -> list[complex]:
    return [complex(tok) for tok in text.split(",") if tok]


def _emit(report, args) -> None:
    if args.out == "-":
        harness.emit(report, args.format, sys.stdout)
    else:
        harness.emit(report, args.format, args.out)


def _phi_from_args(args) -> dl.DirichletPoly:
    if args.phi:
        with open(args.phi) as fh:
            return dl.poly_from_json(fh.read())
    if args.c1 is None:
        raise SystemExit("need either --phi FILE or --c1 (with optional --higher)")
    higher = _complexes(args.higher) if args.higher else []
    return dl.DirichletPoly.from_coeffs([complex(args.c1)] + higher)


def _add_global_args(parser, *, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, help="root seed for all randomness",
                        **({"default": d} if suppress else {"default": 0}))
    parser.add_argument("--out", help="output path, or - for stdout",
                        **({"default": d} if suppress else {"default": "-"}))
    parser.add_argument("--format", choices=("json", "csv", "plotdata"),
                        **({"default": d} if suppress else {"default": "json"}))
    parser.add_argument("--config",
                        help="key=value file supplying defaults (flags still win)",
                        **({"default": d} if suppress else {"default": None}))


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    # globals live on the main parser with real defaults and on every
    # subparser with SUPPRESS defaults, so they are accepted on either side
    # of the subcommand and explicit uses always win
    common = argparse.ArgumentParser(add_help=False)
    _add_global_args(common, suppress=True)
    parser = argparse.ArgumentParser(prog="dlab", description=__doc__)
    _add_global_args(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    p = sub.add_parser("sieve", help="build a factor table and cache it", parents=[common])
    p.add_argument("--limit", type=float, required=True)
    p.add_argument("--cache", required=True)
    subparsers["sieve"] = p

    p = sub.add_parser("avg-order", help="average order of Omega(n)^alpha", parents=[common])
    p.add_argument("--limits", type=_ints, default=[10**4, 10**5, 10**6, 10**7])
    p.add_argument("--alphas", type=_floats, default=[1.0, 2.0])
    p.add_argument("--iter-log-j", type=int, default=0,
                   help="with J >= 1, sum (log_J^+ Omega(n))^alpha instead of Omega^alpha")
    subparsers["avg-order"] = p

    p = sub.add_parser("nk", help="Omega-class counts vs the product-formula predictor", parents=[common])
    p.add_argument("--limit", type=float, default=1e7)
    p.add_argument("--k", type=_ints, default=[2, 3, 4])
    p.add_argument("--prime-cutoff", type=float, default=1e6)
    subparsers["nk"] = p

    p = sub.add_parser("ek", help="normalized prime-factor-count statistics vs the normal law", parents=[common])
    p.add_argument("--limit", type=float, default=1e6)
    p.add_argument("--n-min", type=int, default=arith.EK_N_MIN)
    p.add_argument("--ks-tol", type=float, default=0.10)
    subparsers["ek"] = p

    p = sub.add_parser("lemma32", help="singular weight integral vs its asymptotic", parents=[common])
    p.add_argument("--logn", type=_lognums, default=_lognums("e3,e4,e5,e6"))
    p.add_argument("--alpha", type=_floats, default=[1.0])
    p.add_argument("--j", type=_ints, default=[2])
    p.add_argument("--tol-const", type=float, default=5.0)
    subparsers["lemma32"] = p

    p = sub.add_parser("embed", help="coefficient-norm to half-plane-norm embedding", parents=[common])
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--length", type=int, default=256)
    p.add_argument("--radial", type=int, default=64)
    p.add_argument("--angular", type=int, default=128)
    subparsers["embed"] = p

    p = sub.add_parser("compose", help="composition operator norm ratios", parents=[common])
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--length", type=int, default=256)
    p.add_argument("--c1", type=complex, default=complex(1.5))
    p.add_argument("--higher", default="0.25")
    p.add_argument("--iterate", type=int, default=1)
    subparsers["compose"] = p

    p = sub.add_parser("subord", help="disk self-map domination experiment", parents=[common])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--degree", type=int, default=24)
    p.add_argument("--radial", type=int, default=48)
    p.add_argument("--angular", type=int, default=256)
    subparsers["subord"] = p

    p = sub.add_parser("gh-check", help="grid heuristic for the mapping condition", parents=[common])
    p.add_argument("--phi", default=None, help="json coefficient file")
    p.add_argument("--c1", type=complex, default=None)
    p.add_argument("--higher", default=None)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--grid-n", type=int, default=501)
    subparsers["gh-check"] = p

    return parser, subparsers


def _apply_config(path: str, parser, subparsers) -> None:
    overrides = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SystemExit(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            overrides[key.strip().replace("-", "_")] = value.strip()
    for sp in [parser, *subparsers.values()]:
        for action in sp._actions:
            if action.dest in overrides and action.option_strings:
                raw = overrides[action.dest]
                action.default = action.type(raw) if action.type else raw


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, subparsers = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config:
        _apply_config(known.config, parser, subparsers)
    args = parser.parse_args(argv)

    if args.command == "sieve":
        limit = int(args.limit)
        import time

        t0 = time.perf_counter()
        table = arith.build_factor_table(limit)
        arith.save_cache(table, args.cache)
        import os

        report = harness.ExperimentReport(
            experiment="sieve",
            params={"limit": limit, "cache": str(args.cache)},
            metrics=[
                harness.Metric("limit", float(limit)),
                harness.Metric("max_omega", float(table.omega.max())),
                harness.Metric("cache_bytes", float(os.path.getsize(args.cache))),
            ],
        )
        report.walltime_ms = (time.perf_counter() - t0) * 1000.0
    elif args.command == "avg-order":
        if args.iter_log_j >= 1:
            if len(args.alphas) != 1:
                raise SystemExit("--iter-log-j takes a single --alphas value")
            report = harness.run_avg_order_iterlog(args.limits, args.alphas[0], args.iter_log_j)
        else:
            report = harness.run_avg_order(args.limits, args.alphas)
    elif args.command == "nk":
        cfg = asymptotics.NuProductConfig(prime_cutoff=int(args.prime_cutoff))
        report = harness.run_nk_compare(int(args.limit), args.k, cfg=cfg)
    elif args.command == "ek":
        report = harness.run_ek(int(args.limit), n_min=args.n_min, ks_tol=args.ks_tol)
    elif args.command == "lemma32":
        report = harness.run_lemma32(args.logn, args.alpha, args.j, tol_const=args.tol_const)
    elif args.command == "embed":
        report = harness.run_embedding(
            args.j, args.alpha, args.trials, args.length, args.seed,
            radial=args.radial, angular=args.angular,
        )
    elif args.command == "compose":
        higher = tuple(_complexes(args.higher)) if args.higher else ()
        fixture = harness.GhFixture(c1=complex(args.c1), higher=higher)
        report = harness.run_composition(
            fixture, args.j, args.alpha, args.trials, args.length, args.seed,
            iterate=args.iterate,
        )
    elif args.command == "subord":
        report = harness.run_subordination(
            args.trials, args.alpha, args.j, args.seed,
            radial=args.radial, angular=args.angular, degree=args.degree,
        )
    elif args.command == "gh-check":
        report = harness.gh_membership_check(
            _phi_from_args(args), epsilon=args.epsilon, t_max=args.t_max, grid_n=args.grid_n
        )
    else:  # pragma: no cover
        raise SystemExit(f"unknown command {args.command!r}")

    _emit(report, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
