"""Command-line entry point: ``powercycles <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from math import comb

from . import bounds
from ._parallel import default_workers
from .cycles import CyclicPermutation, PowerCycleParams, build_power_cycle
from .enumeration import MAX_QN_N, MAX_SUBSETS, GuardError, overlap_histogram, subgraph_profiles
from .hypergraph import HypergraphError, read_file, write_file
from .lab import SCAN_HEADER, ScanConfig, parse_grid, run_scan, write_scan_csv
from .moments import MAX_SUBSET_BITS, MOMENT_MAX_N, exact_containment_probability, second_moment_exact
from .search import DEFAULT_TIMEOUT, FOUND, NOT_FOUND, contains_power_cycle
from .verify import SUITES, verify

log = logging.getLogger("powercycles")

EXIT_CODES = {FOUND: 0, NOT_FOUND: 1}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _params(args) -> PowerCycleParams:
    return PowerCycleParams(args.n, args.r, args.k)


def _warn_guard(name: str, value, default) -> None:
    if value > default:
        log.warning("%s raised from %s to %s: exact enumeration cost grows factorially", name, default, value)


def cmd_constants(args) -> int:
    r, k = args.r, args.k
    B = comb(k + r - 2, r - 1)
    try:
        C = bounds.paper_constant_C(r, k)
        c_json = {"ln": C.ln, "value": float(C)}
    except ValueError:
        c_json = None
    frac = bounds.threshold_exponent(r, k)
    _emit(
        {
            "r": r,
            "k": k,
            "C": c_json,
            "c": bounds.constant_c(r, k),
            "C_prime": bounds.constant_Cprime(r, k).to_json(),
            "threshold_exponent": f"{frac.numerator}/{frac.denominator}",
            "binom": B,
            "m": f"{B}*n",
            "max_degree": r * B,
        }
    )
    return 0


def cmd_build_cycle(args) -> int:
    params = _params(args)
    if args.perm:
        sigma = CyclicPermutation([int(x) for x in args.perm.split(",")])
    else:
        sigma = CyclicPermutation.identity(params.n)
    write_file(build_power_cycle(sigma, params), args.output)
    return 0


def cmd_overlap(args) -> int:
    _warn_guard("--max-n", args.max_n, MAX_QN_N)
    hist = overlap_histogram(None, _params(args), max_n=args.max_n, workers=args.threads)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["b", "s", "count"])
        w.writerows(hist.rows())
    return 0


def cmd_profiles(args) -> int:
    _warn_guard("--max-subsets", args.max_subsets, MAX_SUBSETS)
    params = _params(args)
    profiles = subgraph_profiles(params, args.b_max, max_subsets=args.max_subsets)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["b", "s", "v_min", "count", "p1_bound"])
        for pr in profiles:
            bound = bounds.prop_p1_bound(params.n, pr.b, pr.s, params.r, params.k)
            w.writerow([pr.b, pr.s, pr.v_min, pr.count, repr(float(bound))])
    return 0


def cmd_second_moment(args) -> int:
    _warn_guard("--max-n", args.max_n, MOMENT_MAX_N)
    report = second_moment_exact(_params(args), args.p, max_n=args.max_n, seed=args.seed, workers=args.threads)
    _emit(report.to_json())
    return 0


def cmd_exact_prob(args) -> int:
    _warn_guard("--max-bits", args.max_bits, MAX_SUBSET_BITS)
    _emit(exact_containment_probability(_params(args), args.p, max_bits=args.max_bits).to_json())
    return 0


def cmd_search(args) -> int:
    H = read_file(args.input)
    outcome = contains_power_cycle(H, args.k, timeout=args.timeout)
    _emit(outcome.to_json())
    return EXIT_CODES.get(outcome.status, 2)


def cmd_scan(args) -> int:
    config = ScanConfig(
        _params(args),
        parse_grid(args.c_grid),
        args.trials,
        seed=args.seed,
        timeout=args.timeout,
        workers=args.threads,
    )
    points = run_scan(config)
    write_scan_csv(config, points, args.out)
    return 0


def cmd_verify(args) -> int:
    report = verify(args.suite, seed=args.seed)
    _emit(report.to_json())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powercycles",
        description="Exact counts, bounds, search and Monte Carlo for powers of tight Hamilton cycles.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def nrk(p, n=True):
        if n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    def threads(p):
        p.add_argument("--threads", type=int, default=default_workers(), help="worker processes")

    p = sub.add_parser("constants", help="print the closed-form constants as JSON")
    nrk(p, n=False)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("build-cycle", help="write H_sigma in the hypergraph file format")
    nrk(p)
    p.add_argument("--perm", help="comma-separated cyclic ordering (default: identity)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build_cycle)

    p = sub.add_parser("overlap", help="exact N_sigma(b, s) histogram as CSV")
    nrk(p)
    p.add_argument("--out", required=True)
    p.add_argument("--max-n", type=int, default=MAX_QN_N)
    threads(p)
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("profiles", help="subgraph profiles of H_sigma by (b, s) as CSV")
    nrk(p)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-subsets", type=int, default=MAX_SUBSETS)
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("second-moment", help="exact E[X], E[X^2] and ratio as JSON")
    nrk(p)
    p.add_argument("--p", required=True, help="rational, e.g. 1/2")
    p.add_argument("--max-n", type=int, default=MOMENT_MAX_N)
    p.add_argument("--seed", type=int, default=0, help="seed for the sigma-independence check")
    threads(p)
    p.set_defaults(func=cmd_second_moment)

    p = sub.add_parser("exact-prob", help="exact P(X > 0) by full subset sweep as JSON")
    nrk(p)
    p.add_argument("--p", required=True, help="rational, e.g. 1/2")
    p.add_argument("--max-bits", type=int, default=MAX_SUBSET_BITS)
    p.set_defaults(func=cmd_exact_prob)

    p = sub.add_parser("search", help="decide containment of a spanning (r,k)-cycle")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scan", help="Monte Carlo containment scan over C; CSV columns: " + ",".join(SCAN_HEADER))
    nrk(p)
    p.add_argument("--c-grid", required=True, help="LO:HI:STEP or comma list")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("--out", required=True)
    threads(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run an invariant battery")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (GuardError, HypergraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
