"""ratprog command line: one verb per library operation, JSON (default) or CSV on stdout.

Exit status is 0 on success, 2 for usage and input errors (bad flags,
unparsable expressions, dependent F and G), 1 for runtime failures and for
verify runs that find a violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import harness
from .errors import (
    BoundViolation,
    DependentInput,
    DivisionByZeroFunction,
    ExpressionSyntaxError,
    NotPrime,
    RatProgError,
)
from .fp_arith import as_prime, primes_in_range
from .goodprime import is_good_prime
from .harness import rng_for, random_set, random_sign_function, records_to_csv
from .progression import count_progressions_in_set, dual_function, kernel_table, lambda_counting, verify_pet_inequality
from .ratfield import build_stratification_bundle, parse_rational_function
from .ratfield.rational import check_linear_independence
from .roth import count_points, diagonal_lower_bound, stratify_points, variety_size
from .spectral import GridFunction, csum, level_set_split, norm, read_grid_csv

DUALITY_RTOL = 1e-9


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- flag parsing

def _expr(text: str):
    return parse_rational_function(text)


def _prime_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"--p-range expects LO..HI, got {text!r}")
    try:
        return primes_in_range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise UsageError(f"--p-range expects integers, got {text!r}") from exc


def _prime_list(args) -> list[int]:
    if args.p_range is not None:
        primes = _prime_range(args.p_range)
    elif args.p is not None:
        primes = [int(x) for x in str(args.p).split(",") if x.strip()]
    else:
        raise UsageError("give --p or --p-range")
    for q in primes:
        as_prime(q)
    return primes


def _single_prime(args) -> int:
    primes = _prime_list(args)
    if len(primes) != 1:
        raise UsageError("this command takes a single prime via --p")
    return primes[0]


def _good_only(F, G, primes, explicit: bool) -> list[int]:
    """Drop bad primes from a --p-range with a notice; explicit --p lists are kept as given."""
    if explicit:
        return primes
    kept = []
    for q in primes:
        verdict = is_good_prime(F, G, q)
        if verdict:
            kept.append(q)
        else:
            print(f"skipping p = {q}: " + "; ".join(verdict.reasons), file=sys.stderr)
    return kept


def _read_set(path) -> list[int]:
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(int(line))
    return out


def _grid_function(text: str, p: int, seed: int, slot: int) -> GridFunction:
    if text == "ones":
        return GridFunction.ones(p)
    if text == "delta0":
        return GridFunction.delta(p, 0)
    if text.startswith("indicator:"):
        return GridFunction.indicator(p, _read_set(text.split(":", 1)[1]))
    if text in ("random:±1", "random:pm1"):
        return random_sign_function(p, rng_for(seed, p, slot))
    if Path(text).is_file():
        return read_grid_csv(text, p)
    raise UsageError(f"unknown function {text!r}: use ones, delta0, indicator:<file>, random:pm1 or a CSV path")


def _triple(args, p: int) -> list[GridFunction]:
    return [_grid_function(s, p, args.seed, k) for k, s in enumerate((args.f0, args.f1, args.f2))]


def _random_triple(seed: int, p: int, trial: int) -> list[GridFunction]:
    rng = rng_for(seed, p, trial)
    return [random_sign_function(p, rng) for _ in range(3)]


# ---------------------------------------------------------------- output

def _cx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _emit(args, payload, rows=None) -> None:
    if args.format == "csv":
        if rows is None:
            rows = payload if isinstance(payload, list) else [payload]
        sys.stdout.write(records_to_csv(rows))
    else:
        sys.stdout.write(json.dumps(payload) + "\n")


# ---------------------------------------------------------------- verbs

def cmd_lambda(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    p = _single_prime(args)
    value = lambda_counting(F, G, *_triple(args, p))
    _emit(args, {"value": _cx(value)}, [_cx(value)])
    return 0


def cmd_count(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    p = _single_prime(args)
    if args.set is not None:
        A = _read_set(args.set)
    elif args.density is not None:
        A = random_set(p, args.density, rng_for(args.seed, p, 0, harness.STREAM_SET))
    else:
        raise UsageError("count needs --set or --density")
    _emit(args, {"prime": p, "size": len(set(A)), "count": count_progressions_in_set(F, G, A, p)})
    return 0


def cmd_kernel(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    p = _single_prime(args)
    K = kernel_table(F, G, p)
    rows = [{"n1": a, "n2": b, **_cx(K.entries[a, b])} for a in range(p) for b in range(p)]
    payload = {"prime": p, "excluded_count": K.excluded_count,
               "entries": [[_cx(z) for z in row] for row in K.entries]}
    _emit(args, payload, rows)
    return 0


def _check_pair(F, G):
    if not check_linear_independence(F, G):
        raise DependentInput(f"1, {F}, {G} are linearly dependent over Q")


def cmd_roth_count(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    _check_pair(F, G)
    primes = _good_only(F, G, _prime_list(args), args.p_range is None)
    out = []
    for q in primes:
        rec = count_points(F, G, q, method=args.method, threads=args.threads)
        rec["diagonal_lower_bound"] = diagonal_lower_bound(F, G, q)
        out.append(rec)
    _emit(args, out[0] if len(out) == 1 and args.p_range is None else out, out)
    return 0


def cmd_stratify(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    _check_pair(F, G)
    primes = _good_only(F, G, _prime_list(args), args.p_range is None)
    out, rows = [], []
    for q in primes:
        start = time.perf_counter()
        s = stratify_points(F, G, q, threads=args.threads)
        ms = round((time.perf_counter() - start) * 1000.0, 3)
        out.append({"prime": q, "method": "staged", "count": s.total, "strata": s.as_dict(), "wall_time_ms": ms})
        rows.append({"prime": q, **s.as_dict(), "wall_time_ms": ms})
    _emit(args, out[0] if len(out) == 1 and args.p_range is None else out, rows)
    return 0


def cmd_slope(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    _check_pair(F, G)
    primes = _good_only(F, G, _prime_list(args), args.p_range is None)
    fit = harness.slope_regression(F, G, primes, threads=args.threads)
    payload = {"primes": list(fit.primes), "counts": list(fit.counts), "slope": fit.slope,
               "constant": fit.constant, "residual": fit.residual}
    _emit(args, payload, [{"prime": q, "count": c} for q, c in zip(fit.primes, fit.counts)])
    return 0


def cmd_verify(args) -> int:
    what = args.what
    F = _expr(args.F)
    G = _expr(args.G) if args.G is not None else None
    if what == "determinant":
        if G is None:
            raise UsageError("verify determinant needs --G")
        b = build_stratification_bundle(F, G, verify_determinant=False)
        checks = {"determinant": b.determinant_identity_holds(), "dtilde": b.dtilde_identity_holds(),
                  "etilde": b.etilde_identity_holds()}
        ok = all(checks.values())
        _emit(args, {"F": str(F), "G": str(G), "checks": checks, "holds": ok})
        return 0 if ok else 1
    if G is None:
        raise UsageError(f"verify {what} needs --G")
    _check_pair(F, G)
    p = _single_prime(args)
    records = []
    for trial in range(args.trials):
        fs = _random_triple(args.seed, p, trial)
        rec = {"prime": p, "trial": trial, "seed": args.seed}
        if what == "pet":
            r = verify_pet_inequality(F, G, *fs, variety_size(F, G, p))
            rec.update(lhs=r.lhs, rhs=r.rhs, y_count=r.y_count, ratio=r.ratio, holds=r.holds)
        elif what == "duality":
            D = dual_function(F, G, fs[1], fs[2])
            lhs = csum(fs[0].values * D.values) / p
            lam = lambda_counting(F, G, *fs)
            err = abs(lhs - lam)
            scale = max(abs(lam), norm(fs[0], 2) * norm(fs[1], 2) * norm(fs[2], 2))
            rec.update(dual_pairing=_cx(lhs), lambda_value=_cx(lam), error=err,
                       holds=err <= DUALITY_RTOL * scale)
        elif what == "split":
            eps = args.epsilon if args.epsilon is not None else p**-0.1
            try:
                s = level_set_split(fs[0], eps)
                rec.update(epsilon=eps, g_l1=norm(s.g, 1), g_l1_bound=s.g_l1_bound, h_l4=norm(s.h, 4),
                           h_l4_bound=s.h_l4_bound, holds=True)
            except BoundViolation as exc:
                rec.update(epsilon=eps, error=str(exc), holds=False)
        elif what == "chain":
            r = harness.proof_chain_report(F, G, *fs, epsilon=args.epsilon)
            rec.update({k: v for k, v in r.as_dict().items() if k != "checks"})
            rec["checks"] = r.checks
        records.append(rec)
    violations = sum(1 for r in records if not r["holds"])
    summary = {"trials": len(records), "violations": violations}
    if what == "pet" and records:
        summary["max_ratio"] = max(r["ratio"] for r in records)
    if what == "chain" and records:
        summary["max_fraction_of_bound"] = max(
            (r["deviation"] / r["bound_total"]) if r["bound_total"] > 0 else 0.0 for r in records)
    report = harness.make_report(f"verify-{what}", {"F": str(F), "G": str(G), "prime": p, "trials": args.trials,
                                                    "epsilon": args.epsilon}, args.seed, records, summary)
    _emit(args, report, records)
    return 1 if violations else 0


def cmd_sweep(args) -> int:
    F = _expr(args.F)
    if args.kind == "base":
        if args.R is None:
            raise UsageError("sweep base needs --R")
        R = _expr(args.R)
        sweep = harness.base_constant_sweep(F, R, _prime_list(args), args.trials, args.seed, threads=args.threads)
        report = sweep.report()
    else:
        if args.G is None:
            raise UsageError(f"sweep {args.kind} needs --G")
        G = _expr(args.G)
        _check_pair(F, G)
        primes = _good_only(F, G, _prime_list(args), args.p_range is None)
        if args.kind == "main":
            density = 0.5 if args.density is None else float(args.density)
            report = harness.main_theorem_sweep(F, G, primes, args.trials, density, args.seed,
                                                threads=args.threads).report()
        else:
            text = args.density if args.density is not None else "0.05,0.1,0.2,0.3,0.5,0.7,0.9"
            densities = [float(d) for d in str(text).split(",")]
            report = harness.density_probe(F, G, primes, densities, args.trials, args.seed, threads=args.threads)
    _emit(args, report, report["records"])
    return 0


def cmd_extremal(args) -> int:
    F, G = _expr(args.F), _expr(args.G)
    _check_pair(F, G)
    p = _single_prime(args)
    r = harness.extremal_search(F, G, p, strategy=args.strategy, restarts=args.restarts, seed=args.seed)
    payload = {"prime": p, "strategy": r.strategy, "seed": args.seed, "restarts": args.restarts, "size": r.size,
               "set": list(r.members), "verified": r.verified, "trivial_only": r.trivial_only,
               "restart_sizes": list(r.restart_sizes)}
    _emit(args, payload)
    return 0 if r.verified else 1


# ---------------------------------------------------------------- parser

def _density(text: str):
    # sweep density takes a comma list; validate each entry here
    for d in text.split(","):
        v = float(d)
        if not 0.0 <= v <= 1.0:
            raise argparse.ArgumentTypeError(f"density {v} outside [0, 1]")
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratprog", description="Rational-function progressions over F_p.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    def pair(sp, need_G=True):
        sp.add_argument("--F", required=True)
        sp.add_argument("--G", required=need_G)

    def primes(sp):
        sp.add_argument("--p")
        sp.add_argument("--p-range", dest="p_range")

    sub = parser.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("lambda", parents=[common], help="the counting operator on three functions")
    pair(sp); primes(sp)
    for name in ("--f0", "--f1", "--f2"):
        sp.add_argument(name, default="ones")
    sp.set_defaults(run=cmd_lambda)

    sp = sub.add_parser("count", parents=[common], help="progressions inside a set")
    pair(sp); primes(sp)
    sp.add_argument("--set")
    sp.add_argument("--density", type=float)
    sp.set_defaults(run=cmd_count)

    sp = sub.add_parser("kernel", parents=[common], help="table of K(n1, n2)")
    pair(sp); primes(sp)
    sp.set_defaults(run=cmd_kernel)

    sp = sub.add_parser("roth-count", parents=[common], help="point count of the Roth variety")
    pair(sp); primes(sp)
    sp.add_argument("--method", choices=("brute", "staged", "charsum"), default="charsum")
    sp.set_defaults(run=cmd_roth_count)

    sp = sub.add_parser("stratify", parents=[common], help="stratum sizes of the Roth variety")
    pair(sp); primes(sp)
    sp.set_defaults(run=cmd_stratify)

    sp = sub.add_parser("slope", parents=[common], help="log-log slope of the point count")
    pair(sp); primes(sp)
    sp.set_defaults(run=cmd_slope)

    sp = sub.add_parser("verify", parents=[common], help="check an inequality or identity")
    sp.add_argument("what", choices=("pet", "duality", "split", "chain", "determinant"))
    pair(sp, need_G=False); primes(sp)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--epsilon", type=float)
    sp.set_defaults(run=cmd_verify)

    sp = sub.add_parser("sweep", parents=[common], help="seeded error-statistic sweeps")
    sp.add_argument("kind", choices=("main", "base", "density"))
    pair(sp, need_G=False); primes(sp)
    sp.add_argument("--R")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--density", type=_density)
    sp.set_defaults(run=cmd_sweep)

    sp = sub.add_parser("extremal", parents=[common], help="search for a large progression-free set")
    pair(sp); primes(sp)
    sp.add_argument("--strategy", choices=harness.STRATEGIES, default="greedy")
    sp.add_argument("--restarts", type=int, default=1)
    sp.set_defaults(run=cmd_extremal)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if getattr(args, "epsilon", None) is not None and not args.epsilon > 0:
        parser.error("--epsilon must be positive")
    try:
        return args.run(args)
    except (UsageError, DependentInput, ExpressionSyntaxError, DivisionByZeroFunction, NotPrime) as exc:
        print(f"ratprog {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except RatProgError as exc:
        print(f"ratprog {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        # unreadable files and malformed numbers in flags or inputs
        print(f"ratprog {args.verb}: {exc}", file=sys.stderr)
        return 2

if __name__ == "__main__":
    sys.exit(main())
