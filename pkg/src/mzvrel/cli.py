"""Command-line entry point: ``mzvrel <command> ...``.

Exit status: 0 when every check passes, 1 when a verification fails,
2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Sequence

from .errors import MZVError
from .finite import DEFAULT_PRIMES, parse_prime_range, primes_between, verify_finite, zeta_p, zeta_p_star
from .indices import format_index, hoffman_dual, ones, parse_index
from .posets import expand_poset, mu, parse_poset
from .real import DEFAULT_FRAC_BITS, error_bound, mzv, mzv_star, verify_real
from .relations import (
    FINITE,
    REAL,
    Relation,
    grsf_finite_sides,
    grsf_ones_sides,
    grsf_sides,
    ohno_sides,
    sum_formula_sides,
    verify_symbolic,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GENERATORS = ("grsf", "grsf-ones", "sum-formula", "ohno", "grsf-finite")
CSV_COLUMNS = ("name", "params", "mode", "verdict", "max_abs_diff_or_failing_primes")


class UsageError(Exception):
    pass


def _index_arg(text: str, extra_ones: int = 0):
    return parse_index(text) + ones(extra_ones)


def build_relation(args, mode: str | None = None) -> Relation:
    kind = args.relation
    if kind == "sum-formula":
        try:
            weight = int(args.k)
        except ValueError:
            raise UsageError(f"sum-formula takes --k as a single positive integer, got {args.k!r}")
        if args.u is None:
            raise UsageError("sum-formula needs --u")
        return sum_formula_sides(weight, args.u)
    k = _index_arg(args.k, args.ones)
    if kind == "grsf":
        return grsf_sides(k, args.t)
    if kind == "grsf-ones":
        return grsf_ones_sides(k, args.s, args.t)
    if kind == "grsf-finite":
        return grsf_finite_sides(k, args.t)
    if kind == "ohno":
        flavor = args.flavor or (FINITE if mode == "finite" else REAL)
        return ohno_sides(k, args.l, flavor)
    raise UsageError(f"unknown relation {kind!r}")


def _print_relation(rel: Relation, fmt: str, out) -> None:
    if fmt == "json":
        out.write(rel.to_json() + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("side", "coef", "index"))
        for side, s in (("lhs", rel.lhs), ("rhs", rel.rhs)):
            for k, c in s.items():
                w.writerow((side, c, format_index(k)))
    else:
        out.write(f"{rel.name} {json.dumps(rel.params)}\n  lhs: {rel.lhs}\n  rhs: {rel.rhs}\n")


def _print_reports(reports: Sequence, fmt: str, out) -> None:
    if fmt == "json":
        data = [r.to_dict() for r in reports]
        out.write(json.dumps(data[0] if len(data) == 1 else data) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow((r.name, json.dumps(r.params, separators=(",", ":")), r.mode, r.verdict, r.summary()))
    else:
        for r in reports:
            out.write(r.describe() + "\n")


def cmd_gen(args, out) -> int:
    _print_relation(build_relation(args), args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    rel = build_relation(args, args.mode)
    if args.mode == "real":
        if rel.flavor != REAL:
            raise UsageError(f"{rel.name} is a finite-flavour relation; use --mode finite or symbolic")
        report = verify_real(rel, args.prec, args.tol)
    elif args.mode == "finite":
        if rel.flavor != FINITE:
            raise UsageError(
                f"{rel.name} is stated for real MZVs; verify grsf-finite or ohno --flavor finite mod p instead"
            )
        lo, hi = parse_prime_range(args.primes)
        primes = primes_between(lo, hi)
        if not primes:
            raise UsageError(f"no primes in {args.primes}")
        report = verify_finite(rel, primes)
    else:
        report = verify_symbolic(rel)
    _print_reports([report], args.format, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_eval(args, out) -> int:
    k = _index_arg(args.index, args.ones)
    value = (mzv_star if args.star else mzv)(k, args.prec)
    bound = error_bound(k, args.prec) if not args.star else error_bound(k, args.prec) * (1 << max(len(k) - 1, 0))
    name = "zeta_star" if args.star else "zeta"
    if args.format == "json":
        out.write(
            json.dumps(
                {
                    "index": list(k),
                    "star": args.star,
                    "frac_bits": args.prec,
                    "value": value.to_decimal(),
                    "error_bound": bound.to_sci(),
                }
            )
            + "\n"
        )
    else:
        out.write(f"{name}({format_index(k)}) = {value.to_decimal()}  (|error| <= {bound.to_sci()})\n")
    return EXIT_OK


def cmd_eval_p(args, out) -> int:
    k = _index_arg(args.index, args.ones)
    value = (zeta_p_star if args.star else zeta_p)(k, args.p)
    if args.format == "json":
        out.write(json.dumps({"index": list(k), "star": args.star, "p": args.p, "residue": value}) + "\n")
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_dual(args, out) -> int:
    out.write(format_index(hoffman_dual(_index_arg(args.index, args.ones))) + "\n")
    return EXIT_OK


def cmd_poset(args, out) -> int:
    if args.poset_cmd == "mu":
        poset = mu(parse_index(args.k), parse_index(args.l))
    else:
        poset = parse_poset(args.text)
    payload = {"poset": poset.to_text(), "admissible": poset.is_admissible()}
    if args.expand or args.poset_cmd == "expand":
        payload["expansion"] = expand_poset(poset).to_dict()
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"{payload['poset']}\n")
        if "expansion" in payload:
            out.write(f"{expand_poset(poset)}\n")
    return EXIT_OK


def cmd_suite(args, out) -> int:
    results = run_suite(args.name, args.jobs)
    if args.format == "json":
        out.write(
            json.dumps(
                [
                    {"name": r.name, "passed": r.passed, "cases": r.cases, "seconds": round(r.seconds, 3), "failures": r.failures[:20]}
                    for r in results
                ]
            )
            + "\n"
        )
    else:
        for r in results:
            out.write(r.line() + "\n")
        passed = sum(r.passed for r in results)
        out.write(f"{passed}/{len(results)} checks passed\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _add_relation_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("relation", choices=GENERATORS)
    p.add_argument("--k", required=True, help="index 'k1,...,kr' (an integer weight for sum-formula)")
    p.add_argument("--ones", type=int, default=0, help="append this many 1s to --k")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--u", type=int, default=None, help="depth for sum-formula")
    p.add_argument("--flavor", choices=(REAL, FINITE), default=None, help="ohno only")


def _format_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzvrel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit both sides of a relation")
    _add_relation_args(p)
    _format_arg(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="verify a relation")
    _add_relation_args(p)
    p.add_argument("--mode", choices=("real", "finite", "symbolic"), default="real")
    p.add_argument("--prec", type=int, default=DEFAULT_FRAC_BITS, help="fractional bits")
    p.add_argument("--primes", default=f"{DEFAULT_PRIMES[0]}..{DEFAULT_PRIMES[1]}")
    p.add_argument("--tol", default=None, help="absolute tolerance, e.g. 1e-25")
    _format_arg(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate zeta(k) or zeta-star(k)")
    p.add_argument("--index", required=True)
    p.add_argument("--ones", type=int, default=0)
    p.add_argument("--star", action="store_true")
    p.add_argument("--prec", type=int, default=DEFAULT_FRAC_BITS)
    _format_arg(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("eval-p", help="evaluate zeta_p(k) mod p")
    p.add_argument("--index", required=True)
    p.add_argument("--ones", type=int, default=0)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--star", action="store_true")
    _format_arg(p)
    p.set_defaults(func=cmd_eval_p)

    p = sub.add_parser("dual", help="Hoffman dual of an index")
    p.add_argument("--index", required=True)
    p.add_argument("--ones", type=int, default=0)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("poset", help="2-posets")
    psub = p.add_subparsers(dest="poset_cmd", required=True)
    q = psub.add_parser("mu", help="build mu(k, l)")
    q.add_argument("--k", required=True)
    q.add_argument("--l", required=True)
    q.add_argument("--expand", action="store_true")
    _format_arg(q)
    q = psub.add_parser("expand", help="expand a poset given as 'n; i<j ...; labels'")
    q.add_argument("text")
    q.set_defaults(expand=True)
    _format_arg(q)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("suite", help="run acceptance sweeps")
    p.add_argument("name", choices=("all",) + tuple(SUITES))
    p.add_argument("--jobs", type=int, default=1, help="worker processes for 'all'")
    _format_arg(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: List[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "prec", DEFAULT_FRAC_BITS) < 64:
        print("mzvrel: --prec must be at least 64", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, MZVError) as exc:
        print(f"mzvrel: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: List[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (used by tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
