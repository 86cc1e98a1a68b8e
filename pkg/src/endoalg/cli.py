"""Command-line interface.

Exit codes: 0 pass, 1 property violated, 2 input error, 3 inconclusive
(an Unknown verdict under --strict, or a bound that could not be certified).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import AlgebraError, Incomplete, InputError, InvariantViolation, ToleranceError
from .metric import DEFAULT_TOL
from .report import MEMBER_SETS, SUITES, run_analyze, run_distance, run_enumerate, run_member, run_verify

EXIT_PASS, EXIT_VIOLATED, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _tol(text: str) -> Fraction:
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from None
    if t <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return t


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step (default 0)")
    common.add_argument("--tol", type=_tol, default=DEFAULT_TOL, help="metric tolerance (default 1e-6)")

    p = argparse.ArgumentParser(prog="endoalg", description="Endomorphic left elements of finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="classify an algebra and describe L, R, I")
    a.add_argument("file")
    a.add_argument("--strict", action="store_true", help="exit 3 when any verdict is Unknown")

    m = sub.add_parser("member", parents=[common], help="test one element for membership")
    m.add_argument("file")
    m.add_argument("--element", required=True, help="comma-separated coordinates, e.g. 1,0,1/2")
    m.add_argument("--set", dest="set_name", required=True, choices=MEMBER_SETS)

    e = sub.add_parser("enumerate", parents=[common], help="list a set over a prime field")
    e.add_argument("file")
    e.add_argument("--set", dest="set_name", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the check suites on a file or a zoo")
    v.add_argument("file", nargs="?")
    v.add_argument("--zoo", help="e.g. dim=2,p=2,exhaustive or dim=3,p=2,sample=100,seed=42")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--jobs", type=int, default=1, help="worker processes for zoo runs")

    d = sub.add_parser("distance", parents=[common], help="norm distance between two sets")
    d.add_argument("file")
    d.add_argument("--from", dest="from_expr", required=True)
    d.add_argument("--to", dest="to_expr", required=True)
    return p


def _run(args):
    if args.command == "analyze":
        return run_analyze(args.file, seed=args.seed, tol=args.tol, strict=args.strict)
    if args.command == "member":
        return run_member(args.file, args.element, args.set_name)
    if args.command == "enumerate":
        return run_enumerate(args.file, args.set_name)
    if args.command == "verify":
        if (args.file is None) == (args.zoo is None):
            raise InputError("give exactly one of a file and --zoo")
        return run_verify(args.file, args.zoo, args.suite, args.seed, args.tol, max(1, args.jobs))
    return run_distance(args.file, args.from_expr, args.to_expr, args.tol)


def exit_code_for(exc: AlgebraError) -> int:
    if isinstance(exc, InvariantViolation):
        return EXIT_VIOLATED
    if isinstance(exc, (Incomplete, ToleranceError)):
        return EXIT_INCONCLUSIVE
    return EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = _run(args)
    except AlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    sys.stdout.write(report.render_json() if args.json else report.render_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
