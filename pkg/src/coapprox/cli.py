"""Command-line driver.

Exit codes: 0 success (an empty solution set included), 1 verification
failure, 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, NumericalError
from .oracle import verify_bj_directions, verify_by_definition
from .problem import load_candidate, load_problem
from .report import dumps, render_text, report_dict, verification_dict
from .solver import TOL_UNIQUE, TOL_W, coapprox

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def _emit(obj, args):
    text = render_text(obj) if args.format == "text" else dumps(obj)
    sys.stdout.write(text)


def _run(args, mode=None):
    problem = load_problem(args.problem, mode=mode)
    target = problem.target if args.command in ("solve", "linf", "verify") else None
    report = coapprox(problem.basis, target, tol_w=args.tol_w, tol_unique=args.tol_unique)
    return problem, report


def cmd_classify(args) -> int:
    _, report = _run(args)
    _emit(report_dict(report, classify_only=True), args)
    return EXIT_OK


def cmd_star_report(args) -> int:
    _, report = _run(args)
    out = report_dict(report, classify_only=True)
    _emit({"star_report": out["star_report"]}, args)
    return EXIT_OK


def cmd_solve(args) -> int:
    _, report = _run(args, mode="linf" if args.command == "linf" else None)
    _emit(report_dict(report), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem, report = _run(args)
    if problem.target is None:
        raise InputError("verify needs a target in the problem file")
    alpha = load_candidate(args.candidate, problem)
    definition = verify_by_definition(alpha, problem.target, problem.basis,
                                      samples=args.samples, seed=args.seed)
    bj = verify_bj_directions(alpha, problem.target, problem.basis, report.star,
                              n_random=args.directions, seed=args.seed)
    oracle = {"definition": verification_dict(definition),
              "bj_directions": verification_dict(bj),
              "candidate": [str(a) for a in alpha],
              "seed": args.seed}
    _emit({"oracle": oracle}, args)
    return EXIT_OK if definition.passed and bj.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coapprox",
        description="Best coapproximations out of subspaces of diagonal matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("problem", help="problem file (JSON)")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json",
                         help="canonical JSON output (default)")
        fmt.add_argument("--text", dest="format", action="store_const", const="text",
                         help="human-readable output")
        p.set_defaults(format="json")
        p.add_argument("--tol-w", type=float, default=TOL_W,
                       help="widening of float numerical ranges (default %(default)g)")
        p.add_argument("--tol-unique", type=float, default=TOL_UNIQUE,
                       help="box width below which a float solution is unique (default %(default)g)")

    p = sub.add_parser("classify", help="coproximinal / co-Chebyshev classification")
    common(p)
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("star-report", help="*-Property verdicts with witnesses")
    common(p)
    p.set_defaults(func=cmd_star_report)
    p = sub.add_parser("solve", help="full best-coapproximation set")
    common(p)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("linf", help="solve, reading the file in l-infinity mode")
    common(p)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("verify", help="check a candidate with the brute-force oracle")
    common(p)
    p.add_argument("candidate", help="candidate file: alpha (m values) or diagonal (n values)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--directions", type=int, default=50,
                   help="random BJ directions on top of the class witnesses")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
