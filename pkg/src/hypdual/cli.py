"""Command-line entry point.

Exit status: 0 when everything matches, 1 on any mismatch, 2 on usage or
generation errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import classical, qdual
from .errors import CaseOutOfRange, DualityError
from .harness import SuiteConfig, lemma_report, random_lemma_pair, run_suite
from .report import VerificationReport, float_crosscheck

ENV_PREFIX = "HYPDUAL_"


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(ENV_PREFIX + name)
    return int(value) if value else default


def _load_instance(text: str) -> dict:
    path = Path(text)
    if not text.lstrip().startswith("{") and path.exists():
        text = path.read_text()
    return json.loads(text)


def _print_report(report: VerificationReport, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
        return
    verdict = "MATCH" if report.match else "MISMATCH"
    line = f"{report.theorem:9s} {report.case_label:13s} N={report.order} d={report.mod_degree} {verdict}"
    if report.boundary_flag is not None:
        line += f" boundary={'ok' if report.boundary_flag else 'differs'}"
    if report.float_check is not None:
        fc = report.float_check
        line += f" float_err={fc['abs_error']:.3e} ({'ok' if fc['ok'] else 'FAIL'})"
    print(line)
    for k, got, want in report.mismatches:
        tag = "" if k >= report.mod_degree else " (allowed)"
        print(f"  z^{k}: got {got}, expected {want}{tag}")


def _verify(args, module, build, expected, load) -> int:
    try:
        inst = load(_load_instance(args.instance))
    except (ValueError, KeyError, DualityError) as exc:
        print(f"error: bad instance: {exc}", file=sys.stderr)
        return 2
    try:
        report = module.verify(inst, args.order)
    except CaseOutOfRange as exc:
        print(json.dumps({"built": build(inst, args.order).to_json(), "expected": None}))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.float_check is not None and report.match:
        z, tol = complex(args.float_check[0]), float(args.float_check[1])
        try:
            float_crosscheck(report, build(inst, args.order), expected(inst, args.order), z, tol)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    _print_report(report, args.json)
    return 0 if report.ok else 1


def cmd_verify_classical(args) -> int:
    return _verify(
        args,
        classical,
        classical.build_H,
        classical.expected_H,
        classical.ClassicalDualityInstance.from_json,
    )


def cmd_verify_q(args) -> int:
    def load(data):
        return qdual.QDualityInstance.from_json(data, exponent_bound=args.exponent_bound)

    return _verify(args, qdual, qdual.build_G, qdual.expected_G, load)


def cmd_lemma_check(args) -> int:
    rng = random.Random(args.seed)
    if (args.na is None) != (args.nb is None):
        print("error: --na and --nb go together", file=sys.stderr)
        return 2
    if args.na is not None:
        if args.na < 1 or args.nb < 0 or args.na < args.nb:
            print("error: need na >= 1, nb >= 0 and na >= nb", file=sys.stderr)
            return 2
        count, sizes = 1, (args.na, args.nb)
    else:
        count, sizes = args.random, (None, None)
    bad = 0
    for _ in range(count):
        A, B = random_lemma_pair(rng, args.denominator_bound, n_a=sizes[0], n_b=sizes[1])
        report = lemma_report(A, B)
        bad += not report.match
        if args.json:
            print(report.to_json())
    if not args.json:
        print(f"lemma-check: {count - bad}/{count} exact matches")
    return 1 if bad else 0


def cmd_suite(args) -> int:
    cfg = SuiteConfig(
        seed=args.seed,
        order=args.order,
        per_cell=args.per_cell,
        r_max=args.r_max,
        denominator_bound=args.denominator_bound,
    )
    result = run_suite(cfg, jobs=args.jobs)
    if args.json_out:
        Path(args.json_out).write_text(result.to_jsonl())
    print(result.summary())
    return result.exit_status()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypdual",
        description="Exact verification of duality relations for (basic) hypergeometric series.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    order = _env_int("ORDER", 12)

    for name, func, helptext in (
        ("verify-classical", cmd_verify_classical, "verify a pFr duality instance"),
        ("verify-q", cmd_verify_q, "verify a basic hypergeometric duality instance"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--instance", required=True, help="JSON file or inline JSON object")
        p.add_argument("--order", type=int, default=order)
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        p.add_argument("--float-check", nargs=2, metavar=("Z", "TOL"))
        if name == "verify-q":
            p.add_argument("--exponent-bound", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("lemma-check", help="check the residue-sum identity on random point sets")
    p.add_argument("--na", type=int)
    p.add_argument("--nb", type=int)
    p.add_argument("--random", type=int, default=_env_int("LEMMA_COUNT", 100), metavar="COUNT")
    p.add_argument("--seed", type=int, default=_env_int("SEED", 0))
    p.add_argument("--denominator-bound", type=int, default=_env_int("DENOMINATOR_BOUND", 20))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("suite", help="run the full case-matrix verification suite")
    p.add_argument("--seed", type=int, default=_env_int("SEED", 0))
    p.add_argument("--order", type=int, default=order)
    p.add_argument("--per-cell", type=int, default=_env_int("PER_CELL", 25))
    p.add_argument("--r-max", type=int, default=_env_int("R_MAX", 4))
    p.add_argument("--denominator-bound", type=int, default=_env_int("DENOMINATOR_BOUND", 20))
    p.add_argument("--jobs", type=int, default=_env_int("JOBS", 1))
    p.add_argument("--json-out", metavar="PATH")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, DualityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
