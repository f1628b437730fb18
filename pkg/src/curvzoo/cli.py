"""Command line interface.

    curvzoo classify <file-or-builtin> [--check LIST] [--tensor LIST]
                     [--format text|json] [--oracle-samples N] [--seed S]
    curvzoo list-builtins

Exit codes: 0 on success, 1 on an internal consistency failure (a solver
witness failing its own back-substitution), 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from .charts import ChartError
from .exprs import ExpressionError
from .linsolve import InternalInconsistencyError
from .metrics import MetricFileError, list_builtins, resolve_metric
from .zoo import (ALL_TENSORS, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TENSORS,
                  classify, render_report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvzoo",
        description="Exact pseudosymmetry-type classification of coordinate "
                    "metrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    cls = sub.add_parser("classify",
                         help="classify a metric file or builtin")
    cls.add_argument("source", help="metric file path or builtin name")
    cls.add_argument("--check", default=None,
                     help="comma-separated classifier name prefixes "
                          "(default: all)")
    cls.add_argument("--tensor", default=",".join(DEFAULT_TENSORS),
                     help="comma-separated tensors from "
                          f"{{{','.join(ALL_TENSORS)}}} "
                          f"(default: {','.join(DEFAULT_TENSORS)})")
    cls.add_argument("--format", default="text", choices=("text", "json"))
    cls.add_argument("--oracle-samples", type=int, default=DEFAULT_SAMPLES)
    cls.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sub.add_parser("list-builtins", help="list builtin metric names")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-builtins":
        for name in list_builtins():
            print(name)
        return 0

    try:
        spec = resolve_metric(args.source)
        checks = ([c for c in args.check.split(",") if c]
                  if args.check else None)
        tensors = tuple(t for t in args.tensor.split(",") if t)
        report = classify(spec, checks=checks, tensors=tensors,
                          oracle_samples=args.oracle_samples, seed=args.seed)
    except InternalInconsistencyError as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return 1
    except (MetricFileError, ChartError, ExpressionError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(report, format=args.format))
    if report.oracle and report.oracle.disagreements:
        print("oracle disagreements detected", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
