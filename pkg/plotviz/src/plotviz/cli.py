"""Command-line entry point: ``plotviz render --in agg.csv --out figs/``."""

from __future__ import annotations

import argparse
import sys

from .data import SchemaError
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotviz",
        description="Render benchmark aggregate CSVs into comparison figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    cmd = sub.add_parser("render", help="render an aggregate CSV to image files")
    cmd.add_argument("--in", dest="input", required=True, help="aggregate CSV path")
    cmd.add_argument("--out", dest="out_dir", required=True, help="output directory")
    cmd.add_argument(
        "--log", action="store_true",
        help="log-scale y on all panels, not just single-measure ones",
    )
    cmd.add_argument(
        "--metric", choices=("ot", "time"),
        help="render only this metric (default: both)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    metrics = (args.metric,) if args.metric else ("ot", "time")
    try:
        paths = render(args.input, args.out_dir, metrics=metrics, log_all=args.log)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
