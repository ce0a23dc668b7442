"""Command line entry point (``guifrag``)."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .config import load_config
from .errors import GuifragError
from .ledger import read_ledger
from .metrics import precision, sample_for_validation
from .report import render_summary
from .runner import run


def _analyze(args) -> int:
    cfg = load_config(args.config)
    manifest, code = run(cfg, jobs=args.jobs, out=args.out)
    counts = manifest["counts"]
    print(
        f"analyzed {counts['analyzed']}, skipped {counts['skipped']}, failed {counts['failed']}"
        f" -> {args.out or cfg.output_dir}"
    )
    return code


def _summarize(args) -> int:
    sys.stdout.write(render_summary(args.input))
    return 0


def _sample(args) -> int:
    for rid in sample_for_validation(list(read_ledger(args.ledger)), args.k, args.seed):
        print(rid)
    return 0


def _precision(args) -> int:
    with open(args.labels, encoding="utf-8", newline="") as fh:
        labels = list(csv.DictReader(fh))
    reports = precision(labels, list(read_ledger(args.ledger)))
    out = {}
    for level, rep in reports.items():
        out[level] = {"TP": rep.TP, "FP": rep.FP, "P": rep.P}
        p = "undefined" if rep.P is None else f"{rep.P:.0%}"
        print(f"{level}: measured {rep.TP + rep.FP}, TP {rep.TP}, FP {rep.FP}, P {p}")
    if args.json:
        print(json.dumps(out, indent=1))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guifrag", description="GUI test fragility metrics over git release histories")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker threads (default: config value)")
    p.add_argument("--out", default=None, help="output directory (default: config output_dir)")
    p.set_defaults(func=_analyze)

    p = sub.add_parser("summarize", help="render tools.csv as a text table")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=_summarize)

    p = sub.add_parser("sample", help="draw fragile class records for manual validation")
    p.add_argument("--ledger", required=True)
    p.add_argument("-k", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_sample)

    p = sub.add_parser("precision", help="precision of the fragility proxy from manual labels")
    p.add_argument("--ledger", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_precision)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except GuifragError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
