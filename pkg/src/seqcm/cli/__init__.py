"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..algebra import Field
from .grammar import InputDocument, ParseError, format_document, parse
from .runner import RunOptions, run

__all__ = ["main", "parse", "format_document", "InputDocument", "ParseError", "RunOptions", "run"]


def _field(text: str) -> Field:
    t = text.lower()
    if t in ("q", "qq"):
        return Field(0)
    if t.startswith("fp:"):
        try:
            return Field(int(t[3:]))
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    raise argparse.ArgumentTypeError("field must be 'q' or 'fp:<prime>'")


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="seqcm",
        description="Decide sequential Cohen-Macaulayness, partial sCM and E-depth of graded modules.")
    ap.add_argument("input", help="input file ('-' for stdin)")
    ap.add_argument("--field", type=_field, default=None, help="q or fp:<p>; overrides the ring declaration")
    ap.add_argument("--seed", type=_seed, default=None, help="root seed (default: $SEQCM_SEED or 0)")
    ap.add_argument("--trials", type=int, default=3, help="random coordinate trials for gin (default 3)")
    ap.add_argument("--degree-cap", type=_positive, default=64, help="largest degree any computation may reach")
    ap.add_argument("--routes", choices=("all", "peskine", "schenzel", "gin"), default="all")
    ap.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    ap.add_argument("--jobs", type=_positive, default=1, help="requests evaluated in parallel")
    ap.add_argument("--timings", action="store_true", help="include wall-clock seconds in the JSON report")
    ap.add_argument("--print", dest="echo", action="store_true", help="print the canonical form of the input and exit")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        print(f"seqcm: cannot read {args.input}: {e}", file=sys.stderr)
        return 2
    try:
        doc = parse(text)
    except ParseError as e:
        print(f"seqcm: {args.input}: {e}", file=sys.stderr)
        return 2
    if args.echo:
        sys.stdout.write(format_document(doc))
        return 0
    seed = args.seed
    if seed is None:
        env = os.environ.get("SEQCM_SEED")
        try:
            seed = _seed(env) if env else 0
        except (ValueError, argparse.ArgumentTypeError):
            print(f"seqcm: invalid SEQCM_SEED {env!r}", file=sys.stderr)
            return 2
    if args.trials < 2:
        print("seqcm: --trials must be at least 2", file=sys.stderr)
        return 2
    opts = RunOptions(args.field, seed, args.trials, args.degree_cap, args.routes, args.timings, args.jobs)
    report, lines, status = run(doc, opts, text)
    payload = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.json == "-":
        sys.stdout.write(payload)
    else:
        print("\n".join(lines))
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(payload)
    return status
