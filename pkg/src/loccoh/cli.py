"""Command line interface.

    loccoh run <file.session> [--p N] [--window a..b] [--format json|text] [--no-cache]
    loccoh verify ps3 [--p N] [--window a..b] [--format json|text] [--no-cache]

Exit codes: 0 all pass, 1 any fail, 2 inconclusive, 3 error.  Configuration
precedence is flags > LOCCOH_* environment variables > defaults.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from .report import FAIL, INCONCLUSIVE, PASS, emit_report, overall_verdict
from .session import Config, Diagnostic, execute, parse_session

_WINDOW_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def parse_window(text: str):
    m = _WINDOW_RE.match(text)
    if not m:
        raise ValueError(f"window must look like -6..6, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ValueError("window lower bound exceeds upper bound")
    return lo, hi


def build_config(args) -> Config:
    cfg = Config()
    env_p = os.environ.get("LOCCOH_P")
    if env_p:
        cfg.p = int(env_p)
    env_w = os.environ.get("LOCCOH_WINDOW")
    if env_w:
        cfg.window_lo, cfg.window_hi = parse_window(env_w)
    cfg.cache_dir = os.environ.get("LOCCOH_CACHE_DIR")
    if args.p is not None:
        cfg.p = args.p
    if args.window is not None:
        cfg.window_lo, cfg.window_hi = parse_window(args.window)
    cfg.fmt = args.format
    cfg.no_cache = args.no_cache
    return cfg


def _add_common(sub):
    sub.add_argument("--p", type=int, default=None, help="field characteristic (prime)")
    sub.add_argument("--window", default=None, help="multidegree window, e.g. -6..6")
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--no-cache", action="store_true", help="disable the Groebner basis cache")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="loccoh", description="graded local cohomology workbench")
    subs = parser.add_subparsers(dest="mode", required=True)
    run_p = subs.add_parser("run", help="run a session script")
    run_p.add_argument("file")
    _add_common(run_p)
    ver_p = subs.add_parser("verify", help="run a named verification")
    ver_p.add_argument("statement", choices=("ps3",))
    _add_common(ver_p)
    args = parser.parse_args(argv)

    try:
        cfg = build_config(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3

    if args.mode == "run":
        try:
            text = open(args.file, encoding="utf-8").read()
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return 3
        try:
            script = parse_session(text)
            results = execute(script, cfg)
        except Diagnostic as d:
            print(f"{args.file}:{d}", file=sys.stderr)
            return 3
    else:
        script = parse_session(f"verify {args.statement}")
        try:
            results = execute(script, cfg)
        except Diagnostic as d:
            print(str(d), file=sys.stderr)
            return 3

    sys.stdout.buffer.write(emit_report(results, cfg.fmt, cfg.as_dict()))
    verdict = overall_verdict(results)
    if verdict == FAIL:
        return 1
    if verdict == INCONCLUSIVE:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
