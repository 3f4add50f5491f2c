"""Command-line entry point: ``tauforms [SCRIPT] [--json] [--check] [--seed N]``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, TextIO

from .runner import run
from .syntax import ScriptError, parse_script

EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 1, 2


def execute(text: str, out: TextIO, as_json: bool = False, check: bool = False, seed: int = 0) -> int:
    """Parse and run ``text``, writing reports to ``out``; returns the exit status."""
    try:
        script = parse_script(text)
    except ScriptError as exc:
        if as_json:
            out.write(json.dumps({"status": "error", "error": {"code": exc.code, "message": str(exc)}}) + "\n")
        else:
            out.write(f"{exc}\n")
        return EXIT_USER
    if check:
        n_decl, n_cmd = len(script.declarations), len(script.commands)
        if as_json:
            out.write(json.dumps({"status": "ok", "declarations": n_decl, "commands": n_cmd}) + "\n")
        else:
            out.write(f"ok: {n_decl} declarations, {n_cmd} commands\n")
        return EXIT_OK
    reports = run(script, default_seed=seed)
    for r in reports:
        out.write(json.dumps(r.to_json()) + "\n" if as_json else r.to_text())
    for r in reports:
        if r.status != "ok":
            return EXIT_INTERNAL if r.internal else EXIT_USER
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tauforms", description="Run a tau-form script.")
    p.add_argument("script", nargs="?", default="-", help="script file, or - for standard input")
    p.add_argument("--json", action="store_true", help="emit one JSON report per line")
    p.add_argument("--check", action="store_true", help="parse and check only")
    p.add_argument("--seed", type=int, default=0, help="default seed for selftest")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.script == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.script, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            sys.stderr.write(f"tauforms: cannot read {args.script}: {exc.strerror}\n")
            return EXIT_USER
    return execute(text, sys.stdout, as_json=args.json, check=args.check, seed=args.seed)


if __name__ == "__main__":
    sys.exit(main())
