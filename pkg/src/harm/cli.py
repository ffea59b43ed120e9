"""Command-line front end.

Exit statuses: 0 success, 1 usage error, 2 invalid input model,
3 unreachable target, 4 path cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .errors import (
    DegenerateResistanceError,
    ModelValidationError,
    PathCapExceededError,
    SpecError,
    UnreachableTargetError,
    UsageError,
)
from .ingest import parse_network_spec
from .paths import DEFAULT_PATH_CAP, enumerate_paths
from .report import PATH_FREE, build_report, parse_selection, render_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_UNREACHABLE = 3
EXIT_PATH_CAP = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harm", description="HARM security metrics for a network description.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="parse and validate a network description")
    p.add_argument("file")

    p = sub.add_parser("paths", help="enumerate attack paths")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--path-cap", type=int, default=None)

    p = sub.add_parser("analyze", help="compute metrics and render a report")
    p.add_argument("file")
    p.add_argument("--metrics", default="all",
                   help="'all', 'none', or comma-separated metric ids")
    p.add_argument("--ncp-path", type=int, default=None, metavar="K",
                   help="1-based index of the exploited path (required for ncp)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--path-cap", type=int, default=None)
    p.add_argument("--roa-complement", action="store_true",
                   help="also report the 1-pr return-on-attack variant")
    return parser


def _path_cap(flag: int | None) -> int:
    if flag is not None:
        cap = flag
    elif os.environ.get("HARM_PATH_CAP"):
        try:
            cap = int(os.environ["HARM_PATH_CAP"])
        except ValueError:
            raise UsageError(f"HARM_PATH_CAP must be an integer, got {os.environ['HARM_PATH_CAP']!r}")
    else:
        cap = DEFAULT_PATH_CAP
    if cap < 0:
        raise UsageError("path cap must be non-negative")
    return cap


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read input {path}: {exc.strerror or exc}") from None


def _cmd_validate(args, out: TextIO) -> int:
    # parsing runs the full model validation and raises with every violation
    model = parse_network_spec(_read(args.file))
    out.write(f"ok: {len(model.hosts)} hosts, {len(model.graph.edges)} edges\n")
    return EXIT_OK


def _cmd_paths(args, out: TextIO) -> int:
    model = parse_network_spec(_read(args.file))
    paths = enumerate_paths(model, cap=_path_cap(args.path_cap))
    if args.format == "json":
        doc = [{"index": p.index, "hosts": list(p.hosts), "length": len(p)} for p in paths]
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for p in paths:
            out.write(f"{p}\n")
    return EXIT_OK


def _cmd_analyze(args, out: TextIO) -> int:
    raw = _read(args.file)
    selection = parse_selection(args.metrics)
    if args.roa_complement and "composite-roa-complement" not in selection:
        selection = selection + ("composite-roa-complement",)
    if ("ncp" in selection) != (args.ncp_path is not None):
        if args.ncp_path is None:
            raise UsageError("--ncp-path is required when ncp is selected")
        raise UsageError("--ncp-path given but ncp is not selected")
    cap = _path_cap(args.path_cap)
    model = parse_network_spec(raw)
    paths = enumerate_paths(model, cap=cap)
    if len(paths) == 0 and set(selection) - PATH_FREE:
        raise UnreachableTargetError(f"target {model.target_id} unreachable from {model.attacker_id}")
    if args.ncp_path is not None and not 1 <= args.ncp_path <= len(paths):
        raise UsageError(f"--ncp-path {args.ncp_path} out of range 1..{len(paths)}")
    report = build_report(model, paths, selection, ncp_path=args.ncp_path,
                          source=raw, source_name=args.file)
    out.write(render_report(report, args.format))
    return EXIT_OK


_COMMANDS = {"validate": _cmd_validate, "paths": _cmd_paths, "analyze": _cmd_analyze}


def run_cli(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
            stderr: TextIO | None = None) -> int:
    """Run one command; data goes to ``stdout``, diagnostics to ``stderr``."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = _build_parser().parse_args(list(argv) if argv is not None else None)
        return _COMMANDS[args.command](args, stdout)
    except ModelValidationError as exc:
        stderr.write("invalid model:\n")
        for v in exc.violations:
            stderr.write(f"  - {v}\n")
        return EXIT_INVALID
    except (SpecError, DegenerateResistanceError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except UnreachableTargetError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_UNREACHABLE
    except PathCapExceededError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PATH_CAP


def main() -> None:
    sys.exit(run_cli())
