"""Command line driver: ``ciu run``, ``ciu check-identities``, ``ciu fmt``.

Exit status: 0 on success, 1 when a hard failure was recorded, 2 on input
errors (syntax, semantics, unreadable file).
"""

from __future__ import annotations

import argparse
import sys

from .errors import CIUError, ResourceLimitExceeded
from .groebner import set_default_limits
from .io.parser import Task, InputDocument, format_document, parse
from .io.report import emit, render
from .io.runner import run


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _finish(report, args) -> int:
    if args.report:
        with open(args.report, "wb") as fh:
            fh.write(emit(report))
    if args.json:
        sys.stdout.buffer.write(emit(report))
    else:
        sys.stdout.write(render(report))
    return 1 if report["hard_failures"] else 0


def cmd_run(args) -> int:
    doc = parse(_read(args.file))
    return _finish(run(doc), args)


def cmd_identities(args) -> int:
    doc = InputDocument(tasks=[Task("identities", {"size": args.size, "trials": args.trials, "seed": args.seed}, 0)])
    return _finish(run(doc), args)


def cmd_fmt(args) -> int:
    text = format_document(parse(_read(args.file)))
    if args.in_place:
        with open(args.file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ciu", description="Unions of codimension-2 complete intersections")
    ap.add_argument("--max-pairs", type=int, help="cap on S-pairs per Groebner basis (env CIU_MAX_PAIRS)")
    ap.add_argument("--max-basis", type=int, help="cap on basis size (env CIU_MAX_BASIS)")
    sub = ap.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--report", metavar="PATH", help="write the structured report here")
        p.add_argument("--json", action="store_true", help="print the structured report instead of text")

    p = sub.add_parser("run", help="execute the tasks of a document")
    p.add_argument("file")
    outputs(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check-identities", help="randomized pfaffian identity suite")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    outputs(p)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("fmt", help="print the canonical form of a document")
    p.add_argument("file")
    p.add_argument("--in-place", action="store_true")
    p.set_defaults(func=cmd_fmt)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    set_default_limits(args.max_pairs, args.max_basis)
    try:
        return args.func(args)
    except (OSError, CIUError) as exc:
        if isinstance(exc, ResourceLimitExceeded):
            print(f"ciu: resource limit: {exc}", file=sys.stderr)
        else:
            print(f"ciu: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
