"""Command-line surface: evaluate query documents, run the corpus battery,
print the grammar.  Exit code 0 iff no query or suite entry failed."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from gtsreal.queries import GRAMMAR, ParseError, parse
from gtsreal.report import Caps, Report, corpus_verify, run


def _emit(report: Report, fmt: str, path):
    text = report.machine_text() if fmt == "machine" else report.human_text()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gtsreal",
        description="exact decision procedures for generalized-topology real lines")
    parser.add_argument("--caps-chain", type=int, default=64, metavar="N",
                        help="chain index bound (default 64)")
    parser.add_argument("--caps-depth", type=int, default=4, metavar="K",
                        help="generation depth for restriction probes (default 4)")
    parser.add_argument("--report", metavar="PATH", default=None,
                        help="write the report to a file instead of stdout")
    parser.add_argument("--format", choices=("human", "machine"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)
    p_eval = sub.add_parser("eval", help="evaluate a query document")
    p_eval.add_argument("file", help="UTF-8 query document")
    sub.add_parser("corpus", help="run the built-in verification battery")
    sub.add_parser("print-grammar", help="print the query grammar")
    args = parser.parse_args(argv)

    caps = Caps(chain_n=args.caps_chain, depth=args.caps_depth)
    if args.command == "print-grammar":
        sys.stdout.write(GRAMMAR)
        return 0
    if args.command == "corpus":
        report = corpus_verify(caps)
        _emit(report, args.format, args.report)
        return 0 if report.failures == 0 else 1
    try:
        doc = parse(Path(args.file).read_text(encoding="utf-8"))
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    report = run(doc, caps)
    _emit(report, args.format, args.report)
    return 0 if report.failures == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
