"""Command-line entry point."""
import argparse
import json
import sys

from ..errors import AlgebraError
from .corpus import CorpusError, corpus_run, format_rows
from .runner import format_text, run
from .session import SessionSyntaxError, parse_session


def build_parser():
    p = argparse.ArgumentParser(
        prog="hwtheta",
        description="Run a session of theta-pairing and module computations.")
    p.add_argument("session", nargs="?", help="session file ('-' or omitted reads stdin)")
    p.add_argument("--max-index", type=int, default=12, help="Tor window for theta (default 12)")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--strict", action="store_true", help="abort on the first failing command")
    p.add_argument("--field", default=None, help="override the field: Q or Fp:<p>")
    p.add_argument("--corpus", nargs="?", const="", default=None, metavar="DIR",
                   help="run the regression corpus (bundled one if DIR is omitted)")
    p.add_argument("--parallel", action="store_true", help="evaluate commands concurrently")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.corpus is not None:
        try:
            ok, rows = corpus_run(args.corpus or None, max_index=args.max_index)
        except CorpusError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 1
        print(format_rows(rows))
        return 0 if ok else 1

    if args.session in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.session, encoding="utf-8") as fh:
            text = fh.read()
    try:
        session = parse_session(text)
    except SessionSyntaxError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    try:
        report = run(session, max_index=args.max_index, strict=args.strict,
                     field=args.field, parallel=args.parallel, timing=args.timing)
    except (AlgebraError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(format_text(report))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
