"""Command-line entry point: ``orejordan --session FILE [--json] ...``."""

import argparse
import sys
from pathlib import Path

from ..errors import OreError
from .report import Report, dump_reports
from .session import Session, _error_payload, run_commands, run_session

# field used by --eval when no session file is given
DEFAULT_FIELD = "derivations = dx, dy\nvariables = x, y\n"


def build_parser():
    p = argparse.ArgumentParser(
        prog="orejordan",
        description="Exact left-ideal computations with linear PDE operators.")
    p.add_argument("--session", metavar="FILE",
                   help="session file with [field], [defs] and [run] sections")
    p.add_argument("--order", metavar="ORDER",
                   help='term order precedence such as "dx>dy" (overrides the file)')
    p.add_argument("--json", action="store_true",
                   help="print a JSON array of reports instead of text")
    p.add_argument("--pair-budget", type=int, metavar="N",
                   help="maximum number of S-pairs per Groebner completion")
    p.add_argument("--eval", action="append", default=[], metavar="COMMAND",
                   help="run COMMAND after the session (repeatable)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.pair_budget is not None and args.pair_budget < 1:
        print("error: --pair-budget must be positive", file=sys.stderr)
        return 1
    if not args.session and not args.eval:
        build_parser().print_usage(sys.stderr)
        print("error: give --session and/or --eval", file=sys.stderr)
        return 1

    if args.session:
        try:
            text = Path(args.session).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read {args.session}: {exc.strerror}", file=sys.stderr)
            return 1
        _, reports, code = run_session(text, args.order, args.pair_budget, args.eval)
    else:
        try:
            session = Session.from_field(DEFAULT_FIELD, args.order, args.pair_budget)
        except OreError as exc:
            reports = [Report("[field]", False, {}, _error_payload(exc), exc.exit_code)]
            code = exc.exit_code
        else:
            reports, code = run_commands(session, args.eval)

    if args.json:
        sys.stdout.write(dump_reports(reports))
    else:
        print("\n\n".join(r.render_text() for r in reports))
    return code


if __name__ == "__main__":
    sys.exit(main())
