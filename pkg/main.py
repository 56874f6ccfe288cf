"""Main entry point for wahlflip."""

import logging
import sys

from cli import parse_args
from commands import run_antiflip, run_fan, run_hjcf, run_mmp, run_mori, run_presolve, run_zerocf
from errors import ConsistencyError, DomainError, UnsupportedConfiguration

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

COMMANDS = {
    "hjcf": run_hjcf,
    "zerocf": run_zerocf,
    "presolve": run_presolve,
    "mori": run_mori,
    "fan": run_fan,
    "antiflip": run_antiflip,
    "mmp": run_mmp,
}


def main(argv=None) -> int:
    """Run one command; 0 success, 1 bad input, 2 a failed identity or a falsified theorem."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    try:
        return COMMANDS[args.command](args) or 0
    except (DomainError, UnsupportedConfiguration) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except ConsistencyError as e:
        print(f"Consistency failure: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
