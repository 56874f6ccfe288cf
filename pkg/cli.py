"""Command-line interface for wahlflip."""

import argparse
import sys


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors print the usage to stderr and exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def pair(text: str) -> tuple[int, int]:
    """Parse 'A,B' into two integers."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected A,B, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers, got {text!r}") from None


def int_list(text: str) -> list[int]:
    """Parse 'V1,...,Vr' into integers."""
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _json_flag(parser):
    parser.add_argument("--json", action="store_true", help="Print machine-readable JSON instead of text")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="wahlflip",
        description="Extremal P-resolutions, 3-fold flips of k1A/k2A neighborhoods, antiflip families and a dual-graph MMP",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")
    subparsers = parser.add_subparsers(dest="command", help="Available commands", parser_class=ArgumentParser)

    # hjcf subcommand
    hjcf_parser = subparsers.add_parser(
        "hjcf",
        help="Hirzebruch-Jung continued fractions, K^2 and toric data",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    hjcf_sub = hjcf_parser.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    for action, text in (
        ("expand", "Expand N/A into its HJ continued fraction"),
        ("ksq", "K^2 of the minimal resolution of 1/N(1,A)"),
        ("toric", "alpha/beta sequences and discrepancies of 1/N(1,A)"),
    ):
        sub = hjcf_sub.add_parser(action, help=text)
        sub.add_argument("n", type=int, metavar="N")
        sub.add_argument("a", type=int, metavar="A")
        _json_flag(sub)
    wahl_parser = hjcf_sub.add_parser("wahl", help="Wahl chain of 1/M^2(1, MA-1)")
    wahl_parser.add_argument("m", type=int, metavar="M")
    wahl_parser.add_argument("a", type=int, metavar="A")
    _json_flag(wahl_parser)

    # zerocf subcommand
    zerocf_parser = subparsers.add_parser(
        "zerocf",
        help="Zero continued fractions and polygon triangulations",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    zerocf_sub = zerocf_parser.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    check_parser = zerocf_sub.add_parser("check", help="Test V1,...,Vr for zero and list its triangulations")
    check_parser.add_argument("values", type=int_list, metavar="V1,...,Vr")
    _json_flag(check_parser)

    # presolve subcommand
    presolve_parser = subparsers.add_parser(
        "presolve",
        help="Extremal P-resolutions of 1/DELTA(1,OMEGA), or a survey up to MAX\n"
             "  presolve DELTA OMEGA [--json]\n"
             "  presolve survey MAX [--include-trivial] [--csv PATH] [--workers N]",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    presolve_parser.add_argument("values", nargs="+", metavar="DELTA OMEGA | survey MAX")
    presolve_parser.add_argument("--include-trivial", action="store_true",
                                 help="Survey: also list the Omega = 1 family")
    presolve_parser.add_argument("--csv", type=str, default=None, help="Survey: write one row per resolution to PATH")
    presolve_parser.add_argument("--workers", type=int, default=None,
                                 help="Survey: worker threads (default: $WAHLFLIP_WORKERS or 1)")
    _json_flag(presolve_parser)

    # mori subcommand
    mori_parser = subparsers.add_parser(
        "mori",
        help="Mori's division: flips of k2A/k1A neighborhoods and exchange data",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    mori_sub = mori_parser.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    for action, text in (
        ("flip", "Flip or divisorial contraction of the k2A (M1,A1),(M2,A2)"),
        ("exchange", "Exchange-relation bookkeeping of the k2A (M1,A1),(M2,A2)"),
    ):
        sub = mori_sub.add_parser(action, help=text)
        for name in ("m1", "a1", "m2", "a2"):
            sub.add_argument(name, type=int, metavar=name.upper())
        _json_flag(sub)
    mori_sub.choices["exchange"].add_argument("--depth", type=int, default=2,
                                              help="Materialize indices 1-D..k+1+D (default: 2)")
    k1a_parser = mori_sub.add_parser("k1a", help="Flip of the k1A on (M,A) meeting chain position I")
    k1a_parser.add_argument("m", type=int, metavar="M")
    k1a_parser.add_argument("a", type=int, metavar="A")
    k1a_parser.add_argument("i", type=int, metavar="I")
    _json_flag(k1a_parser)

    # fan subcommand
    fan_parser = subparsers.add_parser(
        "fan",
        help="Fan of the universal antiflip family and its members",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    fan_sub = fan_parser.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    fan_build_parser = fan_sub.add_parser("build", help="Rays and cones for a given delta")
    fan_build_parser.add_argument("delta", type=int, metavar="DELTA")
    fan_build_parser.add_argument("--depth", type=int, required=True, help="Largest ray index")
    fan_build_parser.add_argument("--dot", action="store_true", help="Print a DOT picture of the fan")
    _json_flag(fan_build_parser)
    family_parser = fan_sub.add_parser("family", help="Members of the family of an extremal P-resolution")
    family_parser.add_argument("Delta", type=int, metavar="DELTA")
    family_parser.add_argument("Omega", type=int, metavar="OMEGA")
    family_parser.add_argument("--pair", type=pair, required=True, metavar="ALPHA,BETA",
                               help="WW pair selecting the resolution")
    family_parser.add_argument("--depth", type=int, required=True, help="Largest ray index")
    _json_flag(family_parser)

    # antiflip subcommand
    antiflip_parser = subparsers.add_parser(
        "antiflip",
        help="Terminal antiflip test for axial multiplicities (A1, A2)",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    antiflip_parser.add_argument("Delta", type=int, metavar="DELTA")
    antiflip_parser.add_argument("Omega", type=int, metavar="OMEGA")
    antiflip_parser.add_argument("--pair", type=pair, required=True, metavar="A,B",
                                 help="WW pair selecting the resolution")
    antiflip_parser.add_argument("--ax", type=int, nargs=2, required=True, metavar=("A1", "A2"),
                                 help="Axial multiplicities")
    antiflip_parser.add_argument("--boundary-divisor", choices=["yes", "no"], required=True,
                                 help="Whether the general anticanonical divisor condition holds")
    _json_flag(antiflip_parser)

    # mmp subcommand
    mmp_parser = subparsers.add_parser(
        "mmp",
        help="Minimal model program on a dual-graph JSON model",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    mmp_sub = mmp_parser.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    run_parser = mmp_sub.add_parser("run", help="Flip and contract until K is nef on the model")
    run_parser.add_argument("graph", type=str, metavar="GRAPH.json")
    run_parser.add_argument("--trace", type=str, default=None, help="Write the step trace JSON to this path")
    run_parser.add_argument("--dot-dir", type=str, default=None, help="Write a DOT file per model state here")
    _json_flag(run_parser)
    validate_parser = mmp_sub.add_parser("validate", help="Check a model and list its candidates")
    validate_parser.add_argument("graph", type=str, metavar="GRAPH.json")
    _json_flag(validate_parser)
    dot_parser = mmp_sub.add_parser("dot", help="Print a DOT picture of a model")
    dot_parser.add_argument("graph", type=str, metavar="GRAPH.json")

    return parser


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(args=(argv or ["--help"]))

    # Show help if no command provided
    if args.command is None:
        parser.print_help(sys.stderr)
        sys.exit(1)

    return args
