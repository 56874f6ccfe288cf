"""CLI command handlers for wahlflip.

Imports are deferred so that pandas and networkx load only for the commands
that use them. Each handler returns the process exit status.
"""


def run_hjcf(args):
    from .hjcf import run_hjcf as _run
    return _run(args)


def run_zerocf(args):
    from .zerocf import run_zerocf as _run
    return _run(args)


def run_presolve(args):
    from .presolve import run_presolve as _run
    return _run(args)


def run_mori(args):
    from .mori import run_mori as _run
    return _run(args)


def run_fan(args):
    from .fan import run_fan as _run
    return _run(args)


def run_antiflip(args):
    from .antiflip import run_antiflip as _run
    return _run(args)


def run_mmp(args):
    from .mmp import run_mmp as _run
    return _run(args)
