"""Presolve command - extremal P-resolutions of one singularity, or a survey."""

import logging
import os

import pandas as pd
from dotenv import load_dotenv

from errors import DomainError
from hjcf import CQS
from json_io import print_json
from presolve import extremal_presolutions, survey

load_dotenv()

LOGGER = logging.getLogger(__name__)


def _int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {text!r}") from None


def _workers(args) -> int:
    if args.workers is not None:
        value = args.workers
    else:
        raw = os.environ.get("WAHLFLIP_WORKERS", "1")
        value = _int(raw, "WAHLFLIP_WORKERS")
    if value < 1:
        raise DomainError(f"worker count must be >= 1, got {value}")
    return value


def _run_single(args, delta: int, omega: int) -> int:
    s = CQS(delta, omega)
    found = extremal_presolutions(s)
    deltas = sorted({p.delta for p in found})
    if args.json:
        print_json({**s.to_dict(), "chain": list(s.dual().chain()), "resolutions": [p.to_dict() for p in found]})
    else:
        print(f"{s}: {len(found)} extremal P-resolution{'s' if len(found) != 1 else ''}")
        for p in found:
            alpha, beta = p.ww
            print(f"  pair ({alpha},{beta}): {{{p.sing1}, {p.sing2}}} c = {p.c} delta = {p.delta} K.C+ = {p.k_dot()}")
    if len(found) > 2 or len(deltas) > 1:
        LOGGER.warning("%s: %d resolutions with deltas %s", s, len(found), deltas)
        return 2
    return 0


def _run_survey(args, delta_max: int) -> int:
    report = survey(delta_max, include_trivial=args.include_trivial, workers=_workers(args))
    frame = report.to_frame()
    if args.csv:
        frame.to_csv(args.csv, index=False)
        LOGGER.info("wrote %d rows to %s", len(frame), args.csv)
    if args.json:
        print_json(report.to_dict())
    else:
        shown = frame.drop(columns=["trivial"]) if not args.include_trivial else frame
        with pd.option_context("display.max_rows", None, "display.width", 200):
            print(shown.to_string(index=False))
        print()
        print(f"singularities: {len(report.entries)}  resolutions: {report.resolution_count}  "
              f"doubles: {', '.join(str(s) for s in report.doubles) or 'none'}")
        print(f"falsifications: {len(report.falsifications)}")
    for f in report.falsifications:
        LOGGER.warning("falsification at %s: %s %s", f.cqs, f.kind, f.detail)
    return 2 if report.falsifications else 0


def run_presolve(args):
    values = args.values
    if values[0] == "survey":
        if len(values) != 2:
            raise DomainError("usage: presolve survey MAX")
        return _run_survey(args, _int(values[1], "MAX"))
    if len(values) != 2:
        raise DomainError("usage: presolve DELTA OMEGA")
    return _run_single(args, _int(values[0], "DELTA"), _int(values[1], "OMEGA"))
