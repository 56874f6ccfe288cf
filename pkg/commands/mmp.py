"""Mmp command - run, validate or draw a dual-graph model."""

import logging
from pathlib import Path

from json_io import print_json, read_graph, write_trace
from mmp import candidates, export_dot, graph_validate, mmp_run

LOGGER = logging.getLogger(__name__)


def _write_dots(trace, directory: str):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    states = [trace.start] + [step.after for step in trace.steps]
    for i, model in enumerate(states):
        (out / f"step_{i:03d}.dot").write_text(export_dot(model, f"step_{i:03d}"), encoding="utf-8")
    LOGGER.info("wrote %d DOT files to %s", len(states), out)


def run_mmp(args):
    g = read_graph(args.graph)
    if args.action == "dot":
        print(export_dot(g), end="")
        return 0

    if args.action == "validate":
        report = graph_validate(g)
        scan = candidates(g) if report.ok else None
        if args.json:
            print_json({"validation": report.to_dict(), "candidates": scan.to_dict() if scan else None})
        else:
            if report.ok:
                print(f"valid: {len(g.curves)} curves, {len(g.chains)} chains")
                for index, w in sorted(report.wahl.items()):
                    print(f"  chain #{index} {w}")
                for c in scan.accepted:
                    print(f"  candidate curve {c.curve_id}: {c.neighborhood} {c.kind.value} K.C = {c.kc}")
                for r in scan.rejected:
                    print(f"  rejected curve {r.curve_id}: {r.reason}")
            else:
                for error in report.errors:
                    print(f"  invalid: {error}")
        return 0 if report.ok else 1

    trace = mmp_run(g)
    if args.trace:
        write_trace(trace, args.trace)
    if args.dot_dir:
        _write_dots(trace, args.dot_dir)
    if args.json:
        print_json(trace.to_dict())
    else:
        for i, step in enumerate(trace.steps, 1):
            after = "" if step.kc_after is None else f" -> {step.kc_after}"
            print(f"step {i}: curve {step.curve_id} {step.neighborhood} {step.kind.value} "
                  f"target {step.target or 'smooth'} K.C {step.kc_before}{after}")
        state = "terminated" if trace.terminated else "step ceiling reached"
        print(f"{len(trace.steps)} steps, {state}, K nef on model curves: {'yes' if trace.nef else 'no'}")
    return 0 if trace.terminated else 2
