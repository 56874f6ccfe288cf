"""Minimal model program on dual graphs of surfaces with Wahl chains."""

from mmp.calculus import blow_down, blow_up, discrepancies, k_dot, reduce_chain
from mmp.dot import export_dot
from mmp.engine import (
    MAX_STEPS,
    Candidate,
    CandidateScan,
    Rejection,
    StepRecord,
    Trace,
    candidates,
    contract_cqs,
    contract_plus_cqs,
    is_nef_on_model,
    mmp_run,
    mmp_step,
)
from mmp.model import Curve, DualGraphModel, ValidationReport, contact_pattern, graph_validate, recognize_chain

__all__ = [
    "MAX_STEPS",
    "Candidate",
    "CandidateScan",
    "Curve",
    "DualGraphModel",
    "Rejection",
    "StepRecord",
    "Trace",
    "ValidationReport",
    "blow_down",
    "blow_up",
    "candidates",
    "contact_pattern",
    "contract_cqs",
    "contract_plus_cqs",
    "discrepancies",
    "export_dot",
    "graph_validate",
    "is_nef_on_model",
    "k_dot",
    "mmp_run",
    "mmp_step",
    "recognize_chain",
    "reduce_chain",
]
