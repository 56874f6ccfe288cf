"""The minimal model program on dual graphs.

A step takes a K-negative (-1)-curve meeting the marked chains in a k1A or k2A
pattern, blows the region down to the minimal resolution of the contracted
point, asks Mori's division for the flip, and blows back up to the flipped
configuration. Curve ids of surviving curves never change.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from errors import ConsistencyError, DomainError
from hjcf import CQS, CFrac, WahlData, cf_numerators, cqs_normalize
from mmp.calculus import BlowdownRecord, _replay_blowups, blow_down, k_dot, reduce_chain, region_key
from mmp.model import DualGraphModel, contact_pattern, graph_validate, recognize_chain
from mori import K1A, K2A, FlipResult, Kind, flip, flip_k1a, k1a_from, k2a_new

LOGGER = logging.getLogger(__name__)

MAX_STEPS = 100


def _cqs_of(entries: CFrac) -> CQS | None:
    num, den = cf_numerators(entries)
    if num < 1:
        raise ConsistencyError("chain is not negative definite", {"chain": entries})
    return None if num == 1 else CQS(num, den % num)


def _same_point(a: CQS | None, b: CQS | None) -> bool:
    if a is None or b is None:
        return a is b
    return cqs_normalize(a) == cqs_normalize(b)


@dataclass(frozen=True)
class Candidate:
    curve_id: int
    neighborhood: K1A | K2A
    kind: Kind
    kc: Fraction
    region: tuple[int, ...]  # chain curves of the neighborhood, in contraction order
    contact: object  # where the curve meets region: ("on", x) or a frozenset of two ids
    result: FlipResult

    def to_dict(self) -> dict:
        return {
            "curve": self.curve_id,
            "type": "k1A" if isinstance(self.neighborhood, K1A) else "k2A",
            "neighborhood": self.neighborhood.to_dict(),
            "kind": self.kind.value,
            "k_dot": str(self.kc),
        }


@dataclass(frozen=True)
class Rejection:
    curve_id: int
    reason: str

    def to_dict(self) -> dict:
        return {"curve": self.curve_id, "reason": self.reason}


@dataclass
class CandidateScan:
    accepted: list[Candidate] = field(default_factory=list)
    rejected: list[Rejection] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"accepted": [c.to_dict() for c in self.accepted], "rejected": [r.to_dict() for r in self.rejected]}


def _read_from(g: DualGraphModel, index: int, position: int) -> tuple[tuple[int, ...], WahlData]:
    """Chain ids starting at the contacted end, and the Wahl point read that way."""
    chain = g.chains[index]
    w = recognize_chain(g.chain_entries(index))
    if position == 0:
        return chain, w
    return tuple(reversed(chain)), w.conjugate()


def _classify(g: DualGraphModel, curve_id: int) -> Candidate | Rejection:
    curve = g.curve(curve_id)
    if curve.genus != 0:
        return Rejection(curve_id, f"genus {curve.genus} curve is not rational")
    pattern, reason = contact_pattern(g, curve_id)
    if pattern is None:
        return Rejection(curve_id, reason)
    contacts = g.contacts(curve_id)
    kc = k_dot(g, curve_id)
    if kc >= 0:
        return Rejection(curve_id, f"K-nonnegative (K.C = {kc})")

    if pattern == "k1a":
        (contact,) = contacts
        chain = g.chains[contact.chain]
        w = recognize_chain(g.chain_entries(contact.chain))
        try:
            neighborhood = k1a_from(w, contact.position + 1)
        except DomainError:
            return Rejection(curve_id, "contraction not negative definite")
        expected = neighborhood.k_dot_c()
        region, where = chain, ("on", chain[contact.position])
        result = flip_k1a(neighborhood)
    else:
        first, second = contacts
        ids1, w1 = _read_from(g, first.chain, first.position)
        ids2, w2 = _read_from(g, second.chain, second.position)
        try:
            neighborhood = k2a_new(w1.m, w1.a, w2.m, w2.a)
        except DomainError as e:
            return Rejection(curve_id, f"two-chain pattern is not a k2A neighborhood: {e}")
        expected = neighborhood.k_dot_c()
        region, where = tuple(reversed(ids1)) + ids2, frozenset((ids1[0], ids2[0]))
        result = flip(neighborhood)
    if kc != expected:
        raise ConsistencyError("K.C on the model differs from the neighborhood formula",
                               {"curve": curve_id, "model": kc, "formula": expected, "neighborhood": neighborhood})
    return Candidate(curve_id, neighborhood, result.kind, kc, region, where, result)


def candidates(g: DualGraphModel) -> CandidateScan:
    """Every rational (-1)-curve outside the chains, accepted or rejected with a reason."""
    scan = CandidateScan()
    for curve in g.curves:
        if curve.self_int != -1 or g.chain_of(curve.id) is not None:
            continue
        found = _classify(g, curve.id)
        if isinstance(found, Candidate):
            scan.accepted.append(found)
        else:
            LOGGER.debug("curve %d rejected: %s", curve.id, found.reason)
            scan.rejected.append(found)
    return scan


def contract_cqs(g: DualGraphModel, candidate: Candidate) -> CQS | None:
    """The point the candidate's curve contracts to, evaluated on the model."""
    n = candidate.neighborhood
    if isinstance(n, K1A):
        entries = list(-g.curve(cid).self_int for cid in candidate.region)
        entries[n.i - 1] -= 1
        expected = n.target
    else:
        cut = [i for i, cid in enumerate(candidate.region) if cid in candidate.contact][0] + 1
        entries = [-g.curve(cid).self_int for cid in candidate.region]
        entries.insert(cut, 1)
        expected = n.contraction_cqs()
    found = _cqs_of(tuple(entries))
    if not _same_point(found, expected):
        raise ConsistencyError("model contraction disagrees with the neighborhood",
                               {"curve": candidate.curve_id, "model": found, "neighborhood": expected})
    return found


def contract_plus_cqs(g: DualGraphModel, curve_id: int) -> CQS | None:
    """The point presented by a flipped curve together with the chains it meets."""
    contacts = g.contacts(curve_id)
    if len(contacts) > 2 or len({c.chain for c in contacts}) != len(contacts):
        raise DomainError(f"curve {curve_id} does not meet the chains in a chain pattern")
    pieces = []
    for contact in contacts:
        size = len(g.chains[contact.chain])
        if contact.mult != 1 or contact.position not in (0, size - 1):
            raise DomainError(f"curve {curve_id} meets chain #{contact.chain} away from its ends")
        entries = g.chain_entries(contact.chain)
        pieces.append(entries if contact.position == 0 else tuple(reversed(entries)))
    left = tuple(reversed(pieces[0])) if pieces else ()
    right = pieces[1] if len(pieces) > 1 else ()
    return _cqs_of(left + (-g.curve(curve_id).self_int,) + right)


def is_nef_on_model(g: DualGraphModel) -> bool:
    """K non-negative on every curve of the model outside the chains."""
    return all(k_dot(g, c.id) >= 0 for c in g.curves if g.chain_of(c.id) is None)


# ============================================================================
# Steps
# ============================================================================

@dataclass(frozen=True)
class StepRecord:
    curve_id: int
    kind: Kind
    neighborhood: K1A | K2A
    target: CQS | None
    before: DualGraphModel
    after: DualGraphModel
    kc_before: Fraction
    kc_after: Fraction | None
    plus_curve: int | None
    blowdowns: int
    blowups: int

    @property
    def ksq_change(self) -> int:
        """Change of K^2 on the resolution model; each blowdown adds one, each blowup removes one."""
        return self.blowdowns - self.blowups

    def to_dict(self) -> dict:
        return {
            "curve": self.curve_id,
            "kind": self.kind.value,
            "type": "k1A" if isinstance(self.neighborhood, K1A) else "k2A",
            "neighborhood": self.neighborhood.to_dict(),
            "target": self.target.to_dict() if self.target else None,
            "kc_before": str(self.kc_before),
            "kc_after": None if self.kc_after is None else str(self.kc_after),
            "plus_curve": self.plus_curve,
            "blowdowns": self.blowdowns,
            "blowups": self.blowups,
            "ksq_change": self.ksq_change,
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
        }


def _contract_region(graph, candidate: Candidate) -> tuple[list[int], dict, int]:
    """Phase (a): blow down the curve and every (-1)-curve that appears in the region."""
    records: dict[object, list[BlowdownRecord]] = {}

    def note(e, key, line_ids):
        meets = blow_down(graph, e)
        externals = {d: m for d, m in meets.items() if d not in line_ids}
        records.setdefault(key, []).append(BlowdownRecord(e, key, meets, externals))

    line = list(candidate.region)
    note(candidate.curve_id, candidate.contact, set(line))
    count = 1
    while True:
        spots = [p for p, cid in enumerate(line) if graph.nodes[cid]["self_int"] == -1]
        if not spots:
            break
        p = spots[0]
        left = line[p - 1] if p > 0 else None
        right = line[p + 1] if p + 1 < len(line) else None
        note(line[p], region_key(left, right), set(line))
        del line[p]
        count += 1
    for cid in line:
        if graph.nodes[cid]["self_int"] > -2:
            raise ConsistencyError("region did not reduce to a minimal resolution",
                                   {"curve": cid, "self_int": graph.nodes[cid]["self_int"]})
    return line, records, count


def _next_model(g: DualGraphModel, graph, removed_chains: set[int], new_chains, candidate: Candidate,
                plus_curve: int | None) -> DualGraphModel:
    chains = [chain for i, chain in enumerate(g.chains) if i not in removed_chains] + [c for c in new_chains if c]
    plus = {cid for cid in g.plus_marks if cid in graph}
    if plus_curve is not None:
        plus.add(plus_curve)
    mark = g.flip_mark if g.flip_mark != candidate.curve_id and g.flip_mark in graph else None
    model = DualGraphModel.from_graph(graph, chains, mark, plus)
    if mark is not None and not graph_validate(model).ok:
        LOGGER.info("flip mark %d no longer marks a neighborhood; dropped", mark)
        model = DualGraphModel.from_graph(graph, chains, None, plus)
    return model


def mmp_step(g: DualGraphModel, candidate: Candidate) -> tuple[DualGraphModel, StepRecord]:
    graph = g.to_graph()
    removed = {g.chain_of(cid)[0] for cid in candidate.region}
    result = candidate.result
    target = contract_cqs(g, candidate)

    line, records, downs = _contract_region(graph, candidate)
    reduced = tuple(-graph.nodes[cid]["self_int"] for cid in line)
    if not _same_point(_cqs_of(reduced) if reduced else None, target):
        raise ConsistencyError("blowdowns do not reach the contracted point", {"chain": reduced, "target": target})

    next_id = g.next_id()
    ups, plus_curve, kc_after = 0, None, None
    if result.kind is Kind.DIVISORIAL:
        if line and recognize_chain(reduced) not in (result.y_point, result.y_point.conjugate()):
            raise ConsistencyError("divisorial contraction is not the Wahl point of the flip",
                                   {"chain": reduced, "y": result.y_point})
        new_chains = [tuple(line)]
    else:
        pres = result.pres
        glued = pres.glued_chain()
        ops, shape = reduce_chain(glued)
        split = len(pres.sing2.chain())
        if shape != reduced:
            glued = tuple(reversed(glued))
            ops, shape = reduce_chain(glued)
            split = len(pres.sing1.chain())
        if shape != reduced:
            raise ConsistencyError("flipped chain does not reduce to the contracted point",
                                   {"glued": pres.glued_chain(), "reduced": reduced})
        line, after_id = _replay_blowups(graph, line, ops, records, next_id)
        ups = after_id - next_id
        rebuilt = tuple(-graph.nodes[cid]["self_int"] for cid in line)
        if rebuilt != glued:
            raise ConsistencyError("blowups did not rebuild the flipped chain", {"rebuilt": rebuilt, "glued": glued})
        plus_curve = line[split]
        new_chains = [tuple(line[:split]), tuple(line[split + 1:])]

    after = _next_model(g, graph, removed, new_chains, candidate, plus_curve)
    if len(g.curves) - len(after.curves) != downs - ups:
        raise ConsistencyError("curve count does not follow the blowdowns and blowups",
                               {"before": len(g.curves), "after": len(after.curves), "down": downs, "up": ups})
    report = graph_validate(after)
    if not report.ok:
        raise ConsistencyError("step produced an invalid model", {"errors": report.errors})
    if plus_curve is not None:
        kc_after = k_dot(after, plus_curve)
        if kc_after != result.pres.k_dot():
            raise ConsistencyError("K.C+ on the model differs from delta / (m1' m2')",
                                   {"model": kc_after, "formula": result.pres.k_dot()})
        if not _same_point(contract_plus_cqs(after, plus_curve), target):
            raise ConsistencyError("flipped configuration presents a different point", {"target": target})

    record = StepRecord(candidate.curve_id, result.kind, candidate.neighborhood, target, g, after,
                        candidate.kc, kc_after, plus_curve, downs, ups)
    LOGGER.info("curve %d: %s %s, K.C %s -> %s, %d down / %d up", candidate.curve_id, result.kind.value,
                candidate.neighborhood, candidate.kc, kc_after, downs, ups)
    return after, record


# ============================================================================
# Runs
# ============================================================================

@dataclass
class Trace:
    start: DualGraphModel
    steps: list[StepRecord] = field(default_factory=list)
    final: DualGraphModel | None = None
    terminated: bool = False
    nef: bool = False

    @property
    def ksq_change(self) -> int:
        return sum(s.ksq_change for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "start": self.start.to_dict(),
            "steps": [s.to_dict() for s in self.steps],
            "ksq_change": self.ksq_change,
            "final": self.final.to_dict() if self.final else None,
            "terminated": self.terminated,
            "nef_on_model": self.nef,
        }


def lowest_id(accepted: list[Candidate]) -> Candidate:
    return min(accepted, key=lambda c: c.curve_id)


def mmp_run(g: DualGraphModel, max_steps: int = MAX_STEPS,
            select: Callable[[list[Candidate]], Candidate] = lowest_id) -> Trace:
    report = graph_validate(g)
    if not report.ok:
        raise DomainError("invalid model: " + "; ".join(report.errors))
    trace = Trace(g)
    current = g
    while True:
        accepted = candidates(current).accepted
        if not accepted:
            trace.terminated = True
            break
        if len(trace.steps) >= max_steps:
            LOGGER.error("step ceiling %d reached with %d candidates left", max_steps, len(accepted))
            break
        current, record = mmp_step(current, select(accepted))
        trace.steps.append(record)
    trace.final = current
    trace.nef = trace.terminated and is_nef_on_model(current)
    return trace
