"""Intersection calculus on the resolution model.

Blowing down a rational (-1)-curve E: every D meeting E gains (D.E)^2 in
self-intersection, and two such curves gain (D1.E)(D2.E) in their mutual
intersection. Blowing up is the exact inverse, given the multiplicities of
the new curve against its neighbors.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import networkx as nx

from errors import ConsistencyError, DomainError, UnsupportedConfiguration
from hjcf import CFrac, toric_data
from mmp.model import DualGraphModel, recognize_chain

LOGGER = logging.getLogger(__name__)


def discrepancies(g: DualGraphModel) -> dict[int, Fraction]:
    """Discrepancy of every chain curve, from the toric data of its chain."""
    out = {}
    for index, chain in enumerate(g.chains):
        w = recognize_chain(g.chain_entries(index))
        if w is None:
            raise DomainError(f"chain #{index} is not a Wahl chain")
        toric = toric_data(w.m * w.m, w.m * w.a - 1)
        out.update(zip(chain, toric.discrepancies))
    return out


def k_dot(g: DualGraphModel, curve_id: int) -> Fraction:
    """K.G on the singular surface, for a curve G outside the chains."""
    if g.chain_of(curve_id) is not None:
        raise DomainError(f"curve {curve_id} lies inside a contracted chain")
    curve = g.curve(curve_id)
    total = Fraction(2 * curve.genus - 2 - curve.self_int)
    found = discrepancies(g)
    for other, mult in g.neighbors(curve_id).items():
        if other in found:
            total -= found[other] * mult
    return total


def _add_mult(graph: nx.Graph, a: int, b: int, amount: int):
    current = graph.edges[a, b]["mult"] if graph.has_edge(a, b) else 0
    value = current + amount
    if value < 0:
        raise UnsupportedConfiguration(
            f"curves {a} and {b} would meet {value} times; the tracked pattern passes through a blown-up center non-generically")
    if value == 0:
        if graph.has_edge(a, b):
            graph.remove_edge(a, b)
    else:
        graph.add_edge(a, b, mult=value)


def blow_down(graph: nx.Graph, e: int) -> dict[int, int]:
    """Contract the rational (-1)-curve e; returns what it met."""
    node = graph.nodes[e]
    if node["self_int"] != -1 or node.get("genus", 0) != 0:
        raise ConsistencyError("blowdown of a curve that is not a rational (-1)-curve", {"curve": e, **node})
    meets = {other: graph.edges[e, other]["mult"] for other in graph.neighbors(e)}
    graph.remove_node(e)
    for other, mult in meets.items():
        graph.nodes[other]["self_int"] += mult * mult
    for (a, ma), (b, mb) in combinations(sorted(meets.items()), 2):
        _add_mult(graph, a, b, ma * mb)
    return meets


def blow_up(graph: nx.Graph, new_id: int, meets: dict[int, int], label: str = "") -> int:
    """Blow up the point where the curves in meets pass with the given multiplicities."""
    if new_id in graph:
        raise ConsistencyError("blowup id already in use", {"id": new_id})
    for (a, ma), (b, mb) in combinations(sorted(meets.items()), 2):
        _add_mult(graph, a, b, -ma * mb)
    graph.add_node(new_id, self_int=-1, genus=0, label=label)
    for other, mult in meets.items():
        graph.nodes[other]["self_int"] -= mult * mult
        graph.add_edge(new_id, other, mult=mult)
    return new_id


@dataclass
class BlowdownRecord:
    """One phase-(a) blowdown; key is the frozenset of its two region neighbors or ("on", x)."""
    curve: int
    key: object
    meets: dict[int, int]
    externals: dict[int, int] = field(default_factory=dict)


def region_key(left: int | None, right: int | None):
    if left is not None and right is not None:
        return frozenset((left, right))
    if left is None and right is None:
        return None
    return ("on", right if left is None else left)


def reduce_chain(entries: CFrac) -> tuple[list[int], CFrac]:
    """Blow down 1s, lowest position first; returns the positions used and the result."""
    current = list(entries)
    ops = []
    while 1 in current:
        p = current.index(1)
        ops.append(p)
        if p > 0:
            current[p - 1] -= 1
        if p + 1 < len(current):
            current[p + 1] -= 1
        del current[p]
    return ops, tuple(current)


def _replay_blowups(graph: nx.Graph, line: list[int], ops: list[int],
                    records: dict[object, list[BlowdownRecord]], next_id: int) -> tuple[list[int], int]:
    """Undo a chain reduction on the curves of line, inserting new curves.

    A corner blowup restores a live phase-(a) record with the same two
    neighbors exactly. An end blowup on a curve with a live record that
    carried external curves has no determined center and is refused.
    """
    line = list(line)
    for p in reversed(ops):
        if 0 < p < len(line):
            key = frozenset((line[p - 1], line[p]))
            live = records.get(key)
            if live:
                record = live.pop()
                meets = dict(record.meets)
                LOGGER.debug("restoring blowup of %d at corner %s", record.curve, sorted(key))
            else:
                meets = {line[p - 1]: 1, line[p]: 1}
        elif line and p in (0, len(line)):
            anchor = line[0] if p == 0 else line[-1]
            if any(r.externals for r in records.get(("on", anchor), [])):
                raise UnsupportedConfiguration(
                    f"blowup on end curve {anchor}: external curves pass through a contracted point on it "
                    "and the dual graph does not fix the new center")
            meets = {anchor: 1}
        else:
            raise ConsistencyError("blowup position outside the chain", {"position": p, "line": line})
        blow_up(graph, next_id, meets)
        line.insert(p, next_id)
        next_id += 1
    return line, next_id
