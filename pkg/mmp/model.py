"""Dual graph of a surface model: the minimal resolution with marked Wahl chains.

Curves carry minus their self-intersection in the pictures but the actual
self-intersection here. Edges carry intersection multiplicities; a value of
2 or more stands for tangency or several intersection points.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from errors import DomainError
from hjcf import CQS, CFrac, WahlData, cf_numerators, wahl_recognize

LOGGER = logging.getLogger(__name__)

NO_CHAIN_REASON = "meets no chain: contraction target smooth; not an extremal neighborhood of the implemented types"


@dataclass(frozen=True, order=True)
class Curve:
    id: int
    self_int: int
    genus: int = 0
    label: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "self_int": self.self_int, "genus": self.genus, "label": self.label}


@dataclass(frozen=True)
class Contact:
    """Where a curve meets a marked chain; position is 0-based in stored order."""
    chain: int
    position: int
    mult: int


@dataclass(frozen=True)
class DualGraphModel:
    curves: tuple[Curve, ...]
    edges: tuple[tuple[int, int, int], ...]  # (a, b, mult) with a < b
    chains: tuple[tuple[int, ...], ...] = ()
    flip_mark: int | None = None
    plus_marks: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def build(cls, curves, edges, chains=(), flip_mark=None, plus_marks=()) -> "DualGraphModel":
        """Normalized constructor: curves by id, edges with a < b and summed multiplicities."""
        merged: dict[tuple[int, int], int] = {}
        for a, b, mult in edges:
            key = (min(a, b), max(a, b))
            merged[key] = merged.get(key, 0) + mult
        return cls(
            tuple(sorted(curves)),
            tuple(sorted((a, b, m) for (a, b), m in merged.items() if m)),
            tuple(tuple(chain) for chain in chains),
            flip_mark,
            frozenset(plus_marks),
        )

    @cached_property
    def _by_id(self) -> dict[int, Curve]:
        return {c.id: c for c in self.curves}

    @cached_property
    def _adjacency(self) -> dict[int, dict[int, int]]:
        adjacency = {c.id: {} for c in self.curves}
        for a, b, mult in self.edges:
            adjacency.setdefault(a, {})[b] = mult
            adjacency.setdefault(b, {})[a] = mult
        return adjacency

    @cached_property
    def _chain_index(self) -> dict[int, tuple[int, int]]:
        return {cid: (i, pos) for i, chain in enumerate(self.chains) for pos, cid in enumerate(chain)}

    def curve(self, curve_id: int) -> Curve:
        try:
            return self._by_id[curve_id]
        except KeyError:
            raise DomainError(f"no curve with id {curve_id!r}") from None

    def has_curve(self, curve_id) -> bool:
        return curve_id in self._by_id

    def neighbors(self, curve_id: int) -> dict[int, int]:
        return dict(self._adjacency.get(curve_id, {}))

    def mult(self, a: int, b: int) -> int:
        return self._adjacency.get(a, {}).get(b, 0)

    def chain_of(self, curve_id: int) -> tuple[int, int] | None:
        """(chain index, position) of a chain curve, else None."""
        return self._chain_index.get(curve_id)

    def chain_entries(self, index: int) -> CFrac:
        return tuple(-self.curve(cid).self_int for cid in self.chains[index])

    def next_id(self) -> int:
        return max((c.id for c in self.curves), default=0) + 1

    def contacts(self, curve_id: int) -> list[Contact]:
        found = []
        for other, mult in sorted(self.neighbors(curve_id).items()):
            where = self.chain_of(other)
            if where is not None:
                found.append(Contact(where[0], where[1], mult))
        return found

    # ------------------------------------------------------------------
    # networkx bridge
    # ------------------------------------------------------------------

    def to_graph(self) -> nx.Graph:
        graph = nx.Graph()
        for c in self.curves:
            graph.add_node(c.id, self_int=c.self_int, genus=c.genus, label=c.label)
        for a, b, mult in self.edges:
            graph.add_edge(a, b, mult=mult)
        return graph

    @classmethod
    def from_graph(cls, graph: nx.Graph, chains=(), flip_mark=None, plus_marks=()) -> "DualGraphModel":
        curves = [Curve(n, data["self_int"], data.get("genus", 0), data.get("label", ""))
                  for n, data in graph.nodes(data=True)]
        edges = [(a, b, data["mult"]) for a, b, data in graph.edges(data=True)]
        return cls.build(curves, edges, chains, flip_mark, plus_marks)

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "curves": [c.to_dict() for c in self.curves],
            "edges": [{"a": a, "b": b, "mult": m} for a, b, m in self.edges],
            "chains": [list(chain) for chain in self.chains],
        }
        if self.flip_mark is not None:
            out["flip_mark"] = self.flip_mark
        if self.plus_marks:
            out["plus_marks"] = sorted(self.plus_marks)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DualGraphModel":
        if not isinstance(data, dict) or "curves" not in data:
            raise DomainError("graph JSON needs an object with a 'curves' list")
        try:
            curves = [Curve(int(c["id"]), int(c["self_int"]), int(c.get("genus", 0)), str(c.get("label", "")))
                      for c in data["curves"]]
            edges = [(int(e["a"]), int(e["b"]), int(e.get("mult", 1))) for e in data.get("edges", [])]
            chains = [[int(x) for x in chain] for chain in data.get("chains", [])]
            flip_mark = data.get("flip_mark")
            flip_mark = None if flip_mark is None else int(flip_mark)
            plus_marks = [int(x) for x in data.get("plus_marks", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"malformed graph JSON: {e!r}") from e
        if len({c.id for c in curves}) != len(curves):
            raise DomainError("graph JSON repeats a curve id")
        for a, b, mult in edges:
            if a == b:
                raise DomainError(f"edge ({a}, {b}) is a loop")
            if mult < 1:
                raise DomainError(f"edge ({a}, {b}) has multiplicity {mult} < 1")
        keys = [(min(a, b), max(a, b)) for a, b, _ in edges]
        if len(set(keys)) != len(keys):
            raise DomainError("graph JSON repeats an edge")
        return cls.build(curves, edges, chains, flip_mark, plus_marks)

    def canonical(self) -> "DualGraphModel":
        """Chains ordered by their smallest id, so equal models compare equal."""
        return DualGraphModel(self.curves, self.edges, tuple(sorted(self.chains, key=min)),
                              self.flip_mark, self.plus_marks)


def recognize_chain(entries: CFrac) -> WahlData | None:
    """The Wahl point whose chain is exactly entries, in this order."""
    if not entries or any(e < 2 for e in entries):
        return None
    num, den = cf_numerators(entries)
    return wahl_recognize(CQS(num, den))


def contact_pattern(g: DualGraphModel, curve_id: int) -> tuple[str | None, str]:
    """("k1a" | "k2a", "") for an implemented neighborhood pattern, else (None, reason)."""
    contacts = g.contacts(curve_id)
    if not contacts:
        return None, NO_CHAIN_REASON
    for contact in contacts:
        if contact.mult > 1:
            return None, f"meets chain #{contact.chain} with multiplicity {contact.mult}"
    per_chain: dict[int, list[Contact]] = {}
    for contact in contacts:
        per_chain.setdefault(contact.chain, []).append(contact)
    for index, found in sorted(per_chain.items()):
        if len(found) > 1:
            return None, f"meets chain #{index} at {len(found)} components"
    if len(per_chain) > 2:
        return None, f"meets {len(per_chain)} chains"
    if len(per_chain) == 1:
        return "k1a", ""
    for contact in contacts:
        if contact.position not in (0, len(g.chains[contact.chain]) - 1):
            return None, f"meets chain #{contact.chain} at interior curve {contact.position + 1}; k2A contacts must be end curves"
    return "k2a", ""


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    wahl: dict[int, WahlData] = field(default_factory=dict)  # chain index -> recognized point

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "errors": list(self.errors),
            "chains": {str(i): w.to_dict() for i, w in sorted(self.wahl.items())},
        }


def graph_validate(g: DualGraphModel) -> ValidationReport:
    report = ValidationReport()
    fail = report.errors.append

    for c in g.curves:
        if c.genus < 0:
            fail(f"curve {c.id} has negative genus {c.genus}")
    for a, b, mult in g.edges:
        if not g.has_curve(a) or not g.has_curve(b):
            fail(f"edge ({a}, {b}) names a missing curve")
        if a == b or mult < 1:
            fail(f"edge ({a}, {b}, {mult}) is not a valid intersection")

    seen: dict[int, int] = {}
    for index, chain in enumerate(g.chains):
        if not chain:
            fail(f"chain #{index} is empty")
            continue
        missing = [cid for cid in chain if not g.has_curve(cid)]
        if missing:
            fail(f"chain #{index} names missing curves {missing}")
            continue
        for cid in chain:
            if cid in seen:
                fail(f"curve {cid} lies on chains #{seen[cid]} and #{index}")
            seen[cid] = index
            if g.curve(cid).genus != 0:
                fail(f"chain #{index} curve {cid} is not rational")
        for i, a in enumerate(chain):
            for j in range(i + 1, len(chain)):
                expected = 1 if j == i + 1 else 0
                if g.mult(a, chain[j]) != expected:
                    fail(f"chain #{index}: curves {a} and {chain[j]} meet {g.mult(a, chain[j])} times, expected {expected}")
        w = recognize_chain(g.chain_entries(index))
        if w is None:
            fail(f"chain #{index} {list(g.chain_entries(index))} is not a Wahl chain")
        else:
            report.wahl[index] = w

    for a, b, _ in g.edges:
        ca, cb = seen.get(a), seen.get(b)
        if ca is not None and cb is not None and ca != cb:
            fail(f"chains #{ca} and #{cb} meet at curves {a}, {b}")

    if g.flip_mark is not None:
        if not g.has_curve(g.flip_mark):
            fail(f"flip mark {g.flip_mark} is not a curve")
        else:
            mark = g.curve(g.flip_mark)
            if mark.genus != 0 or mark.self_int != -1:
                fail(f"flip mark {mark.id} is not a rational (-1)-curve (self-intersection {mark.self_int}, genus {mark.genus})")
            elif mark.id in seen:
                fail(f"flip mark {mark.id} lies on a chain")
            else:
                pattern, reason = contact_pattern(g, mark.id)
                if pattern is None:
                    fail(f"flip mark {mark.id}: {reason}")
    for cid in g.plus_marks:
        if not g.has_curve(cid):
            fail(f"plus mark {cid} is not a curve")
    if report.errors:
        LOGGER.debug("model rejected: %s", "; ".join(report.errors))
    return report
