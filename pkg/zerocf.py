"""Zero continued fractions, polygon triangulations with prescribed degrees, and WW pairs.

A generalized chain [v_1, ..., v_r] evaluates to zero exactly when the
(r+1)-gon with vertices 0..r has a triangulation in which v_i triangles meet
at vertex i; vertex 0 then has 3r - 3 - sum(v_i) triangles.
"""

import logging
from collections import Counter
from dataclasses import dataclass

from errors import CapacityError, ConsistencyError
from hjcf import CFrac, cf_numerators

LOGGER = logging.getLogger(__name__)

MAX_POLYGON_VERTICES = 14


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of the polygon with vertices 0..n_vertices-1 in cyclic order."""
    n_vertices: int
    triangles: frozenset[tuple[int, int, int]]

    def __post_init__(self):
        n = self.n_vertices
        if len(self.triangles) != n - 2:
            raise ConsistencyError("wrong number of triangles", {"n": n, "triangles": len(self.triangles)})
        edges = Counter()
        for tri in self.triangles:
            if any(not 0 <= x < n for x in tri) or len(set(tri)) != 3:
                raise ConsistencyError("triangle off the polygon", {"triangle": tri})
            a, b, c = sorted(tri)
            edges.update([(a, b), (b, c), (a, c)])
        for (a, b), uses in edges.items():
            boundary = b - a == 1 or (a, b) == (0, n - 1)
            if uses != (1 if boundary else 2):
                raise ConsistencyError("triangles do not tile the polygon", {"edge": (a, b), "uses": uses})
        for i in range(n):
            if edges[(i, i + 1) if i + 1 < n else (0, n - 1)] != 1:
                raise ConsistencyError("boundary edge not covered", {"vertex": i})

    def degrees(self) -> tuple[int, ...]:
        """Number of triangles at each vertex 0..n-1."""
        counts = Counter(x for tri in self.triangles for x in tri)
        return tuple(counts[i] for i in range(self.n_vertices))

    def to_dict(self) -> dict:
        return {"n_vertices": self.n_vertices, "triangles": [list(t) for t in sorted(self.triangles)]}


@dataclass(frozen=True)
class WWReport:
    """All index pairs (1-based) whose lowering turns a chain into a zero continued fraction."""
    entries: CFrac
    pairs: tuple[tuple[int, int], ...]

    @property
    def falsified(self) -> bool:
        # at most two pairs can exist for a canonical chain
        return len(self.pairs) > 2

    def to_dict(self) -> dict:
        return {"entries": list(self.entries), "pairs": [list(p) for p in self.pairs]}


def is_zero_cf(cf: CFrac) -> bool:
    """True when cf evaluates to zero and every tail [v_i, ..., v_r], i >= 2, is positive.

    (1, 1, 1, 1, 1) has a zero numerator but divides by zero on the way, and
    (2, 1, 1, 1, 1, 2) passes through the negative tail [1, 1, 2]; neither
    comes from a triangulation.
    """
    if not cf or cf_numerators(cf)[0] != 0:
        return False
    tail, after = 1, 0
    for v in reversed(cf[1:]):
        tail, after = v * tail - after, tail
        # after is the previous tail, already positive
        if tail <= 0:
            return False
    return True


def lower(cf: CFrac, alpha: int, beta: int) -> CFrac:
    """The chain with entries alpha and beta (1-based) decreased by one."""
    out = list(cf)
    out[alpha - 1] -= 1
    out[beta - 1] -= 1
    return tuple(out)


def _clip_ears(polygon: list[int], need: dict[int, int], found: list) -> bool:
    # A vertex needing one triangle is an ear, so the triangulation is forced.
    if len(polygon) == 3:
        if any(need[x] != 1 for x in polygon if x != 0):
            return False
        found.append(tuple(sorted(polygon)))
        return True
    for pos, u in enumerate(polygon):
        if u != 0 and need[u] == 1:
            break
    else:
        return False
    left, right = polygon[pos - 1], polygon[(pos + 1) % len(polygon)]
    for w in (left, right):
        if w != 0 and need[w] <= 1:
            return False
        if w != 0:
            need[w] -= 1
    found.append(tuple(sorted((left, u, right))))
    return _clip_ears(polygon[:pos] + polygon[pos + 1:], need, found)


def triangulations_by_degrees(v: list[int]) -> list[Triangulation]:
    """Triangulations of the (r+1)-gon with v_i triangles at vertex i (i = 1..r)."""
    r = len(v)
    if r + 1 > MAX_POLYGON_VERTICES:
        raise CapacityError(f"{r + 1}-gon exceeds the {MAX_POLYGON_VERTICES}-vertex bound")
    if r < 2 or any(x < 1 for x in v):
        return []
    need = {i + 1: x for i, x in enumerate(v)}
    found = []
    if not _clip_ears(list(range(r + 1)), need, found):
        return []
    return [Triangulation(r + 1, frozenset(found))]


def ww_pairs(cf: CFrac) -> WWReport:
    """Test every pair alpha < beta for a zero lowering.

    The numerator of each lowering is found from prefix and suffix products
    shared across tests, so the scan is quadratic; a pair with a vanishing
    numerator still has to pass the tail test of is_zero_cf.
    """
    s = len(cf)

    # suffix rows e2^T A(c_s) ... A(c_{j+1}), j = 0..s
    suffix = [(0, 1)] * (s + 1)
    x, y = 0, 1
    for j in range(s - 1, -1, -1):
        x, y = -y, x + cf[j] * y
        suffix[j] = (x, y)

    # prefix columns A(c_j) ... A(c_1) (0, 1)^T, j = 0..s
    prefix = [(0, 1)]
    x, y = 0, 1
    for b in cf:
        x, y = y, -x + b * y
        prefix.append((x, y))

    pairs = []
    for ia in range(s):
        x, y = prefix[ia]
        x, y = y, -x + (cf[ia] - 1) * y
        for ib in range(ia + 1, s):
            b = cf[ib]
            px, py = y, -x + (b - 1) * y
            rx, ry = suffix[ib + 1]
            if rx * px + ry * py == 0 and is_zero_cf(lower(cf, ia + 1, ib + 1)):
                pairs.append((ia + 1, ib + 1))
            x, y = y, -x + b * y

    report = WWReport(tuple(cf), tuple(pairs))
    if report.falsified:
        LOGGER.warning("chain %s has %d WW pairs", list(cf), len(pairs))
    return report
