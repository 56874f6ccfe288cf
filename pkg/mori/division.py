"""Mori's division algorithm for k2A neighborhoods and the flips it computes.

From d(1) = m1, d(2) = m2 and c(1) = a1, c(2) = m2 - a2 both sequences follow
x(i+1) = delta x(i) - x(i-1) until d(k) <= 0. The flip has singular points
(d(k-1), c(k-1)) and (-d(k), c(k)); d(k) = 0 is a divisorial contraction.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from errors import ConsistencyError, DomainError
from hjcf import CQS, SMOOTH, WahlData, cqs_normalize
from mori.neighborhoods import K1A, K2A, k1a_degenerations, k2a_new
from presolve import PResolution

LOGGER = logging.getLogger(__name__)


class Kind(str, Enum):
    FLIPPING = "flipping"
    DIVISORIAL = "divisorial"


@dataclass(frozen=True)
class MoriData:
    """Result of the division; d and c hold indices 1..k+2."""
    n: K2A
    d: tuple[int, ...]
    c: tuple[int, ...]
    k: int
    kind: Kind
    m1p: int
    a1p: int
    m2p: int
    a2p: int | None  # only when m2p > 0

    @property
    def delta(self) -> int:
        return self.n.delta

    def sequence(self) -> "MoriSequence":
        return MoriSequence(self)

    def exceptional_locus(self) -> tuple["LocusComponent", ...]:
        """Components of (F_k = F_{k+1} = 0) over the axes of the base.

        For k = 3 the locus lies over u1 = 0 only; for k > 3 a second
        component lies over u2 = 0.
        """
        if self.kind is Kind.DIVISORIAL:
            raise DomainError(f"{self.n} contracts a divisor; the locus is not a family of curves")
        m1, m2, delta = self.n.m1, self.n.m2, self.delta
        parts = [LocusComponent(1, m2, delta * m1 - m2)]
        if self.k > 3:
            parts.append(LocusComponent(2, m1, delta * m2 - m1))
        if any(part.p_power < 0 for part in parts):
            raise ConsistencyError("exceptional locus has a negative exponent", {"k2a": self.n, "parts": parts})
        return tuple(parts)

    def to_dict(self) -> dict:
        return {
            "k2a": self.n.to_dict(),
            "d": list(self.d),
            "c": list(self.c),
            "k": self.k,
            "kind": self.kind.value,
            "m1p": self.m1p,
            "a1p": self.a1p,
            "m2p": self.m2p,
            "a2p": self.a2p,
        }


@dataclass(frozen=True)
class LocusComponent:
    """(q_i^q_power + u_j p_i^p_power = 0) inside (u_i = 0) of chart U_i, j the other index."""
    axis: int
    q_power: int
    p_power: int

    def to_dict(self) -> dict:
        return {"axis": self.axis, "q_power": self.q_power, "p_power": self.p_power}

    def __str__(self) -> str:
        i, j = self.axis, 3 - self.axis
        return f"(u{i} = 0): q{i}^{self.q_power} + u{j} p{i}^{self.p_power} = 0"


class MoriSequence:
    """Two-sided extension of d and c.

    Past k+2 and before 1 both follow the plain recursion; for delta = 1 they
    are 5-periodic.
    """

    def __init__(self, data: MoriData):
        self.delta = data.delta
        self.k = data.k
        self._d = {i + 1: v for i, v in enumerate(data.d)}
        self._c = {i + 1: v for i, v in enumerate(data.c)}

    def d(self, i: int) -> int:
        return self._extend(self._d, i)

    def c(self, i: int) -> int:
        return self._extend(self._c, i)

    def _extend(self, seq: dict[int, int], i: int) -> int:
        if self.delta == 1:
            return seq[(i - 1) % 5 + 1]
        if i not in seq:
            if i < 1:
                for j in range(min(seq) - 1, i - 1, -1):
                    seq[j] = self.delta * seq[j + 1] - seq[j + 2]
            else:
                for j in range(max(seq) + 1, i + 1):
                    seq[j] = self.delta * seq[j - 1] - seq[j - 2]
        return seq[i]


def mori_division(n: K2A) -> MoriData:
    delta, Delta = n.delta, n.Delta
    d = [n.m1, n.m2]
    c = [n.a1, n.m2 - n.a2]
    while d[-1] > 0:
        d.append(delta * d[-1] - d[-2])
        c.append(delta * c[-1] - c[-2])
    k = len(d)

    derivation = {"k2a": n, "d": tuple(d), "c": tuple(c)}
    if k < 3:
        raise ConsistencyError("division stopped before index 3", derivation)
    for i in range(k - 1):
        if d[i] ** 2 + d[i + 1] ** 2 - delta * d[i] * d[i + 1] != Delta:
            raise ConsistencyError("Delta is not conserved along d", {**derivation, "i": i + 1})
    for i in range(k - 1):
        if d[i] * c[i + 1] - d[i + 1] * c[i] != -delta:
            raise ConsistencyError("d and c drifted apart", {**derivation, "i": i + 1})

    # d(k+1) = -d(k-1), d(k+2) = -d(k), and the same for c
    d.extend([-d[k - 2], -d[k - 1]])
    c.extend([-c[k - 2], -c[k - 1]])

    m1p, m2p = d[k - 2], -d[k - 1]
    a1p = c[k - 2] % m1p or m1p
    if m2p > 0:
        kind, a2p = Kind.FLIPPING, c[k - 1] % m2p or m2p
        if Delta != m1p ** 2 + m2p ** 2 + delta * m1p * m2p:
            raise ConsistencyError("flip side has the wrong order", derivation)
    else:
        kind, a2p = Kind.DIVISORIAL, None
        if m1p != delta or c[k - 1] != -1 or Delta != m1p ** 2:
            raise ConsistencyError("divisorial identities fail", derivation)
    if m1p == 1:
        a1p = 1
    if m2p == 1:
        a2p = 1
    return MoriData(n, tuple(d), tuple(c), k, kind, m1p, a1p, m2p, a2p)


@dataclass(frozen=True)
class FlipResult:
    """Outcome of contracting a K-negative curve: a flip or a divisorial contraction."""
    kind: Kind
    delta: int
    target: CQS | None  # None when Y is smooth
    k_dot_before: Fraction
    pres: PResolution | None = None
    y_point: WahlData | None = None

    @property
    def k_dot_after(self) -> Fraction | None:
        return self.pres.k_dot() if self.pres else None

    def same_as(self, other: "FlipResult") -> bool:
        if self.kind != other.kind or self.delta != other.delta:
            return False
        if self.kind is Kind.FLIPPING:
            return self.pres.same_as(other.pres)
        mine = self.y_point.cqs()
        theirs = other.y_point.cqs()
        if mine is None or theirs is None:
            return mine is theirs
        return cqs_normalize(mine) == cqs_normalize(theirs)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "delta": self.delta,
            "target": self.target.to_dict() if self.target else None,
            "k_dot_before": str(self.k_dot_before),
            "k_dot_after": str(self.k_dot_after) if self.pres else None,
            "pres": self.pres.to_dict() if self.pres else None,
            "y_point": self.y_point.to_dict() if self.y_point else None,
        }


def _flip_from(data: MoriData) -> FlipResult:
    n = data.n
    contracted = n.contraction_cqs()
    expected = None if contracted is None else cqs_normalize(contracted)
    if contracted is not None and cqs_normalize(CQS(n.Delta, n.omega_formula())) != expected:
        raise ConsistencyError("Omega formula disagrees with the contraction chain",
                               {"k2a": n, "omega": n.omega_formula(), "chain": contracted})

    if data.kind is Kind.DIVISORIAL:
        y = SMOOTH if data.m1p == 1 else WahlData(data.m1p, data.a1p)
        produced = y.cqs()
        if (None if produced is None else cqs_normalize(produced)) != expected:
            raise ConsistencyError("divisorial point is not the contraction", {"k2a": n, "y": y})
        return FlipResult(Kind.DIVISORIAL, n.delta, contracted, n.k_dot_c(), y_point=y)

    sing1 = WahlData(data.m1p, data.a1p)
    sing2 = WahlData(data.m2p, data.a2p)
    numerator = n.delta + sing1.m * sing2.a + sing2.m * sing1.a
    if numerator % (sing1.m * sing2.m):
        raise ConsistencyError("flipped curve has no integral self-intersection", {"mori": data})
    pres = PResolution.from_sides(sing1, sing2, numerator // (sing1.m * sing2.m))
    if pres.delta != n.delta or cqs_normalize(pres.target) != expected:
        raise ConsistencyError("flip does not present the contraction", {"k2a": n, "pres": pres})
    return FlipResult(Kind.FLIPPING, n.delta, pres.target, n.k_dot_c(), pres=pres)


def flip(n: K2A) -> FlipResult:
    result = _flip_from(mori_division(n))
    LOGGER.debug("%s -> %s", n, result.kind.value)
    return result


def flip_k1a(k: K1A) -> FlipResult:
    """Flip of a k1A through its two k2A degenerations, which must agree."""
    first, second = k1a_degenerations(k)
    f0, f1 = flip(first), flip(second)
    if not f0.same_as(f1):
        raise ConsistencyError("k1A degenerations flip differently",
                               {"k1a": k, "x0": first, "x1": second, "flip0": f0, "flip1": f1})
    return replace(f0, k_dot_before=k.k_dot_c())


# ============================================================================
# Mutation and the initial k2A of a P-resolution
# ============================================================================

def is_admissible(data: MoriData, j: int) -> bool:
    """Whether the shift j gives a k2A of the same family."""
    k = data.k
    if data.delta == 1:
        allowed = {1} if data.kind is Kind.DIVISORIAL else {0, 1}
        return j % 5 in allowed
    excluded = {k - 1, k, k + 1}
    if data.kind is Kind.DIVISORIAL:
        excluded.add(k + 2)
    if j in excluded:
        return False
    seq = data.sequence()
    return seq.d(j) > 0 and seq.d(j + 1) > 0


def admissible_shifts(data: MoriData, lo: int, hi: int) -> list[int]:
    return [j for j in range(lo, hi + 1) if is_admissible(data, j)]


def mutate(n: K2A, j: int) -> K2A:
    """The k2A (d(j), c(j), d(j+1), d(j+1) - c(j+1)) of the shift j."""
    data = mori_division(n)
    if not is_admissible(data, j):
        raise DomainError(f"shift {j} is not admissible for {n} (k = {data.k})")
    seq = data.sequence()
    m1, m2 = seq.d(j), seq.d(j + 1)
    a1, a2 = seq.c(j) % m1 or m1, (m2 - seq.c(j + 1)) % m2 or m2
    return k2a_new(m1, a1, m2, a2)


def initial_k2as(p: PResolution) -> tuple[K2A, K2A]:
    """The two k2A whose flip is p, seeding the cones next to the axes."""
    delta = p.delta
    m1p, a1p, m2p, a2p = p.sing1.m, p.sing1.a, p.sing2.m, p.sing2.a

    def build(small_m, small_a, other_m):
        m2 = small_m
        a2 = small_m - small_a if small_m > 1 else 1
        m1 = delta * small_m + other_m
        numerator = delta + m1 * m2 - a2 * m1
        if numerator % m2:
            raise ConsistencyError("initial k2A is not integral", {"pres": p, "m1": m1, "m2": m2, "a2": a2})
        return m1, numerator // m2, m2, a2

    first = k2a_new(*build(m1p, a1p, m2p))
    second = k2a_new(*build(m2p, a2p, m1p))
    for n in (first, second):
        result = flip(n)
        if result.kind is not Kind.FLIPPING or not result.pres.same_as(p):
            raise ConsistencyError("initial k2A does not flip back", {"pres": p, "k2a": n, "flip": result})
    return first, second
