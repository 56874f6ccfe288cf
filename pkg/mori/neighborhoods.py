"""Numerical data of k2A and k1A extremal neighborhoods.

A k2A neighborhood has two Wahl points (m1, a1), (m2, a2) on the flipping
curve C, read so that C meets the first curve of each Wahl chain. A k1A
neighborhood has one Wahl point and C meets the i-th curve of its chain.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from errors import ConsistencyError, DomainError
from hjcf import CQS, SMOOTH, CFrac, WahlData, cf_numerators, cqs_normalize


def _contraction(chain: CFrac) -> CQS | None:
    """Singularity presented by a chain that may contain 1s; None when smooth."""
    num, den = cf_numerators(chain)
    if num < 1 or den < 0:
        raise ConsistencyError("chain does not contract to a point", {"chain": chain, "value": (num, den)})
    if num == 1:
        return None
    return CQS(num, den % num)


@dataclass(frozen=True)
class K2A:
    """k2A data with m1 >= m2."""
    m1: int
    a1: int
    m2: int
    a2: int

    @property
    def delta(self) -> int:
        return self.m1 * self.a2 + self.m2 * self.a1 - self.m1 * self.m2

    @property
    def Delta(self) -> int:
        return self.m1 ** 2 + self.m2 ** 2 - self.delta * self.m1 * self.m2

    @property
    def sing1(self) -> WahlData:
        return WahlData(self.m1, self.a1)

    @property
    def sing2(self) -> WahlData:
        return WahlData(self.m2, self.a2)

    def contraction_chain(self) -> CFrac:
        """reverse(wahl(sing1)) + [1] + wahl(sing2); smooth sides contribute nothing."""
        return tuple(reversed(self.sing1.chain())) + (1,) + self.sing2.chain()

    def contraction_cqs(self) -> CQS | None:
        """The point C contracts to, read off the chain; None for a smooth point."""
        target = _contraction(self.contraction_chain())
        size = 1 if target is None else target.Delta
        if size != self.Delta:
            raise ConsistencyError("contraction chain has the wrong order",
                                   {"k2a": self, "chain": self.contraction_chain(), "Delta": size})
        return target

    def omega_formula(self) -> int:
        """Omega = (m2 - delta m1)(m2 - a2) + m1 a1 - 1 mod Delta."""
        return ((self.m2 - self.delta * self.m1) * (self.m2 - self.a2) + self.m1 * self.a1 - 1) % self.Delta

    def k_dot_c(self) -> Fraction:
        return Fraction(-self.delta, self.m1 * self.m2)

    def to_dict(self) -> dict:
        return {
            "m1": self.m1, "a1": self.a1, "m2": self.m2, "a2": self.a2,
            "delta": self.delta, "Delta": self.Delta, "k_dot": str(self.k_dot_c()),
        }

    def __str__(self) -> str:
        return f"k2A({self.m1},{self.a1},{self.m2},{self.a2})"


def _check_side(m, a, name: str):
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (m, a)) or m < 1 or a < 1:
        raise DomainError(f"{name}: need integers >= 1, got ({m!r}, {a!r})")
    if gcd(m, a) != 1:
        raise DomainError(f"{name}: gcd({m}, {a}) = {gcd(m, a)} != 1")
    if a > m or (a == m and m != 1):
        raise DomainError(f"{name}: need 1 <= a < m (or m = a = 1), got ({m}, {a})")


def k2a_new(m1: int, a1: int, m2: int, a2: int) -> K2A:
    """Validated k2A data, sides swapped so that m1 >= m2."""
    _check_side(m1, a1, "side 1")
    _check_side(m2, a2, "side 2")
    if m1 < m2:
        m1, a1, m2, a2 = m2, a2, m1, a1
    n = K2A(m1, a1, m2, a2)
    if n.delta <= 0:
        raise DomainError(f"delta = m1 a2 + m2 a1 - m1 m2 = {n.delta} is not positive for {n}")
    if n.Delta <= 0:
        raise DomainError(f"Delta = m1^2 + m2^2 - delta m1 m2 = {n.Delta} is not positive for {n}")
    return n


@dataclass(frozen=True)
class K1A:
    """k1A data: the Wahl point and the chain position i (1-based) C meets."""
    wahl: WahlData
    i: int
    m0: int
    a0: int
    m2: int
    a2: int
    Delta: int
    Omega: int
    delta: int

    @property
    def m1(self) -> int:
        return self.wahl.m

    @property
    def a1(self) -> int:
        return self.wahl.a

    def chain(self) -> CFrac:
        return self.wahl.chain()

    def lowered_chain(self) -> CFrac:
        """[e_1, ..., e_i - 1, ..., e_r], the chain of the contraction."""
        chain = list(self.chain())
        chain[self.i - 1] -= 1
        return tuple(chain)

    @property
    def target(self) -> CQS | None:
        if self.Delta == 1:
            return None
        return CQS(self.Delta, self.Omega)

    def k_dot_c(self) -> Fraction:
        return Fraction(-self.delta, self.m1)

    def ray_direction(self) -> tuple[Fraction, Fraction]:
        square = self.m1 * self.m1
        return Fraction(self.m2, square), Fraction(self.m0, square)

    def to_dict(self) -> dict:
        return {
            "m1": self.m1, "a1": self.a1, "i": self.i,
            "m0": self.m0, "a0": self.a0, "m2": self.m2, "a2": self.a2,
            "Delta": self.Delta, "Omega": self.Omega, "delta": self.delta,
            "k_dot": str(self.k_dot_c()),
        }

    def __str__(self) -> str:
        return f"k1A({self.m1},{self.a1}; i={self.i})"


def _slice_data(cf: CFrac) -> tuple[int, int]:
    """(m, a) with m/(m - a) = cf, or (1, 1) for an empty slice."""
    if not cf:
        return 1, 1
    num, den = cf_numerators(cf)
    return num, num - den


def k1a_from(w: WahlData, i: int) -> K1A:
    if w.is_smooth:
        raise DomainError("a k1A neighborhood needs a singular Wahl point")
    chain = w.chain()
    if not isinstance(i, int) or not 1 <= i <= len(chain):
        raise DomainError(f"chain position {i!r} outside 1..{len(chain)} for {w}")
    m1, a1 = w.m, w.a
    m0, a0 = _slice_data(tuple(reversed(chain[i:])))
    m2, a2 = _slice_data(chain[:i - 1])

    Delta = m1 * m1 - m0 * m2
    omega_raw = m1 * a1 - m0 * (m2 - a2) - 1
    derivation = {"wahl": w, "i": i, "m0": m0, "a0": a0, "m2": m2, "a2": a2, "Delta": Delta}
    if Delta < 1:
        raise DomainError(f"chain position {i} of {w} does not give a k1A neighborhood: "
                          f"the lowered chain is not negative definite (Delta = {Delta})")
    if (m0 + m2) % m1:
        raise ConsistencyError("m1 does not divide m0 + m2", derivation)
    delta = (m0 + m2) // m1
    if a0 + (m2 - a2) != delta * a1:
        raise ConsistencyError("a0 + (m2 - a2) != delta a1", derivation)
    if (m0 - m2 * (m1 * a1 - 1)) % (m1 * m1):
        raise ConsistencyError("m0 is not m2(m1 a1 - 1) mod m1^2", derivation)

    lowered = list(chain)
    lowered[i - 1] -= 1
    if cf_numerators(tuple(lowered)) != (Delta, omega_raw):
        raise ConsistencyError("lowered chain does not evaluate to Delta/Omega",
                               {**derivation, "lowered": lowered, "Omega": omega_raw})
    omega = omega_raw % Delta if Delta > 1 else 0
    return K1A(w, i, m0, a0, m2, a2, Delta, omega, delta)


def k1a_degenerations(k: K1A) -> tuple[K2A, K2A]:
    """The k2A neighborhoods X0 (points m0, m1) and X1 (points m1, m2).

    Each side is read as seen from its own curve; when the naive reading is
    not K-negative one side is conjugated, and the result must present the
    same singularity as k.
    """
    expected = None if k.target is None else cqs_normalize(k.target)
    first = _oriented(k, WahlData(k.m1, k.a1), _side(k.m0, k.a0), expected)
    second = _oriented(k, WahlData(k.m1, k.a1), _side(k.m2, k.a2), expected)
    return first, second


def _side(m: int, a: int) -> WahlData:
    return SMOOTH if m == 1 else WahlData(m, a)


def _oriented(k: K1A, first: WahlData, second: WahlData, expected: CQS | None) -> K2A:
    variants = [
        (first, second),
        (first.conjugate(), second),
        (first, second.conjugate()),
        (first.conjugate(), second.conjugate()),
    ]
    matches = []
    for side1, side2 in variants:
        try:
            n = k2a_new(side1.m, side1.a, side2.m, side2.a)
        except DomainError:
            continue
        if n.delta != k.delta or n.Delta != k.Delta:
            continue
        target = n.contraction_cqs()
        if (None if target is None else cqs_normalize(target)) != expected:
            continue
        if n not in matches:
            matches.append(n)
    if len(matches) != 1:
        raise ConsistencyError("degeneration needs exactly one matching orientation",
                               {"k1a": k, "sides": (first, second), "matches": matches})
    return matches[0]
