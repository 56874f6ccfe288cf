"""Hirzebruch-Jung continued fractions and the toric numerics of cyclic quotient singularities.

Chains are read left to right: ``hj_expand(n, a)`` is the chain [b_1, ..., b_r]
with n/a = b_1 - 1/(b_2 - ...). Reversing a chain of n/a gives the chain of
n/a' with a*a' = 1 mod n.

All arithmetic is exact (Python ints and ``fractions.Fraction``).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf, isqrt

from errors import ConsistencyError, DomainError

CFrac = tuple[int, ...]

# Value of a continued fraction whose denominator vanishes.
INFINITY = inf


# ============================================================================
# 2x2 integer matrices
# ============================================================================

@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix ((a, b), (c, d))."""
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def step(cls, entry: int) -> "Mat2":
        """The factor (0 1; -1 b) of one chain entry."""
        return cls(0, 1, -1, entry)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        """Inverse over the integers; only unimodular matrices qualify."""
        det = self.det()
        if det not in (1, -1):
            raise DomainError(f"matrix with determinant {det} has no integer inverse")
        return Mat2(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)


def cf_matrix(cf: CFrac) -> Mat2:
    """Product A(b_r) ... A(b_1) with A(b) = (0 1; -1 b); determinant 1."""
    product = Mat2.identity()
    for entry in cf:
        product = Mat2.step(entry) @ product
    return product


# ============================================================================
# Continued fractions
# ============================================================================

def _check_pair(n, a):
    if not isinstance(n, int) or not isinstance(a, int) or isinstance(n, bool) or isinstance(a, bool):
        raise DomainError(f"expected integers, got n={n!r}, a={a!r}")
    if not 0 < a < n:
        raise DomainError(f"need 0 < a < n, got n={n}, a={a}")
    if gcd(n, a) != 1:
        raise DomainError(f"need gcd(n, a) = 1, got gcd({n}, {a}) = {gcd(n, a)}")


def hj_expand(n: int, a: int) -> CFrac:
    """Hirzebruch-Jung expansion of n/a (all entries >= 2)."""
    _check_pair(n, a)
    entries = []
    while a:
        b = -(-n // a)
        entries.append(b)
        n, a = a, b * a - n
    return tuple(entries)


def cf_numerators(cf: CFrac) -> tuple[int, int]:
    """Exact (N, D) with value N/D, never dividing.

    N follows N_i = v_i N_{i-1} - N_{i-2} from N_{-1} = 0, N_0 = 1 and D is the
    numerator of [v_2, ..., v_r]. The pair is coprime (it is a matrix row of
    determinant 1), so N = D = 0 cannot happen.
    """
    m = cf_matrix(cf)
    return m.d, -m.c


def cf_evaluate(cf: CFrac) -> Fraction | float:
    """Value of a (generalized) continued fraction; ``INFINITY`` when D = 0."""
    num, den = cf_numerators(cf)
    if den == 0:
        return INFINITY
    return Fraction(num, den)


def convergents(cf: CFrac) -> list[tuple[int, int]]:
    """Convergents (p_i, q_i) of [b_1, ..., b_i] for i = 0..r.

    Starts from (p_0, q_0) = (1, 0) and (p_{-1}, q_{-1}) = (0, -1), so that
    p_{i-1} q_i - p_i q_{i-1} = 1 for every i >= 1.
    """
    prev, cur = (0, -1), (1, 0)
    out = [cur]
    for b in cf:
        prev, cur = cur, (b * cur[0] - prev[0], b * cur[1] - prev[1])
        out.append(cur)
    return out


# ============================================================================
# Cyclic quotient singularities and Wahl singularities
# ============================================================================

@dataclass(frozen=True, order=True)
class CQS:
    """Cyclic quotient singularity 1/Delta(1, Omega)."""
    Delta: int
    Omega: int

    def __post_init__(self):
        _check_pair(self.Delta, self.Omega)

    def inverse(self) -> "CQS":
        """Same singularity, chain read backwards."""
        return CQS(self.Delta, pow(self.Omega, -1, self.Delta))

    def dual(self) -> "CQS":
        return CQS(self.Delta, self.Delta - self.Omega)

    def normalized(self) -> "CQS":
        return cqs_normalize(self)

    def chain(self) -> CFrac:
        return hj_expand(self.Delta, self.Omega)

    def to_dict(self) -> dict:
        return {"Delta": self.Delta, "Omega": self.Omega}

    def __str__(self) -> str:
        return f"1/{self.Delta}(1,{self.Omega})"


def cqs_normalize(s: CQS) -> CQS:
    """Orientation representative (Delta, min(Omega, Omega^-1))."""
    return CQS(s.Delta, min(s.Omega, pow(s.Omega, -1, s.Delta)))


@dataclass(frozen=True, order=True)
class WahlData:
    """The Wahl singularity 1/m^2(1, ma - 1); (1, 1) is a smooth point."""
    m: int
    a: int

    def __post_init__(self):
        m, a = self.m, self.a
        if not isinstance(m, int) or not isinstance(a, int) or m < 1 or a < 1:
            raise DomainError(f"Wahl data must be positive integers, got ({m!r}, {a!r})")
        if gcd(m, a) != 1:
            raise DomainError(f"Wahl data needs gcd(m, a) = 1, got ({m}, {a})")
        if a > m or (a == m and m != 1):
            raise DomainError(f"Wahl data needs 1 <= a < m (or m = a = 1), got ({m}, {a})")

    @property
    def is_smooth(self) -> bool:
        return self.m == 1

    def conjugate(self) -> "WahlData":
        """(m, m - a): the same point with its chain reversed."""
        if self.is_smooth:
            return self
        return WahlData(self.m, self.m - self.a)

    def chain(self) -> CFrac:
        """Resolution chain, empty for a smooth point."""
        return () if self.is_smooth else wahl_chain(self)

    def cqs(self) -> CQS | None:
        if self.is_smooth:
            return None
        return CQS(self.m * self.m, self.m * self.a - 1)

    def to_dict(self) -> dict:
        return {"m": self.m, "a": self.a}

    def __str__(self) -> str:
        return "smooth" if self.is_smooth else f"({self.m},{self.a})"


SMOOTH = WahlData(1, 1)


def _wahl_chain_inductive(m: int, a: int) -> CFrac:
    # Every Wahl chain grows from [4] by [e_1+1, ..., e_r, 2] or [2, e_1, ..., e_r+1];
    # walk (m, a) back to (2, 1) and replay the moves.
    moves = []
    while m > 2:
        if 2 * a < m:
            moves.append("left")
            m, a = m - a, a
        else:
            moves.append("right")
            m, a = a, 2 * a - m
    if (m, a) != (2, 1):
        raise ConsistencyError("Wahl recursion did not reach [4]", {"m": m, "a": a})
    chain = [4]
    for move in reversed(moves):
        if move == "left":
            chain = [chain[0] + 1, *chain[1:], 2]
        else:
            chain = [2, *chain[:-1], chain[-1] + 1]
    return tuple(chain)


def wahl_chain(w: WahlData) -> CFrac:
    """Resolution chain of 1/m^2(1, ma - 1), computed two ways and compared."""
    if w.is_smooth:
        raise DomainError("a smooth point has no resolution chain")
    direct = hj_expand(w.m * w.m, w.m * w.a - 1)
    inductive = _wahl_chain_inductive(w.m, w.a)
    if direct != inductive:
        raise ConsistencyError(
            "Wahl chain disagrees with its inductive construction",
            {"m": w.m, "a": w.a, "direct": direct, "inductive": inductive},
        )
    return direct


def wahl_recognize(s: CQS) -> WahlData | None:
    """(m, a) with s = 1/m^2(1, ma - 1) in this exact orientation, else None."""
    m = isqrt(s.Delta)
    if m < 2 or m * m != s.Delta or (s.Omega + 1) % m:
        return None
    a = (s.Omega + 1) // m
    if not 0 < a < m or gcd(m, a) != 1:
        return None
    return WahlData(m, a)


# ============================================================================
# Toric data and K^2
# ============================================================================

@dataclass(frozen=True)
class ToricData:
    """Integer sequences alpha, beta of the chain of n/a and the discrepancies."""
    n: int
    a: int
    chain: CFrac
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    discrepancies: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "chain": list(self.chain),
            "alphas": list(self.alphas),
            "betas": list(self.betas),
            "discrepancies": [str(c) for c in self.discrepancies],
        }


def toric_data(n: int, a: int) -> ToricData:
    chain = hj_expand(n, a)
    r = len(chain)

    alphas = [1]
    previous = 0
    for b in chain[:-1]:
        previous, current = alphas[-1], b * alphas[-1] - previous
        alphas.append(current)

    betas = [1]
    following = 0
    for b in reversed(chain[1:]):
        following, current = betas[-1], b * betas[-1] - following
        betas.append(current)
    betas.reverse()

    if betas[0] != a or len(alphas) != r:
        raise ConsistencyError("toric sequences out of step", {"n": n, "a": a, "betas": betas})

    discrepancies = tuple(Fraction(al + be, n) - 1 for al, be in zip(alphas, betas))
    for c in discrepancies:
        if not -1 < c <= 0:
            raise ConsistencyError("discrepancy outside (-1, 0]", {"n": n, "a": a, "c": c})
    return ToricData(n, a, chain, tuple(alphas), tuple(betas), discrepancies)


def ksq_minres(n: int, a: int) -> Fraction:
    """K^2 of the minimal resolution germ: 2r + 2 - sum b_i - (2 + a + a')/n."""
    chain = hj_expand(n, a)
    a_inv = pow(a, -1, n)
    return Fraction(2 * len(chain) + 2 - sum(chain)) - Fraction(2 + a + a_inv, n)


def ksq_pair(n: int, a: int) -> Fraction:
    """(K + D')^2 with D' the strict transform of (x_1 = 0): 2r - sum b_i - a/n."""
    chain = hj_expand(n, a)
    return Fraction(2 * len(chain) - sum(chain)) - Fraction(a, n)


def solve_chain(chain: CFrac, rhs: list) -> tuple[Fraction, ...]:
    """Solve M x = rhs for the intersection matrix of a chain.

    M has -b_i on the diagonal and 1 next to it; it is negative definite for a
    canonical chain, so the elimination never divides by zero.
    """
    size = len(chain)
    if size != len(rhs):
        raise DomainError("right-hand side does not match the chain length")
    upper = [Fraction(0)] * size
    reduced = [Fraction(0)] * size
    for i, b in enumerate(chain):
        pivot = Fraction(-b) - (upper[i - 1] if i else 0)
        if pivot == 0:
            raise ConsistencyError("singular intersection matrix", {"chain": chain})
        upper[i] = Fraction(1) / pivot
        reduced[i] = (Fraction(rhs[i]) - (reduced[i - 1] if i else 0)) / pivot
    solution = [Fraction(0)] * size
    for i in reversed(range(size)):
        solution[i] = reduced[i] - (upper[i] * solution[i + 1] if i + 1 < size else 0)
    return tuple(solution)


def ksq_oracle(n: int, a: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    """K^2 from the intersection matrix, with K = sum k_i E_i and K.E_i = b_i - 2."""
    chain = hj_expand(n, a)
    adjunction = [b - 2 for b in chain]
    coefficients = solve_chain(chain, adjunction)
    return sum(k * rhs for k, rhs in zip(coefficients, adjunction)), coefficients
