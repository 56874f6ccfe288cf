"""Integer bookkeeping of the exchange relations F_{i-1} F_{i+1} = r_i + q_i F_i^delta.

Monomials in (z, u1, u2) are exponent vectors. Only degrees, weights and
divisor coefficients are computed here, never the polynomials F_i.
"""

from dataclasses import dataclass

from errors import ConsistencyError, DomainError
from mori.division import MoriSequence, mori_division
from mori.neighborhoods import K2A

Exponent = tuple[int, int, int]

ONE: Exponent = (0, 0, 0)


def _add(*vectors):
    return tuple(sum(parts) for parts in zip(*vectors))


def _scale(factor: int, vector):
    return tuple(factor * x for x in vector)


def _in_lattice(vector: tuple[int, int], generator: tuple[int, int]) -> bool:
    """Whether vector is an integer multiple of generator."""
    gx, gy = generator
    vx, vy = vector
    if (gx, gy) == (0, 0):
        return (vx, vy) == (0, 0)
    if vx * gy - vy * gx:
        return False
    return (vx % gx == 0) if gx else (vy % gy == 0)


@dataclass(frozen=True)
class ExchangeData:
    n: K2A
    delta: int
    k: int
    lo: int
    hi: int
    d: dict[int, int]
    f: dict[int, tuple[int, int]]
    g: dict[int, int]
    q: dict[int, Exponent]
    r: dict[int, Exponent]
    weights: dict[int, int]
    divisor_restrictions: dict  # index or "z" -> coefficients over (l1, l2, C)
    class_residues: dict[int, tuple[tuple[int, int], tuple[int, int]]]

    def to_dict(self) -> dict:
        def listed(mapping):
            return {str(i): (list(v) if isinstance(v, tuple) else v) for i, v in sorted(mapping.items(), key=lambda kv: str(kv[0]))}
        return {
            "k2a": self.n.to_dict(),
            "delta": self.delta,
            "k": self.k,
            "range": [self.lo, self.hi],
            "g": listed(self.g),
            "f": listed(self.f),
            "q": listed(self.q),
            "r": listed(self.r),
            "weights": listed(self.weights),
            "divisor_restrictions": listed(self.divisor_restrictions),
            "class_residues": {str(i): [list(v), list(rel)] for i, (v, rel) in sorted(self.class_residues.items())},
        }


def _f_sequence(delta: int, lo: int, hi: int) -> dict[int, tuple[int, int]]:
    f = {0: (0, 1), 1: (-1, 0), 2: (0, -1), 3: (1, 0)}
    if delta == 1:
        f[4] = (1, 1)
        return {i: f[i % 5] for i in range(lo, hi + 1)}
    for i in range(4, hi + 1):
        f[i] = _add(_scale(delta, f[i - 1]), _scale(-1, f[i - 2]))
    for i in range(-1, lo - 1, -1):
        f[i] = _add(_scale(delta, f[i + 1]), _scale(-1, f[i + 2]))
    return {i: f[i] for i in range(lo, hi + 1)}


def exchange_data(n: K2A, depth: int) -> ExchangeData:
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    data = mori_division(n)
    seq = MoriSequence(data)
    delta, k = data.delta, data.k
    m1, m2, m1p, m2p = n.m1, n.m2, data.m1p, data.m2p
    lo, hi = 1 - depth, k + 1 + depth
    first, last = lo - 1, hi + 1

    def special(i: int) -> int:
        # delta = 1 repeats every 5 steps and k = 3 there
        return (i - 1) % 5 + 1 if delta == 1 else i

    d = {i: seq.d(i) for i in range(first, last + 1)}
    f = _f_sequence(delta, first, last)

    q, r = {}, {}
    for i in range(first, last + 1):
        s = special(i)
        q[i] = {1: (0, 1, 0), 2: (0, 0, 1), k: (m2p, 0, 0), k + 1: (m1p, 0, 0)}.get(s, ONE)
        if s == 1:
            r[i] = (m1, 0, 0)
        elif s == 2:
            r[i] = (m2, 0, 0)
        elif s in (k, k + 1):
            r[i] = (0, *f[i])
        else:
            r[i] = (d[i], *f[i])

    for i in range(lo, hi + 1):
        if _add(q[i - 1], q[i + 1], _scale(delta, r[i])) != _add(r[i - 1], r[i + 1]):
            raise ConsistencyError("exchange coefficients violate q q r^delta = r r",
                                   {"k2a": n, "i": i, "q": (q[i - 1], q[i + 1]), "r": (r[i - 1], r[i], r[i + 1])})

    g = {1: 0, 2: 1}
    for i in range(3, max(hi, k + 1) + 1):
        g[i] = delta * g[i - 1] - g[i - 2]

    def wt(e: Exponent) -> int:
        return e[0] + m1 * e[1] + m2 * e[2]

    weights = {2: 0, 3: m2}
    for i in range(3, last):
        weights[i + 1] = wt(r[i]) - weights[i - 1]
    for i in range(2, first, -1):
        weights[i - 1] = wt(r[i]) - weights[i + 1]
    for i in range(lo, hi + 1):
        if wt(q[i]) + delta * weights[i] != wt(r[i]):
            raise ConsistencyError("weights are not balanced", {"k2a": n, "i": i, "weights": weights})
    expected = {0: m1, 1: 0, k + 1: m2 * g[k] + m2p, k + 2: m2 * g[k + 1] + m1p + delta * m2p}
    expected.update({i: g[i - 1] * m2 for i in range(2, k + 1)})
    for i, value in expected.items():
        if i in weights and weights[i] != value:
            raise ConsistencyError("weight of F_i off its closed form", {"k2a": n, "i": i, "weight": weights[i], "expected": value})

    restrictions = {"z": (1, 1, 1), 0: (0, m1, m1), 1: (0, m2, 0)}
    for i in range(2, k + 1):
        restrictions[i] = (d[i - 1], 0, m2 * g[i - 1])
    restrictions[k + 1] = (0, m2p, m2 * g[k] + m2p)
    restrictions[k + 2] = (0, m1p + delta * m2p, m2 * g[k + 1] + m1p + delta * m2p)
    for i in range(3, k):
        if _add(restrictions[i - 1], restrictions[i + 1]) != _scale(delta, restrictions[i]):
            raise ConsistencyError("divisor restrictions break the recursion", {"k2a": n, "i": i})
    for i in range(0, k + 3):
        if restrictions[i][2] != expected[i]:
            raise ConsistencyError("C-coefficient differs from the weight", {"k2a": n, "i": i})

    residues = _class_residues(seq, delta, k)
    return ExchangeData(n, delta, k, lo, hi, {i: d[i] for i in range(lo, hi + 1)},
                        {i: f[i] for i in range(lo, hi + 1)}, g,
                        {i: q[i] for i in range(lo, hi + 1)}, {i: r[i] for i in range(lo, hi + 1)},
                        {i: weights[i] for i in range(lo, hi + 1)}, restrictions, residues)


def _class_residues(seq: MoriSequence, delta: int, k: int) -> dict:
    """-K as (-c(i+1), c(i)) in Z^2 / Z(-d(i+1), d(i)), for i = 1..k+1.

    Consecutive bases differ by L_{i+2} = delta L_{i+1} - L_i, except
    L_{k+1} = -L_{k-1} and L_{k+2} = -L_k.
    """
    residues = {}
    for i in range(1, k + 2):
        residues[i] = ((-seq.c(i + 1), seq.c(i)), (-seq.d(i + 1), seq.d(i)))
    for i in range(1, k + 1):
        (x, y), (rx, ry) = residues[i]
        if i <= k - 2:
            moved, moved_rel = (delta * x + y, -x), (delta * rx + ry, -rx)
        else:
            moved, moved_rel = (y, -x), (ry, -rx)
        target, relation = residues[i + 1]
        if moved_rel != relation or not _in_lattice((moved[0] - target[0], moved[1] - target[1]), relation):
            raise ConsistencyError("anticanonical class changes between bases", {"i": i, "moved": moved, "target": target})
    return residues
