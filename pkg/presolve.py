"""Extremal P-resolutions of cyclic quotient singularities.

An extremal P-resolution of 1/Delta(1, Omega) has one exceptional curve C+
through at most two Wahl singularities. In the minimal resolution of the
partial resolution the curve has self-intersection -c and sits between the
two chains:

    [reverse(wahl(sing2)), c, wahl(sing1)] = Delta / Omega

The resolutions are read off the WW pairs of the dual chain Delta/(Delta - Omega).
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import pandas as pd

from errors import ConsistencyError, DomainError
from hjcf import CQS, SMOOTH, CFrac, WahlData, cf_numerators, hj_expand, toric_data
from zerocf import ww_pairs

LOGGER = logging.getLogger(__name__)

SURVEY_COLUMNS = ["Delta", "Omega", "chain", "alpha", "beta", "m1", "a1", "m2", "a2", "c", "delta", "trivial"]


def _side_length(w: WahlData) -> int:
    """Length of the chain of m/a (not of the Wahl chain)."""
    return 0 if w.is_smooth else len(hj_expand(w.m, w.a))


def _side_terms(w: WahlData) -> tuple[Fraction, Fraction]:
    """Pullback coefficient and discrepancy of the chain curve C+ meets.

    C+ meets the first curve of wahl(w); with n = m^2 that curve has beta_1 = ma - 1,
    so the pullback of C+ puts beta_1/n on it.
    """
    if w.is_smooth:
        return Fraction(0), Fraction(0)
    data = toric_data(w.m * w.m, w.m * w.a - 1)
    return Fraction(data.betas[0], data.n), data.discrepancies[0]


@dataclass(frozen=True)
class PResolution:
    """Extremal P-resolution: two Wahl points on C+ and the self-intersection -c."""
    sing1: WahlData  # m1 side, glued after C+
    sing2: WahlData  # m2 side, glued before C+
    c: int
    delta: int
    target: CQS
    ww: tuple[int, int]  # 1-based pair in the chain of Delta/(Delta - Omega)

    @classmethod
    def from_sides(cls, sing1: WahlData, sing2: WahlData, c: int,
                   ww: tuple[int, int] | None = None) -> "PResolution":
        """Build and check a resolution from its two sides and c."""
        m1, a1, m2, a2 = sing1.m, sing1.a, sing2.m, sing2.a
        delta = c * m1 * m2 - m1 * a2 - m2 * a1
        if c < 1 or delta <= 0:
            raise DomainError(f"not an extremal P-resolution: c={c}, delta={delta} for {sing1}, {sing2}")

        chain = tuple(reversed(sing2.chain())) + (c,) + sing1.chain()
        num, den = cf_numerators(chain)
        derivation = {"sing1": sing1, "sing2": sing2, "c": c, "chain": chain, "value": (num, den)}
        if num < 2 or den % num == 0:
            raise ConsistencyError("glued chain does not present a singular point", derivation)
        if num != m1 * m1 + m2 * m2 + delta * m1 * m2:
            raise ConsistencyError("glued chain has the wrong order", derivation)
        target = CQS(num, den % num)

        s = len(hj_expand(target.Delta, target.Delta - target.Omega))
        derived = (_side_length(sing2) + 1, s - _side_length(sing1))
        if ww is not None and tuple(ww) != derived:
            raise ConsistencyError("WW pair does not match the side lengths", {**derivation, "ww": ww, "derived": derived})
        if ww is None and derived not in ww_pairs(target.dual().chain()).pairs:
            raise ConsistencyError("side lengths do not give a WW pair", {**derivation, "derived": derived})

        p = cls(sing1, sing2, c, delta, target, derived)
        p._check_numerics()
        return p

    def _check_numerics(self):
        mu1, disc1 = _side_terms(self.sing1)
        mu2, disc2 = _side_terms(self.sing2)
        square = -self.c + mu1 + mu2
        k_dot = Fraction(self.c - 2) - disc1 - disc2
        if square != self.c_plus_square() or k_dot != self.k_dot():
            raise ConsistencyError("intersection numbers of C+ disagree with the closed formulas",
                                   {"square": square, "k_dot": k_dot, "resolution": self})

    @property
    def m1(self) -> int:
        return self.sing1.m

    @property
    def m2(self) -> int:
        return self.sing2.m

    def glued_chain(self) -> CFrac:
        return tuple(reversed(self.sing2.chain())) + (self.c,) + self.sing1.chain()

    def k_dot(self) -> Fraction:
        """K . C+ = delta / (m1 m2)."""
        return Fraction(self.delta, self.m1 * self.m2)

    def c_plus_square(self) -> Fraction:
        return Fraction(-self.target.Delta, (self.m1 * self.m2) ** 2)

    def reversed(self) -> "PResolution":
        """The same resolution seen from the inverse orientation."""
        s = len(hj_expand(self.target.Delta, self.target.Delta - self.target.Omega))
        alpha, beta = self.ww
        return PResolution(self.sing2, self.sing1, self.c, self.delta, self.target.inverse(),
                           (s + 1 - beta, s + 1 - alpha))

    def same_as(self, other: "PResolution") -> bool:
        """Equal up to reading the chain backwards."""
        return self == other or self == other.reversed()

    def singularities(self) -> tuple[WahlData, WahlData]:
        return self.sing1, self.sing2

    def to_dict(self) -> dict:
        alpha, beta = self.ww
        return {
            "alpha": alpha,
            "beta": beta,
            "m1": self.sing1.m,
            "a1": self.sing1.a,
            "m2": self.sing2.m,
            "a2": self.sing2.a,
            "c": self.c,
            "delta": self.delta,
            "target": self.target.to_dict(),
            "k_dot": str(self.k_dot()),
        }

    def __str__(self) -> str:
        return f"{{{self.sing1}, {self.sing2}}} c={self.c} delta={self.delta} -> {self.target}"


# ============================================================================
# Classification
# ============================================================================

def _side_from(cf: CFrac, derivation: dict) -> WahlData:
    if not cf:
        return SMOOTH
    num, den = cf_numerators(cf)
    try:
        return WahlData(num, den)
    except DomainError as e:
        raise ConsistencyError(f"slice does not give Wahl data: {e}", {**derivation, "slice": cf}) from e


def _extract(s: CQS, chain: CFrac, alpha: int, beta: int) -> PResolution:
    derivation = {"target": s, "chain": chain, "pair": (alpha, beta)}
    sing2 = _side_from(chain[:alpha - 1], derivation)
    sing1 = _side_from(tuple(reversed(chain[beta:])), derivation)
    delta = 1 if beta == alpha + 1 else cf_numerators(chain[alpha:beta - 1])[0]
    m1, a1, m2, a2 = sing1.m, sing1.a, sing2.m, sing2.a
    numerator = delta + m1 * a2 + m2 * a1
    if numerator % (m1 * m2):
        raise ConsistencyError("c is not an integer", {**derivation, "delta": delta, "sides": (sing1, sing2)})
    p = PResolution.from_sides(sing1, sing2, numerator // (m1 * m2), ww=(alpha, beta))
    if p.target != s or p.delta != delta:
        raise ConsistencyError("extracted resolution does not recombine to the input",
                               {**derivation, "delta": delta, "resolution": p})
    return p


def extremal_presolutions(s: CQS) -> list[PResolution]:
    """All extremal P-resolutions of s, one per WW pair of Delta/(Delta - Omega)."""
    chain = hj_expand(s.Delta, s.Delta - s.Omega)
    report = ww_pairs(chain)
    return [_extract(s, chain, alpha, beta) for alpha, beta in report.pairs]


# ============================================================================
# Survey
# ============================================================================

@dataclass(frozen=True)
class SurveyEntry:
    """A singularity (in its normalized orientation) with its resolutions."""
    cqs: CQS
    chain: CFrac
    resolutions: tuple[PResolution, ...]
    trivial: bool = False

    def to_dict(self) -> dict:
        return {
            "Delta": self.cqs.Delta,
            "Omega": self.cqs.Omega,
            "chain": list(self.chain),
            "pairs": [
                {k: v for k, v in p.to_dict().items() if k not in ("target", "k_dot")}
                for p in self.resolutions
            ],
        }


@dataclass(frozen=True)
class Falsification:
    cqs: CQS
    kind: str  # "count" or "delta"
    detail: str

    def to_dict(self) -> dict:
        return {**self.cqs.to_dict(), "kind": self.kind, "detail": self.detail}


@dataclass
class SurveyReport:
    delta_max: int
    include_trivial: bool = False
    entries: list[SurveyEntry] = field(default_factory=list)
    trivial: list[SurveyEntry] = field(default_factory=list)
    falsifications: list[Falsification] = field(default_factory=list)

    @property
    def resolution_count(self) -> int:
        return sum(len(e.resolutions) for e in self.entries)

    @property
    def doubles(self) -> list[CQS]:
        return [e.cqs for e in self.entries if len(e.resolutions) == 2]

    def to_records(self) -> list[dict]:
        rows = []
        for entry in self.entries + self.trivial:
            for p in entry.resolutions:
                alpha, beta = p.ww
                rows.append({
                    "Delta": entry.cqs.Delta,
                    "Omega": entry.cqs.Omega,
                    "chain": "[" + ",".join(map(str, entry.chain)) + "]",
                    "alpha": alpha,
                    "beta": beta,
                    "m1": p.sing1.m,
                    "a1": p.sing1.a,
                    "m2": p.sing2.m,
                    "a2": p.sing2.a,
                    "c": p.c,
                    "delta": p.delta,
                    "trivial": entry.trivial,
                })
        return rows

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.to_records(), columns=SURVEY_COLUMNS)

    def to_dict(self) -> dict:
        return {
            "delta_max": self.delta_max,
            "entries": [e.to_dict() for e in self.entries],
            "trivial": [e.to_dict() for e in self.trivial],
            "falsifications": [f.to_dict() for f in self.falsifications],
        }


def _check_theorems(entry: SurveyEntry) -> list[Falsification]:
    found = []
    if len(entry.resolutions) > 2:
        found.append(Falsification(entry.cqs, "count", f"{len(entry.resolutions)} resolutions"))
    deltas = sorted({p.delta for p in entry.resolutions})
    if len(deltas) > 1:
        found.append(Falsification(entry.cqs, "delta", f"deltas {deltas}"))
    return found


def _survey_shard(lo: int, hi: int, include_trivial: bool) -> SurveyReport:
    shard = SurveyReport(hi, include_trivial)
    for delta in range(lo, hi + 1):
        for omega in range(1, delta):
            if gcd(delta, omega) != 1 or pow(omega, -1, delta) < omega:
                continue
            trivial = omega == 1
            if trivial and not include_trivial:
                continue
            s = CQS(delta, omega)
            resolutions = tuple(sorted(extremal_presolutions(s), key=lambda p: p.ww))
            if not resolutions:
                continue
            entry = SurveyEntry(s, s.dual().chain(), resolutions, trivial)
            (shard.trivial if trivial else shard.entries).append(entry)
            shard.falsifications.extend(_check_theorems(entry))
    LOGGER.debug("surveyed Delta %d..%d: %d entries", lo, hi, len(shard.entries))
    return shard


def _shards(delta_max: int, count: int) -> list[tuple[int, int]]:
    bounds = [2 + (delta_max - 1) * i // count for i in range(count + 1)]
    return [(lo, hi - 1) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]


def survey(delta_max: int, include_trivial: bool = False, workers: int = 1) -> SurveyReport:
    """Classify every singularity with Delta <= delta_max and check both structure theorems.

    Falsifications are recorded in the report, never raised. Output is ordered
    by (Delta, Omega) and, within an entry, by the WW pair.
    """
    if delta_max < 2:
        raise DomainError(f"delta_max must be >= 2, got {delta_max}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")

    shards = []
    if workers == 1:
        shards.append(_survey_shard(2, delta_max, include_trivial))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_survey_shard, lo, hi, include_trivial)
                       for lo, hi in _shards(delta_max, workers * 4)]
            for future in as_completed(futures):
                shards.append(future.result())

    report = SurveyReport(delta_max, include_trivial)
    for shard in shards:
        report.entries.extend(shard.entries)
        report.trivial.extend(shard.trivial)
        report.falsifications.extend(shard.falsifications)
    report.entries.sort(key=lambda e: e.cqs)
    report.trivial.sort(key=lambda e: e.cqs)
    report.falsifications.sort(key=lambda f: (f.cqs, f.kind))
    for f in report.falsifications:
        LOGGER.warning("falsification at %s: %s (%s)", f.cqs, f.kind, f.detail)
    return report
