"""Tests for continued fractions, Wahl data and toric numerics."""

import random
from fractions import Fraction
from math import gcd

import pytest

from errors import DomainError
from hjcf import (
    CQS,
    INFINITY,
    Mat2,
    WahlData,
    cf_evaluate,
    cf_matrix,
    cf_numerators,
    convergents,
    cqs_normalize,
    hj_expand,
    ksq_minres,
    ksq_oracle,
    ksq_pair,
    solve_chain,
    toric_data,
    wahl_chain,
    wahl_recognize,
)

EXPANSIONS = [
    ((25, 9), (3, 5, 2)),
    ((9, 2), (5, 2)),
    ((4, 1), (4,)),
    ((7, 5), (2, 2, 3)),
    ((94, 53), (2, 5, 2, 4, 2)),
]

WAHL_CHAINS = [
    ((2, 1), (4,)),
    ((3, 1), (5, 2)),
    ((3, 2), (2, 5)),
    ((5, 2), (3, 5, 2)),
    ((5, 3), (2, 5, 3)),
    ((4, 1), (6, 2, 2)),
]


def _coprime_pairs(n_max):
    for n in range(2, n_max + 1):
        for a in range(1, n):
            if gcd(n, a) == 1:
                yield n, a


# ============================================================================
# Expansion and evaluation
# ============================================================================

class TestExpansion:
    @pytest.mark.parametrize("pair,chain", EXPANSIONS)
    def test_known_expansions(self, pair, chain):
        assert hj_expand(*pair) == chain

    @pytest.mark.parametrize("n,a", [(6, 4), (5, 0), (5, 5), (3, 7), (4, -1)])
    def test_rejects_bad_input(self, n, a):
        with pytest.raises(DomainError):
            hj_expand(n, a)

    def test_rejects_non_integers(self):
        with pytest.raises(DomainError):
            hj_expand(9.0, 2)

    def test_round_trip_exhaustive(self):
        for n, a in _coprime_pairs(2000):
            chain = hj_expand(n, a)
            assert all(b >= 2 for b in chain)
            assert cf_evaluate(chain) == Fraction(n, a)

    def test_round_trip_random(self):
        rng = random.Random(20240601)
        for _ in range(10_000):
            n = rng.randint(2, 100_000)
            a = rng.randint(1, n - 1)
            if gcd(n, a) != 1:
                continue
            assert cf_evaluate(hj_expand(n, a)) == Fraction(n, a)

    def test_reversal_is_inverse(self):
        for n, a in _coprime_pairs(200):
            assert tuple(reversed(hj_expand(n, a))) == hj_expand(n, pow(a, -1, n))

    def test_conjugate_pair_sums(self):
        # chains of n/a and n/(n - a): both entry excesses equal r + s - 1
        for n, a in _coprime_pairs(500):
            first, second = hj_expand(n, a), hj_expand(n, n - a)
            r, s = len(first), len(second)
            assert sum(b - 1 for b in first) == r + s - 1
            assert sum(b - 1 for b in second) == r + s - 1


class TestEvaluate:
    def test_generalized_values(self):
        assert cf_evaluate((2, 5, 1, 3, 5, 2)) == Fraction(94, 55)
        assert cf_evaluate((2, 1, 2)) == 0
        assert cf_evaluate((4,)) == 4

    def test_infinite_value(self):
        assert cf_evaluate((1,)) == 1
        assert cf_evaluate((0,)) == 0
        assert cf_evaluate((1, 0)) == INFINITY

    def test_numerators_are_unreduced_matrix_row(self):
        assert cf_numerators((5, 2)) == (9, 2)
        assert cf_numerators(()) == (1, 0)

    def test_matrix_is_unimodular(self):
        rng = random.Random(7)
        for _ in range(200):
            cf = tuple(rng.randint(-3, 7) for _ in range(rng.randint(0, 9)))
            assert cf_matrix(cf).det() == 1

    def test_partfrac_determinant(self):
        rng = random.Random(11)
        for _ in range(10_000):
            cf = tuple(rng.randint(1, 9) for _ in range(rng.randint(1, 12)))
            conv = convergents(cf)
            assert len(conv) == len(cf) + 1
            for (p0, q0), (p1, q1) in zip(conv, conv[1:]):
                assert p0 * q1 - p1 * q0 == 1

    def test_convergent_values(self):
        conv = convergents((3, 5, 2))
        assert conv[1] == (3, 1)
        assert conv[2] == (14, 5)
        assert conv[3] == (25, 9)


class TestMat2:
    def test_inverse(self):
        m = Mat2(2, 1, 1, 1)
        assert (m @ m.inverse()) == Mat2.identity()
        assert m.inverse().rows() == ((1, -1), (-1, 2))

    def test_singular_inverse_rejected(self):
        with pytest.raises(DomainError):
            Mat2(2, 0, 0, 2).inverse()


# ============================================================================
# Singularities
# ============================================================================

class TestCQS:
    def test_normalize(self):
        assert cqs_normalize(CQS(94, 55)) == CQS(94, 53)
        assert cqs_normalize(CQS(94, 53)) == CQS(94, 53)
        assert cqs_normalize(CQS(3, 1)) == CQS(3, 1)

    def test_normalize_idempotent(self):
        for n, a in _coprime_pairs(60):
            once = cqs_normalize(CQS(n, a))
            assert cqs_normalize(once) == once
            assert once == CQS(n, a).inverse().normalized()

    def test_dual_and_chain(self):
        s = CQS(7, 2)
        assert s.dual() == CQS(7, 5)
        assert s.chain() == (4, 2)
        assert str(s) == "1/7(1,2)"

    @pytest.mark.parametrize("delta,omega", [(6, 2), (5, 5), (1, 0)])
    def test_invalid(self, delta, omega):
        with pytest.raises(DomainError):
            CQS(delta, omega)


class TestWahl:
    @pytest.mark.parametrize("pair,chain", WAHL_CHAINS)
    def test_chain(self, pair, chain):
        assert wahl_chain(WahlData(*pair)) == chain

    def test_smooth_has_no_chain(self):
        smooth = WahlData(1, 1)
        assert smooth.chain() == ()
        assert smooth.cqs() is None
        with pytest.raises(DomainError):
            wahl_chain(smooth)

    @pytest.mark.parametrize("m,a", [(4, 2), (3, 3), (0, 1), (3, 4)])
    def test_invalid(self, m, a):
        with pytest.raises(DomainError):
            WahlData(m, a)

    def test_recognize(self):
        assert wahl_recognize(CQS(9, 2)) == WahlData(3, 1)
        assert wahl_recognize(CQS(25, 14)) == WahlData(5, 3)
        assert wahl_recognize(CQS(7, 2)) is None
        assert wahl_recognize(CQS(9, 4)) is None

    def test_round_trip_and_conjugate(self):
        for m in range(2, 40):
            for a in range(1, m):
                if gcd(m, a) != 1:
                    continue
                w = WahlData(m, a)
                assert wahl_recognize(w.cqs()) == w
                assert w.conjugate().chain() == tuple(reversed(w.chain()))


# ============================================================================
# Toric data and K^2
# ============================================================================

class TestToric:
    def test_single_curve(self):
        data = toric_data(4, 1)
        assert data.alphas == (1,)
        assert data.betas == (1,)
        assert data.discrepancies == (Fraction(-1, 2),)

    def test_wahl_three_one(self):
        # K.C = -1 - c_1 = -1/3 for a (-1)-curve meeting the -5 end
        data = toric_data(9, 2)
        assert data.chain == (5, 2)
        assert data.discrepancies == (Fraction(-2, 3), Fraction(-1, 3))
        assert -1 - data.discrepancies[0] == Fraction(-1, 3)

    def test_twenty_five_nine(self):
        data = toric_data(25, 9)
        assert data.alphas == (1, 3, 14)
        assert data.betas == (9, 2, 1)
        assert data.discrepancies[1] == Fraction(-4, 5)

    def test_discrepancy_range(self):
        for n, a in _coprime_pairs(80):
            assert all(-1 < c <= 0 for c in toric_data(n, a).discrepancies)


class TestKSquared:
    @pytest.mark.parametrize("n,a,expected", [(4, 1, Fraction(-1)), (9, 2, Fraction(-2)), (2, 1, Fraction(0))])
    def test_minres(self, n, a, expected):
        assert ksq_minres(n, a) == expected

    @pytest.mark.parametrize("n,a,expected", [(4, 1, Fraction(-9, 4)), (2, 1, Fraction(-1, 2)), (9, 2, Fraction(-29, 9))])
    def test_pair(self, n, a, expected):
        assert ksq_pair(n, a) == expected

    def test_matches_intersection_matrix(self):
        for n, a in _coprime_pairs(200):
            oracle, _ = ksq_oracle(n, a)
            assert ksq_minres(n, a) == oracle

    def test_oracle_coefficients_are_discrepancies(self):
        for n, a in _coprime_pairs(40):
            _, coefficients = ksq_oracle(n, a)
            assert coefficients == toric_data(n, a).discrepancies

    def test_solve_chain(self):
        assert solve_chain((2, 2), [1, 0]) == (Fraction(-2, 3), Fraction(-1, 3))
        with pytest.raises(DomainError):
            solve_chain((2, 2), [1])
