"""Tests for the mori package – k2A/k1A data, Mori's division, flips and mutations."""

import random
from fractions import Fraction
from math import gcd

import pytest

from errors import DomainError
from hjcf import CQS, SMOOTH, WahlData, cqs_normalize
from mori import (
    Kind,
    LocusComponent,
    admissible_shifts,
    flip,
    flip_k1a,
    initial_k2as,
    is_admissible,
    k1a_degenerations,
    k1a_from,
    k2a_new,
    mori_division,
    mutate,
)
from presolve import extremal_presolutions


def _wahl_points(m_max):
    for m in range(2, m_max + 1):
        for a in range(1, m):
            if gcd(m, a) == 1:
                yield WahlData(m, a)


# =============================================================================
# k2A data
# =============================================================================

class TestK2A:
    def test_valid(self):
        n = k2a_new(17, 7, 3, 2)
        assert (n.delta, n.Delta) == (4, 94)
        assert n.k_dot_c() == Fraction(-4, 51)

    def test_small_side_smooth(self):
        n = k2a_new(5, 2, 1, 1)
        assert (n.delta, n.Delta) == (2, 16)

    def test_swaps_sides(self):
        assert k2a_new(3, 2, 17, 7) == k2a_new(17, 7, 3, 2)

    @pytest.mark.parametrize("values,message", [
        ((3, 1, 3, 1), "delta"),
        ((4, 2, 3, 1), "gcd"),
        ((3, 4, 2, 1), "1 <= a < m"),
        ((0, 1, 2, 1), ">= 1"),
    ])
    def test_rejected(self, values, message):
        with pytest.raises(DomainError, match=message):
            k2a_new(*values)

    def test_omega_formula_matches_chain(self):
        n = k2a_new(17, 7, 3, 2)
        assert cqs_normalize(CQS(n.Delta, n.omega_formula())) == cqs_normalize(n.contraction_cqs())


# =============================================================================
# Division and flips
# =============================================================================

class TestMoriDivision:
    def test_flipping(self):
        data = mori_division(k2a_new(17, 7, 3, 2))
        assert data.d[:data.k] == (17, 3, -5)
        assert data.k == 3
        assert data.kind is Kind.FLIPPING
        assert (data.m1p, data.a1p, data.m2p, data.a2p) == (3, 1, 5, 2)

    def test_divisorial(self):
        data = mori_division(k2a_new(4, 3, 2, 1))
        assert data.d[:data.k] == (4, 2, 0)
        assert data.c[:data.k] == (3, 1, -1)
        assert data.kind is Kind.DIVISORIAL
        assert data.m1p == 2
        assert data.a2p is None

    def test_longer_division(self):
        data = mori_division(k2a_new(65, 27, 17, 10))
        assert data.d[:data.k] == (65, 17, 3, -5)
        assert data.k == 4
        assert (data.m1p, data.a1p, data.m2p, data.a2p) == (3, 1, 5, 2)

    def test_extension_past_k(self):
        data = mori_division(k2a_new(17, 7, 3, 2))
        # d(k+1) = -d(k-1), d(k+2) = -d(k)
        assert data.d[data.k:] == (-3, 5)


class TestExceptionalLocus:
    def test_k_three_lies_over_one_axis(self):
        data = mori_division(k2a_new(17, 7, 3, 2))
        assert data.k == 3
        assert data.exceptional_locus() == (LocusComponent(1, 3, 65),)

    def test_k_four_lies_over_both_axes(self):
        data = mori_division(k2a_new(65, 27, 17, 10))
        assert data.k == 4
        assert data.exceptional_locus() == (LocusComponent(1, 17, 243), LocusComponent(2, 65, 3))

    def test_divisorial_has_no_curve_locus(self):
        with pytest.raises(DomainError):
            mori_division(k2a_new(4, 3, 2, 1)).exceptional_locus()

    def test_str(self):
        assert str(LocusComponent(2, 65, 3)) == "(u2 = 0): q2^65 + u1 p2^3 = 0"


class TestFlip:
    def test_delta_four(self):
        result = flip(k2a_new(17, 7, 3, 2))
        assert result.kind is Kind.FLIPPING
        assert result.pres.singularities() == (WahlData(3, 1), WahlData(5, 2))
        assert result.delta == 4
        assert cqs_normalize(result.target) == CQS(94, 53)
        assert result.k_dot_before == Fraction(-4, 51)
        assert result.k_dot_after == Fraction(4, 15)

    def test_divisorial(self):
        result = flip(k2a_new(4, 3, 2, 1))
        assert result.kind is Kind.DIVISORIAL
        assert result.y_point == WahlData(2, 1)
        assert result.target == CQS(4, 1)
        assert result.k_dot_after is None

    def test_delta_one(self):
        result = flip(k2a_new(5, 3, 2, 1))
        assert result.pres.singularities() == (WahlData(2, 1), WahlData(3, 1))
        assert result.delta == 1
        assert cqs_normalize(result.target) == CQS(19, 7)

    def test_flip_is_classified(self):
        # every flip is one of the extremal P-resolutions of its target
        for n in [k2a_new(17, 7, 3, 2), k2a_new(5, 3, 2, 1), k2a_new(23, 10, 5, 3)]:
            result = flip(n)
            assert any(p.same_as(result.pres) for p in extremal_presolutions(result.target))

    def test_to_dict(self):
        d = flip(k2a_new(17, 7, 3, 2)).to_dict()
        assert d["kind"] == "flipping"
        assert d["k_dot_after"] == "4/15"
        assert d["y_point"] is None


# =============================================================================
# k1A neighborhoods
# =============================================================================

class TestK1A:
    def test_single_curve(self):
        k = k1a_from(WahlData(2, 1), 1)
        assert (k.m0, k.a0, k.m2, k.a2) == (1, 1, 1, 1)
        assert (k.Delta, k.Omega, k.delta) == (3, 1, 1)

    def test_end_curve(self):
        k = k1a_from(WahlData(3, 1), 1)
        assert (k.m0, k.a0, k.m2) == (2, 1, 1)
        assert (k.Delta, k.Omega, k.delta) == (7, 2, 1)
        assert k.lowered_chain() == (4, 2)

    def test_middle_curve(self):
        k = k1a_from(WahlData(5, 2), 2)
        assert (k.m0, k.a0, k.m2, k.a2) == (2, 1, 3, 2)
        assert (k.Delta, k.Omega, k.delta) == (19, 7, 1)
        assert k.k_dot_c() == Fraction(-1, 5)

    @pytest.mark.parametrize("w,i", [
        (WahlData(1, 1), 1), (WahlData(3, 1), 0), (WahlData(3, 1), 3),
        # lowered chain [7, 2, 1, 2] is not negative definite
        (WahlData(5, 1), 3),
    ])
    def test_rejected(self, w, i):
        with pytest.raises(DomainError):
            k1a_from(w, i)

    def test_degenerations(self):
        first, second = k1a_degenerations(k1a_from(WahlData(5, 2), 2))
        assert first == k2a_new(5, 3, 2, 1)
        assert second == k2a_new(5, 2, 3, 2)
        assert first.delta == second.delta == 1
        assert first.Delta == second.Delta == 19

    def test_degeneration_with_smooth_side(self):
        _, second = k1a_degenerations(k1a_from(WahlData(3, 1), 1))
        assert second.m2 == 1

    def test_flip_end_curve(self):
        result = flip_k1a(k1a_from(WahlData(3, 1), 1))
        assert set(result.pres.singularities()) == {SMOOTH, WahlData(2, 1)}
        assert cqs_normalize(result.target) == CQS(7, 2)
        assert result.k_dot_before == Fraction(-1, 3)

    def test_flip_single_curve(self):
        result = flip_k1a(k1a_from(WahlData(2, 1), 1))
        assert result.pres.singularities() == (SMOOTH, SMOOTH)
        assert result.pres.c == 3
        assert result.target == CQS(3, 1)

    def test_flip_middle_curve(self):
        result = flip_k1a(k1a_from(WahlData(5, 2), 2))
        assert set(result.pres.singularities()) == {WahlData(2, 1), WahlData(3, 1)}
        assert cqs_normalize(result.target) == CQS(19, 7)

    def test_coherent_with_classification(self):
        for w in _wahl_points(30):
            for i in range(1, len(w.chain()) + 1):
                try:
                    k = k1a_from(w, i)
                except DomainError:
                    continue
                first, second = k1a_degenerations(k)
                assert first.delta == second.delta == k.delta
                result = flip_k1a(k)
                assert result.delta == k.delta
                if result.kind is Kind.FLIPPING:
                    found = extremal_presolutions(result.target)
                    assert any(p.same_as(result.pres) and p.delta == k.delta for p in found), (w, i)
                else:
                    produced = result.y_point.cqs()
                    expected = k.target
                    assert (produced and cqs_normalize(produced)) == (expected and cqs_normalize(expected))


# =============================================================================
# Mutations and initial k2A
# =============================================================================

class TestMutation:
    def test_shift_zero(self):
        assert mutate(k2a_new(17, 7, 3, 2), 0) == k2a_new(65, 27, 17, 10)

    def test_excluded_shifts(self):
        data = mori_division(k2a_new(17, 7, 3, 2))
        assert not is_admissible(data, 3)
        assert is_admissible(data, 1)
        with pytest.raises(DomainError):
            mutate(k2a_new(17, 7, 3, 2), 3)

    def test_delta_one_period(self):
        data = mori_division(k2a_new(5, 3, 2, 1))
        assert admissible_shifts(data, -5, 5) == [-5, -4, 0, 1, 5]

    def test_invariance(self):
        rng = random.Random(1729)
        checked = 0
        while checked < 120:
            m1, m2 = rng.randint(2, 40), rng.randint(1, 12)
            try:
                n = k2a_new(m1, rng.randint(1, m1), m2, rng.randint(1, m2))
            except DomainError:
                continue
            base = flip(n)
            data = mori_division(n)
            for j in admissible_shifts(data, -6, data.k + 6):
                shifted = mutate(n, j)
                assert (shifted.delta, shifted.Delta) == (n.delta, n.Delta)
                assert flip(shifted).same_as(base), (n, j)
            checked += 1


class TestInitialK2As:
    def test_delta_four(self):
        [p] = extremal_presolutions(CQS(94, 53))
        assert initial_k2as(p) == (k2a_new(17, 7, 3, 2), k2a_new(23, 10, 5, 3))

    def test_delta_one(self):
        p = flip(k2a_new(5, 3, 2, 1)).pres
        assert k2a_new(5, 3, 2, 1) in initial_k2as(p)

    def test_smooth_side(self):
        [p] = extremal_presolutions(CQS(7, 2))
        for n in initial_k2as(p):
            assert flip(n).pres.same_as(p)
            assert n.delta == p.delta

    def test_round_trip_over_survey(self):
        for delta in range(3, 60):
            for omega in range(1, delta):
                if gcd(delta, omega) != 1:
                    continue
                for p in extremal_presolutions(CQS(delta, omega)):
                    for n in initial_k2as(p):
                        assert n.Delta == delta
