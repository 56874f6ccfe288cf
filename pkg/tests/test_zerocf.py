"""Tests for zerocf.py – zero continued fractions, triangulations and WW pairs."""

from itertools import product
from math import gcd

import pytest

from errors import CapacityError, ConsistencyError
from hjcf import hj_expand
from zerocf import Triangulation, is_zero_cf, lower, triangulations_by_degrees, ww_pairs


# =============================================================================
# Zero continued fractions
# =============================================================================

class TestIsZero:
    @pytest.mark.parametrize("cf", [(1, 1), (1, 2, 1), (2, 1, 2), (1, 3, 1, 2), (2, 2, 1, 3)])
    def test_zero(self, cf):
        assert is_zero_cf(cf)

    @pytest.mark.parametrize("cf", [(2, 2), (1, 2), (3, 1, 3), (2, 2, 2)])
    def test_non_zero(self, cf):
        assert not is_zero_cf(cf)

    def test_negative_tail_is_not_zero(self):
        # tail [1, 1, 2] is -1
        assert not is_zero_cf((2, 1, 1, 1, 1, 2))
        assert triangulations_by_degrees([2, 1, 1, 1, 1, 2]) == []

    def test_vanishing_tail_is_not_zero(self):
        # numerator vanishes but [1, 1, 1] divides by zero
        assert not is_zero_cf((1, 1, 1, 1, 1))
        assert not is_zero_cf(())

    def test_vertex_sequences_have_two_ones(self):
        for r in range(2, 8):
            for cf in product(range(1, 6), repeat=r):
                if is_zero_cf(cf):
                    vertex_zero = 3 * r - 3 - sum(cf)
                    assert ((vertex_zero,) + cf).count(1) >= 2

    def test_lower_is_one_based(self):
        assert lower((2, 5, 3, 2), 1, 3) == (1, 5, 2, 2)


# =============================================================================
# Triangulations with prescribed degrees
# =============================================================================

class TestTriangulations:
    def test_triangle(self):
        [t] = triangulations_by_degrees([1, 1])
        assert t.degrees() == (1, 1, 1)

    def test_square(self):
        [t] = triangulations_by_degrees([1, 2, 1])
        assert t.degrees() == (2, 1, 2, 1)
        assert t.to_dict()["triangles"] == [[0, 1, 2], [0, 2, 3]]

    def test_no_triangulation(self):
        assert triangulations_by_degrees([2, 2]) == []
        assert triangulations_by_degrees([1]) == []
        assert triangulations_by_degrees([0, 1, 1]) == []

    def test_bijection_with_zero_fractions(self):
        for r in range(2, 9):
            for cf in product(range(1, 6), repeat=r):
                found = triangulations_by_degrees(list(cf))
                assert bool(found) == is_zero_cf(cf), cf
                for t in found:
                    degrees = t.degrees()
                    assert degrees[1:] == cf
                    assert degrees[0] == 3 * r - 3 - sum(cf)

    def test_capacity_bound(self):
        with pytest.raises(CapacityError):
            triangulations_by_degrees([1] + [2] * 12 + [1])

    def test_rejects_broken_tiling(self):
        with pytest.raises(ConsistencyError):
            Triangulation(4, frozenset({(0, 1, 2), (0, 1, 3)}))
        with pytest.raises(ConsistencyError):
            Triangulation(4, frozenset({(0, 1, 2)}))


# =============================================================================
# WW pairs
# =============================================================================

class TestWWPairs:
    def test_single_pair(self):
        report = ww_pairs((2, 2, 3))
        assert report.pairs == ((2, 3),)
        assert not report.falsified

    def test_two_pairs(self):
        assert ww_pairs((2, 2, 3, 2, 2)).pairs == ((1, 4), (2, 5))

    def test_none(self):
        assert ww_pairs((3, 3)).pairs == ()

    def test_every_pair_lowers_to_zero(self):
        for n in range(3, 120):
            for a in range(1, n):
                if gcd(n, a) != 1:
                    continue
                chain = hj_expand(n, a)
                for alpha, beta in ww_pairs(chain).pairs:
                    assert alpha < beta
                    assert is_zero_cf(lower(chain, alpha, beta))

    def test_reversal_symmetry(self):
        for n in range(3, 150):
            for a in range(1, n):
                if gcd(n, a) != 1:
                    continue
                chain = hj_expand(n, a)
                s = len(chain)
                mirrored = sorted((s + 1 - beta, s + 1 - alpha) for alpha, beta in ww_pairs(chain).pairs)
                assert ww_pairs(tuple(reversed(chain))).pairs == tuple(mirrored), chain

    def test_false_zero_is_skipped(self):
        # lowering (2, 7) gives a zero numerator through the vanishing tail [2, 2, 1, 3]
        chain = (2, 2, 2, 2, 2, 2, 2, 3)
        assert not is_zero_cf(lower(chain, 2, 7))
        assert (2, 7) not in ww_pairs(chain).pairs

    def test_matches_brute_force(self):
        for cf in product(range(2, 5), repeat=5):
            expected = tuple(
                (i, j) for i in range(1, 6) for j in range(i + 1, 6) if is_zero_cf(lower(cf, i, j))
            )
            assert ww_pairs(cf).pairs == expected

    def test_to_dict(self):
        assert ww_pairs((2, 2, 3)).to_dict() == {"entries": [2, 2, 3], "pairs": [[2, 3]]}
