"""Tests for mori/exchange.py – exchange coefficients, weights and divisor data."""

import random

import pytest

from errors import DomainError
from mori import exchange_data, k2a_new


@pytest.fixture
def delta_four():
    return exchange_data(k2a_new(17, 7, 3, 2), 10)


class TestExchangeData:
    def test_range(self, delta_four):
        assert (delta_four.lo, delta_four.hi) == (-9, 14)
        assert delta_four.k == 3
        assert sorted(delta_four.d) == list(range(-9, 15))

    def test_g_recursion(self, delta_four):
        g = delta_four.g
        assert [g[i] for i in range(1, 5)] == [0, 1, 4, 15]
        for i in range(2, 14):
            assert g[i + 1] + g[i - 1] == 4 * g[i]

    def test_special_coefficients(self, delta_four):
        # q_1 = u1, q_2 = u2, q_k = z^{m2'}, q_{k+1} = z^{m1'}
        assert delta_four.q[1] == (0, 1, 0)
        assert delta_four.q[2] == (0, 0, 1)
        assert delta_four.q[3] == (5, 0, 0)
        assert delta_four.q[4] == (3, 0, 0)
        assert delta_four.q[5] == (0, 0, 0)
        assert delta_four.r[1] == (17, 0, 0)
        assert delta_four.r[2] == (3, 0, 0)

    def test_weight_after_k(self, delta_four):
        k, g = delta_four.k, delta_four.g
        # wt(F_{k+1}) = m2 g(k) + m2'
        assert delta_four.weights[k + 1] == 3 * g[k] + 5
        assert delta_four.weights[2] == 0
        assert delta_four.weights[3] == 3

    def test_divisor_restrictions(self, delta_four):
        assert delta_four.divisor_restrictions["z"] == (1, 1, 1)
        assert delta_four.divisor_restrictions[0] == (0, 17, 17)

    def test_class_residues(self, delta_four):
        residue, relation = delta_four.class_residues[1]
        assert residue == (-1, 7)
        assert relation == (-3, 17)

    def test_delta_one_period(self):
        data = exchange_data(k2a_new(5, 3, 2, 1), 6)
        assert data.k == 3
        assert [data.q[i] for i in range(1, 6)] == [(0, 1, 0), (0, 0, 1), (3, 0, 0), (2, 0, 0), (0, 0, 0)]
        for i in range(data.lo, data.hi - 4):
            assert data.q[i] == data.q[i + 5]
            assert data.d[i] == data.d[i + 5]

    def test_divisorial(self):
        data = exchange_data(k2a_new(4, 3, 2, 1), 2)
        assert data.k == 3
        assert data.d[3] == 0

    def test_identity_on_random_k2a(self):
        rng = random.Random(4711)
        checked = 0
        while checked < 100:
            m1, m2 = rng.randint(2, 40), rng.randint(1, 12)
            try:
                n = k2a_new(m1, rng.randint(1, m1), m2, rng.randint(1, m2))
            except DomainError:
                continue
            data = exchange_data(n, 6)
            q, r = data.q, data.r
            for i in range(data.lo + 1, data.hi):
                lhs = tuple(a + b + data.delta * c for a, b, c in zip(q[i - 1], q[i + 1], r[i]))
                rhs = tuple(a + b for a, b in zip(r[i - 1], r[i + 1]))
                assert lhs == rhs, (n, i)
            checked += 1

    def test_negative_depth(self):
        with pytest.raises(DomainError):
            exchange_data(k2a_new(17, 7, 3, 2), -1)

    def test_to_dict(self, delta_four):
        d = delta_four.to_dict()
        assert d["range"] == [-9, 14]
        assert d["g"]["3"] == 4
        assert d["k2a"]["Delta"] == 94
