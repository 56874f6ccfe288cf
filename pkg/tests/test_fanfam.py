"""Tests for fanfam.py – the fan of the family base, point location and family members."""

import pytest

from errors import DomainError
from fanfam import (
    AntiflipClass,
    ConeRef,
    antiflip_classify,
    antiflip_member,
    chart_transition,
    family_enumerate,
    family_to_dict,
    fan_build,
    fan_dot,
    locate_cone,
    support_contains,
)
from hjcf import CQS, Mat2, WahlData
from mori import flip, k2a_new
from presolve import extremal_presolutions


@pytest.fixture(scope="module")
def delta_four():
    [p] = extremal_presolutions(CQS(94, 53))
    return p


@pytest.fixture(scope="module")
def delta_one():
    return flip(k2a_new(5, 3, 2, 1)).pres


# =============================================================================
# Fan
# =============================================================================

class TestFan:
    def test_delta_two(self):
        fan = fan_build(2, 4)
        assert [fan.ray(i) for i in range(1, 5)] == [(1, 0), (2, 1), (3, 2), (4, 3)]
        assert fan.ray(-3) == (2, 3)

    def test_delta_four(self):
        fan = fan_build(4, 4)
        assert [fan.ray(i) for i in range(1, 5)] == [(1, 0), (4, 1), (15, 4), (56, 15)]
        assert fan.cones() == [(1, 2), (2, 3), (3, 4), (-1, -2), (-2, -3), (-3, -4)]

    def test_delta_one_ignores_depth(self):
        fan = fan_build(1, 7)
        assert fan.rays == {1: (1, 0), 2: (1, 1), -1: (0, 1)}
        assert fan.ray(-2) == (1, 1)
        assert fan.cones() == [(1, 2), (-1, -2)]
        with pytest.raises(DomainError):
            fan.ray(3)

    def test_rays_on_level_set(self):
        for delta in range(2, 7):
            fan = fan_build(delta, 12)
            for i in range(1, 12):
                (x0, y0), (x1, y1) = fan.ray(i), fan.ray(i + 1)
                assert x0 * x0 - delta * x0 * y0 + y0 * y0 == 1
                assert x0 * y1 - y0 * x1 == 1

    @pytest.mark.parametrize("delta,depth", [(0, 3), (3, 0)])
    def test_rejects_bad_arguments(self, delta, depth):
        with pytest.raises(DomainError):
            fan_build(delta, depth)

    def test_dot(self):
        text = fan_dot(fan_build(4, 2))
        assert text.startswith("digraph fan_delta_4 {")
        assert 'v2 [shape=plaintext, label="(4,1)"];' in text
        assert "origin -> v_1" in text


class TestChartTransition:
    def test_delta_four(self):
        assert chart_transition(4).rows() == ((0, -1), (1, 4))

    def test_delta_one(self):
        assert chart_transition(1).rows() == ((0, -1), (1, 1))

    def test_inverse(self):
        m = chart_transition(3)
        assert m @ m.inverse() == Mat2.identity()

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            chart_transition(0)


# =============================================================================
# Support and point location
# =============================================================================

class TestSupport:
    def test_delta_four(self):
        assert not support_contains(4, 1, 1)
        assert support_contains(4, 5, 1)

    def test_delta_two_diagonal(self):
        assert not support_contains(2, 3, 3)
        assert support_contains(2, 3, 2)

    def test_delta_one(self):
        assert all(support_contains(1, a, b) for a in range(1, 8) for b in range(1, 8))

    @pytest.mark.parametrize("a1,a2", [(0, 1), (1, -2), (1.0, 1)])
    def test_rejects_non_positive(self, a1, a2):
        with pytest.raises(DomainError):
            support_contains(3, a1, a2)


class TestLocateCone:
    def test_inside_cone(self):
        assert locate_cone(4, 5, 1) == ConeRef("cone", (1, 2))

    def test_on_ray(self):
        assert locate_cone(4, 4, 1) == ConeRef("ray", (2,))
        assert locate_cone(4, 30, 8) == ConeRef("ray", (3,))

    def test_outside(self):
        assert locate_cone(4, 2, 1).kind == "outside"
        assert locate_cone(4, 1, 1).kind == "outside"

    def test_mirror(self):
        assert locate_cone(4, 1, 5) == ConeRef("cone", (-1, -2))

    def test_axes_and_origin(self):
        assert locate_cone(3, 0, 0) == ConeRef("origin")
        assert locate_cone(3, 7, 0) == ConeRef("ray", (1,))
        assert locate_cone(3, 0, 7) == ConeRef("ray", (-1,))

    def test_delta_one(self):
        assert locate_cone(1, 3, 3) == ConeRef("ray", (2,))
        assert locate_cone(1, 3, 1) == ConeRef("cone", (1, 2))
        assert locate_cone(1, 1, 3) == ConeRef("cone", (-1, -2))

    def test_deep_cone(self):
        # between (15, 4) and (56, 15)
        assert locate_cone(4, 71, 19) == ConeRef("cone", (3, 4))

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            locate_cone(4, -1, 2)

    def test_str(self):
        assert str(ConeRef("cone", (1, 2))) == "<v1,v2>"
        assert str(ConeRef("outside")) == "outside"


class TestAntiflipClassify:
    def test_terminal(self, delta_four):
        assert antiflip_classify(delta_four, 5, 1, True) is AntiflipClass.TERMINAL

    def test_canonical_only(self, delta_four):
        assert antiflip_classify(delta_four, 1, 1, True) is AntiflipClass.CANONICAL_ONLY

    def test_no_boundary_data(self, delta_four):
        assert antiflip_classify(delta_four, 5, 1, False) is AntiflipClass.NO_BOUNDARY_DATA

    def test_invalid_multiplicity(self, delta_four):
        with pytest.raises(DomainError):
            antiflip_classify(delta_four, 0, 1, True)


# =============================================================================
# Family
# =============================================================================

def _by_location(members):
    return {(m.location.kind, m.location.index): m for m in members}


class TestFamily:
    def test_delta_four_cones(self, delta_four):
        members = _by_location(family_enumerate(delta_four, 3))
        assert members[("cone", (1, 2))].data == k2a_new(17, 7, 3, 2)
        assert members[("cone", (-1, -2))].data == k2a_new(23, 10, 5, 3)
        assert members[("cone", (2, 3))].data == k2a_new(65, 27, 17, 10)
        assert len(members) == 10

    def test_delta_four_rays(self, delta_four):
        members = _by_location(family_enumerate(delta_four, 3))
        assert members[("ray", (1,))].data == WahlData(3, 1)
        assert members[("ray", (-1,))].data == WahlData(5, 2)
        inner = members[("ray", (2,))]
        assert inner.data.m == 17
        assert {inner.k1a.m0, inner.k1a.m2} == {65, 3}
        assert members[("ray", (1,))].k1a is None

    def test_members_share_invariants(self, delta_four):
        for member in family_enumerate(delta_four, 4):
            if member.location.kind == "cone":
                n = member.data
                assert (n.delta, n.Delta) == (4, 94)
                assert flip(n).pres.same_as(delta_four)

    def test_deep_family(self, delta_four):
        members = family_enumerate(delta_four, 6)
        assert len(members) == 22
        for member in members:
            if member.location.kind == "ray" and abs(member.location.index[0]) >= 2:
                k = member.k1a
                assert k.delta == 4
                assert k.m1 == member.data.m
                assert k.Delta == 94

    def test_delta_one_is_finite(self, delta_one):
        members = family_enumerate(delta_one, 9)
        locations = [str(m.location) for m in members]
        assert sorted(locations) == sorted(["v1", "<v1,v2>", "v2", "v-1", "<v-1,v-2>"])
        assert _by_location(members)[("cone", (1, 2))].data == k2a_new(5, 3, 2, 1)
        assert _by_location(members)[("cone", (-1, -2))].data == k2a_new(5, 2, 3, 2)

    def test_depth_must_be_positive(self, delta_four):
        with pytest.raises(DomainError):
            family_enumerate(delta_four, 0)

    def test_antiflip_member(self, delta_four):
        assert antiflip_member(delta_four, 5, 1).data == k2a_new(17, 7, 3, 2)
        assert antiflip_member(delta_four, 1, 5).data == k2a_new(23, 10, 5, 3)
        assert antiflip_member(delta_four, 4, 1).location == ConeRef("ray", (2,))
        assert antiflip_member(delta_four, 1, 1) is None

    def test_to_dict(self, delta_four):
        d = family_to_dict(delta_four, family_enumerate(delta_four, 2))
        assert d["delta"] == 4
        assert d["Delta"] == 94
        assert {"kind": "cone", "index": [1, 2]} in [m["location"] for m in d["members"]]
