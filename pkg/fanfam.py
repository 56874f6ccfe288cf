"""The toric fan of the base of the universal antiflip family, and the family itself.

For delta >= 2 the rays are v_1 = (1, 0), v_2 = (delta, 1), v_{i+1} = delta v_i - v_{i-1}
and v_{-i} = swap(v_i). They all lie on x^2 - delta x y + y^2 = 1 and converge to
the line of slope 1/xi, xi^2 = delta xi - 1; the support is where the form is
positive. Every comparison here is an integer sign test.

For delta = 1 the fan is the blowup of the origin: rays (1, 0), (1, 1), (0, 1).
The diagonal ray is both v_2 and v_{-2}.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd

from errors import ConsistencyError, DomainError
from hjcf import Mat2, WahlData
from mori import K1A, K2A, flip, flip_k1a, initial_k2as, k1a_from, mori_division, mutate
from presolve import PResolution

LOGGER = logging.getLogger(__name__)

Vector = tuple[int, int]


def _wedge(u: Vector, v: Vector) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _form(delta: int, x: int, y: int) -> int:
    return x * x - delta * x * y + y * y


@dataclass
class Fan:
    """Rays by nonzero index; extended on demand past the built depth."""
    delta: int
    depth: int
    rays: dict[int, Vector] = field(default_factory=dict)

    def ray(self, i: int) -> Vector:
        if i == 0:
            raise DomainError("rays are indexed by nonzero integers")
        if self.delta == 1:
            if abs(i) > 2:
                raise DomainError(f"the delta = 1 fan has no ray {i}")
            return (1, 1) if abs(i) == 2 else self.rays[i]
        if i < 0:
            x, y = self.ray(-i)
            return y, x
        while i not in self.rays:
            top = max(self.rays)
            (x1, y1), (x0, y0) = self.rays[top], self.rays[top - 1]
            self.rays[top + 1] = (self.delta * x1 - x0, self.delta * y1 - y0)
            self.rays[-(top + 1)] = self.rays[top + 1][::-1]
        return self.rays[i]

    def cones(self) -> list[tuple[int, int]]:
        if self.delta == 1:
            return [(1, 2), (-1, -2)]
        positive = [(i, i + 1) for i in range(1, self.depth)]
        return positive + [(-i, -j) for i, j in positive]

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "rays": {str(i): list(v) for i, v in sorted(self.rays.items())},
            "cones": [list(c) for c in self.cones()],
        }


def fan_build(delta: int, depth: int) -> Fan:
    if delta < 1 or depth < 1:
        raise DomainError(f"need delta >= 1 and depth >= 1, got delta={delta}, depth={depth}")
    if delta == 1:
        return Fan(1, 2, {1: (1, 0), 2: (1, 1), -1: (0, 1)})
    fan = Fan(delta, depth, {1: (1, 0), 2: (delta, 1), -1: (0, 1), -2: (1, delta)})
    fan.ray(depth)
    for i in range(1, depth + 1):
        v = fan.ray(i)
        if gcd(*v) != 1 or _form(delta, *v) != 1:
            raise ConsistencyError("ray is not primitive on the level-1 set", {"delta": delta, "i": i, "ray": v})
        if i < depth and _wedge(v, fan.ray(i + 1)) != 1:
            raise ConsistencyError("consecutive rays do not span a unimodular cone", {"delta": delta, "i": i})
    return fan


def chart_transition(delta: int) -> Mat2:
    """Exponents of (u2^-1, u1 u2^delta) in the next chart, as rows."""
    if delta < 1:
        raise DomainError(f"delta must be >= 1, got {delta}")
    m = Mat2(0, -1, 1, delta)
    if m.det() not in (1, -1):
        raise ConsistencyError("chart transition is not unimodular", {"delta": delta})
    return m


def fan_dot(fan: Fan) -> str:
    """DOT picture of the fan: rays as labeled edges from the origin."""
    indices = [1, 2, -1] if fan.delta == 1 else sorted(
        (i for i in fan.rays if abs(i) <= fan.depth), key=lambda i: (i < 0, abs(i)))
    lines = [f"digraph fan_delta_{fan.delta} {{", "  origin [shape=point];"]
    for i in indices:
        x, y = fan.ray(i)
        name = f"v{i}" if i > 0 else f"v_{-i}"
        lines.append(f'  {name} [shape=plaintext, label="({x},{y})"];')
        lines.append(f'  origin -> {name} [label="v{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ============================================================================
# Point location and the antiflip test
# ============================================================================

@dataclass(frozen=True, order=True)
class ConeRef:
    """Smallest cone of the fan containing a point."""
    kind: str  # "ray", "cone", "origin" or "outside"
    index: tuple[int, ...] = ()

    def mirrored(self) -> "ConeRef":
        return ConeRef(self.kind, tuple(-i for i in self.index))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": list(self.index)}

    def __str__(self) -> str:
        if self.kind == "ray":
            return f"v{self.index[0]}"
        if self.kind == "cone":
            return f"<v{self.index[0]},v{self.index[1]}>"
        return self.kind


def _check_multiplicities(a1, a2):
    for value in (a1, a2):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise DomainError(f"axial multiplicities must be integers >= 1, got ({a1!r}, {a2!r})")


def support_contains(delta: int, a1: int, a2: int) -> bool:
    _check_multiplicities(a1, a2)
    return _form(delta, a1, a2) > 0


def locate_cone(delta: int, a1: int, a2: int) -> ConeRef:
    if a1 < 0 or a2 < 0:
        raise DomainError(f"point ({a1}, {a2}) lies outside the positive quadrant")
    if (a1, a2) == (0, 0):
        return ConeRef("origin")
    if a2 == 0:
        return ConeRef("ray", (1,))
    if a1 == 0:
        return ConeRef("ray", (-1,))
    if _form(delta, a1, a2) <= 0:
        return ConeRef("outside")
    if a1 < a2:
        return locate_cone(delta, a2, a1).mirrored()
    if delta == 1:
        return ConeRef("ray", (2,)) if a1 == a2 else ConeRef("cone", (1, 2))

    fan = Fan(delta, 2, {1: (1, 0), 2: (delta, 1), -1: (0, 1), -2: (1, delta)})
    point = (a1, a2)
    i = 1
    while True:
        if _wedge(fan.ray(i), point) == 0:
            return ConeRef("ray", (i,))
        if _wedge(point, fan.ray(i + 1)) > 0:
            return ConeRef("cone", (i, i + 1))
        i += 1


class AntiflipClass(str, Enum):
    TERMINAL = "terminal"
    CANONICAL_ONLY = "canonical-only"
    NO_BOUNDARY_DATA = "no-boundary-data"


def antiflip_classify(p: PResolution, a1: int, a2: int, has_boundary_divisor: bool) -> AntiflipClass:
    """Whether the flip p has a terminal antiflip with axial multiplicities (a1, a2).

    ``has_boundary_divisor`` is the geometric condition on the anticanonical
    divisor, supplied by the caller.
    """
    inside = support_contains(p.delta, a1, a2)
    if not has_boundary_divisor:
        return AntiflipClass.NO_BOUNDARY_DATA
    return AntiflipClass.TERMINAL if inside else AntiflipClass.CANONICAL_ONLY


# ============================================================================
# The family
# ============================================================================

@dataclass(frozen=True)
class FamilyMember:
    location: ConeRef
    data: K2A | WahlData  # K2A on a cone, the singular point on a ray
    k1a: K1A | None = None  # the k1A living on an inner ray

    def to_dict(self) -> dict:
        out = {"location": self.location.to_dict(), "data": self.data.to_dict()}
        if self.k1a is not None:
            out["k1a"] = self.k1a.to_dict()
        return out


def _same_point(w: WahlData, m: int, a: int) -> bool:
    return w.m == m and (w.a == a % m or w.a == (-a) % m or m == 1)


def ray_k1a(p: PResolution, w: WahlData, outer: int, inner: int) -> K1A:
    """The k1A on the wall of w whose split m0 + m2 = delta m matches the neighbors."""
    for candidate in (w, w.conjugate()):
        for i in range(1, len(candidate.chain()) + 1):
            try:
                k = k1a_from(candidate, i)
            except DomainError:
                continue
            if {k.m0, k.m2} == {outer, inner} and k.delta == p.delta:
                result = flip_k1a(k)
                if result.pres is None or not result.pres.same_as(p):
                    raise ConsistencyError("ray k1A does not flip to the family's resolution",
                                           {"k1a": k, "flip": result, "pres": p})
                return k
    raise ConsistencyError("no chain position splits the ray decoration", {"wahl": w, "neighbors": (outer, inner)})


def family_enumerate(p: PResolution, depth: int) -> list[FamilyMember]:
    """Every member of the antiflip family of p out to ray index +-depth.

    The cone <v_1, v_2> carries the first initial k2A (the shift j = 1 of its
    own division), <v_{-1}, v_{-2}> the shift j = 5; moving outward lowers j on
    the positive side and raises it on the negative side.
    """
    if depth <= 0:
        raise DomainError(f"depth must be positive, got {depth}")
    seed, _ = initial_k2as(p)
    data = mori_division(seed)
    if data.k != 3:
        raise ConsistencyError("initial k2A has an unexpected division length", {"k2a": seed, "k": data.k})
    seq = data.sequence()
    delta = p.delta
    reach = 2 if delta == 1 else depth

    def cone_member(i: int) -> FamilyMember:
        j = 2 - i if i > 0 else 4 - i
        n = mutate(seed, j)
        result = flip(n)
        if n.delta != delta or n.Delta != p.target.Delta or result.pres is None or not result.pres.same_as(p):
            raise ConsistencyError("family member does not flip to p", {"j": j, "k2a": n, "flip": result})
        index = (i, i + 1) if i > 0 else (i, i - 1)
        return FamilyMember(ConeRef("cone", index), n)

    def ray_member(i: int) -> FamilyMember:
        j = 3 - i if i > 0 else 4 - i
        m = seq.d(j)
        a = seq.c(j) if i > 0 else -seq.c(j)
        w = WahlData(1, 1) if m == 1 else WahlData(m, a % m)
        k1a = None
        if abs(i) >= 2 and m > 1:
            k1a = ray_k1a(p, w, seq.d(j - 1), seq.d(j + 1))
        return FamilyMember(ConeRef("ray", (i,)), w, k1a)

    members = []
    for sign in (1, -1):
        for i in range(1, reach + 1):
            if delta == 1 and sign == -1 and i == 2:
                break
            members.append(ray_member(sign * i))
            if i < reach:
                members.append(cone_member(sign * i))
    _check_decorations(members)
    LOGGER.debug("family of %s: %d members (delta = %d)", p, len(members), delta)
    return members


def _check_decorations(members: list[FamilyMember]):
    cones = {m.location.index: m.data for m in members if m.location.kind == "cone"}
    for member in members:
        if member.location.kind != "ray":
            continue
        i = member.location.index[0]
        for index, n in cones.items():
            if i not in index:
                continue
            if not (_same_point(member.data, n.m1, n.a1) or _same_point(member.data, n.m2, n.a2)):
                raise ConsistencyError("ray decoration is not a side of its cone",
                                       {"ray": i, "decoration": member.data, "cone": index, "k2a": n})


def antiflip_member(p: PResolution, a1: int, a2: int) -> FamilyMember | None:
    """The family member over the cone containing (a1, a2), or None outside the support."""
    location = locate_cone(p.delta, a1, a2)
    if location.kind in ("outside", "origin"):
        return None
    depth = max(abs(i) for i in location.index) + 1
    for member in family_enumerate(p, depth):
        if member.location == location:
            return member
    raise ConsistencyError("located cone is missing from the family", {"location": location})


def family_to_dict(p: PResolution, members: list[FamilyMember]) -> dict:
    return {
        "delta": p.delta,
        "Delta": p.target.Delta,
        "presolution": p.to_dict(),
        "members": [m.to_dict() for m in members],
    }
