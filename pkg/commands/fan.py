"""Fan command - the fan of the antiflip family and the members over it."""

from errors import DomainError
from fanfam import fan_build, fan_dot, family_enumerate, family_to_dict
from hjcf import CQS
from json_io import print_json
from presolve import PResolution, extremal_presolutions


def resolution_by_pair(delta: int, omega: int, pair: tuple[int, int]) -> PResolution:
    """The extremal P-resolution of 1/delta(1, omega) with the given WW pair."""
    s = CQS(delta, omega)
    found = extremal_presolutions(s)
    for p in found:
        if p.ww == tuple(pair):
            return p
    pairs = ", ".join(f"{a},{b}" for a, b in (p.ww for p in found)) or "none"
    raise DomainError(f"{s} has no extremal P-resolution at pair {pair[0]},{pair[1]} (pairs: {pairs})")


def run_fan(args):
    if args.action == "build":
        fan = fan_build(args.delta, args.depth)
        if args.dot:
            print(fan_dot(fan), end="")
        elif args.json:
            print_json(fan.to_dict())
        else:
            reach = 2 if fan.delta == 1 else fan.depth
            for i in range(1, reach + 1):
                print(f"v{i} = {fan.ray(i)}    v{-i} = {fan.ray(-i)}")
            print("cones: " + " ".join(f"<v{a},v{b}>" for a, b in fan.cones()))
    elif args.action == "family":
        p = resolution_by_pair(args.Delta, args.Omega, args.pair)
        members = family_enumerate(p, args.depth)
        if args.json:
            print_json(family_to_dict(p, members))
        else:
            print(f"family of {p}")
            for member in members:
                line = f"  {str(member.location):<14} {member.data}"
                if member.k1a is not None:
                    line += f"  [{member.k1a}]"
                print(line)
    return 0
