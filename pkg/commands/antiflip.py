"""Antiflip command - does a flip have a terminal antiflip with given axial multiplicities."""

from fanfam import AntiflipClass, antiflip_classify, antiflip_member, locate_cone
from json_io import print_json

from .fan import resolution_by_pair


def run_antiflip(args):
    p = resolution_by_pair(args.Delta, args.Omega, args.pair)
    a1, a2 = args.ax
    verdict = antiflip_classify(p, a1, a2, args.boundary_divisor == "yes")
    location = locate_cone(p.delta, a1, a2)
    member = antiflip_member(p, a1, a2) if verdict is AntiflipClass.TERMINAL else None
    if args.json:
        print_json({
            "presolution": p.to_dict(),
            "ax": [a1, a2],
            "class": verdict.value,
            "location": location.to_dict(),
            "member": member.to_dict() if member else None,
        })
    else:
        print(f"{p}: axial multiplicities ({a1}, {a2}) -> {verdict.value} ({location})")
        if member is not None:
            print(f"  antiflip over {member.location}: {member.data}")
    return 0
