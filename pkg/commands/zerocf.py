"""Zerocf command - zero continued fractions and their triangulations."""

from errors import DomainError
from json_io import print_json
from zerocf import is_zero_cf, triangulations_by_degrees


def run_zerocf(args):
    values = args.values
    if not values:
        raise DomainError("zerocf check needs at least one entry")
    zero = is_zero_cf(tuple(values))
    triangulations = triangulations_by_degrees(values)
    if args.json:
        print_json({
            "values": values,
            "zero": zero,
            "triangulations": [t.to_dict() for t in triangulations],
        })
    else:
        print(f"[{', '.join(map(str, values))}] is {'a zero' if zero else 'not a zero'} continued fraction")
        for t in triangulations:
            print("  " + " ".join(f"({a},{b},{c})" for a, b, c in sorted(t.triangles)))
    # zero fractions with entries >= 1 and length >= 2 are exactly the triangulable ones
    in_domain = len(values) >= 2 and all(x >= 1 for x in values)
    return 2 if in_domain and zero != bool(triangulations) else 0
