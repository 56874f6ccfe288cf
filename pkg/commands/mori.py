"""Mori command - flips of k2A and k1A neighborhoods and exchange bookkeeping."""

from hjcf import WahlData
from json_io import print_json
from mori import Kind, exchange_data, flip, flip_k1a, k1a_degenerations, k1a_from, k2a_new, mori_division


def _print_flip(result):
    if result.kind is Kind.FLIPPING:
        p = result.pres
        print(f"flipping: {{{p.sing1}, {p.sing2}}} c = {p.c} delta = {p.delta}")
        print(f"  target {result.target}  K.C {result.k_dot_before} -> K.C+ {result.k_dot_after}")
    else:
        print(f"divisorial: Y has {result.y_point if not result.y_point.is_smooth else 'a smooth point'}")
        print(f"  target {result.target or 'smooth'}  K.C {result.k_dot_before}")


def run_mori(args):
    if args.action == "flip":
        n = k2a_new(args.m1, args.a1, args.m2, args.a2)
        data = mori_division(n)
        result = flip(n)
        if args.json:
            out = {"division": data.to_dict(), "flip": result.to_dict()}
            if result.kind is Kind.FLIPPING:
                out["exceptional_locus"] = [part.to_dict() for part in data.exceptional_locus()]
            print_json(out)
        else:
            print(f"{n}: delta = {n.delta} Delta = {n.Delta}")
            print(f"  d = {list(data.d[:data.k])}  c = {list(data.c[:data.k])}  k = {data.k}")
            _print_flip(result)
            if result.kind is Kind.FLIPPING:
                for part in data.exceptional_locus():
                    print(f"  E over {part}")
    elif args.action == "k1a":
        k = k1a_from(WahlData(args.m, args.a), args.i)
        result = flip_k1a(k)
        first, second = k1a_degenerations(k)
        if args.json:
            print_json({"k1a": k.to_dict(), "degenerations": [first.to_dict(), second.to_dict()],
                        "flip": result.to_dict()})
        else:
            print(f"{k}: m0 = {k.m0} m2 = {k.m2} delta = {k.delta} target {k.target or 'smooth'}")
            print(f"  degenerations {first}, {second}")
            _print_flip(result)
    elif args.action == "exchange":
        data = exchange_data(k2a_new(args.m1, args.a1, args.m2, args.a2), args.depth)
        if args.json:
            print_json(data.to_dict())
        else:
            print(f"{data.n}: delta = {data.delta} k = {data.k} indices {data.lo}..{data.hi}")
            print(f"  {'i':>4}  {'d':>8}  {'f':>12}  {'weight':>8}  q / r")
            for i in range(data.lo, data.hi + 1):
                print(f"  {i:>4}  {data.d[i]:>8}  {str(data.f[i]):>12}  {data.weights[i]:>8}  {data.q[i]} / {data.r[i]}")
    return 0
