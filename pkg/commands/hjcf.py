"""Hjcf command - continued fractions, K^2 and toric data of one singularity."""

from hjcf import WahlData, hj_expand, ksq_minres, ksq_oracle, ksq_pair, toric_data
from json_io import print_json


def _fmt(cf) -> str:
    return "[" + ", ".join(map(str, cf)) + "]"


def run_hjcf(args):
    if args.action == "expand":
        chain = hj_expand(args.n, args.a)
        if args.json:
            print_json({"n": args.n, "a": args.a, "chain": list(chain)})
        else:
            print(f"{args.n}/{args.a} = {_fmt(chain)}")
    elif args.action == "ksq":
        ksq = ksq_minres(args.n, args.a)
        oracle, _ = ksq_oracle(args.n, args.a)
        if args.json:
            print_json({"n": args.n, "a": args.a, "ksq": str(ksq), "ksq_pair": str(ksq_pair(args.n, args.a)),
                        "ksq_oracle": str(oracle)})
        else:
            print(f"1/{args.n}(1,{args.a}): K^2 = {ksq}")
            print(f"  (K + D')^2 = {ksq_pair(args.n, args.a)}")
            print(f"  intersection-matrix check: {oracle}")
        if oracle != ksq:
            return 2
    elif args.action == "toric":
        data = toric_data(args.n, args.a)
        if args.json:
            print_json(data.to_dict())
        else:
            print(f"1/{args.n}(1,{args.a}) chain {_fmt(data.chain)}")
            print(f"  {'i':>3}  {'b_i':>4}  {'alpha':>7}  {'beta':>7}  discrepancy")
            for i, (b, al, be, c) in enumerate(zip(data.chain, data.alphas, data.betas, data.discrepancies), 1):
                print(f"  {i:>3}  {b:>4}  {al:>7}  {be:>7}  {c}")
    elif args.action == "wahl":
        w = WahlData(args.m, args.a)
        if args.json:
            print_json({**w.to_dict(), "chain": list(w.chain()), "cqs": w.cqs().to_dict() if w.cqs() else None})
        else:
            print(f"{w}: {w.cqs() or 'smooth'} chain {_fmt(w.chain())}")
    return 0
