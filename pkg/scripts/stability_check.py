#!/usr/bin/env python3
"""Reproducibility experiment: do two independent seed blocks agree?

Generates instances of both types at a given size, benchmarks each twice
with disjoint seed blocks, and reports how often the two blocks reach the
same best objective value.  High agreement indicates the cutoff is deep
enough for the solver to be effectively deterministic at that size.

Example:
    python scripts/stability_check.py --n 200 --instances 10 --cutoff 2
"""

import argparse

from maxmean import GeneratorConfig, MemeticParams, generate, run_instance
from maxmean.instance import InstanceKind


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200)
    parser.add_argument("--instances", type=int, default=10,
                        help="total count, split evenly between both types")
    parser.add_argument("--runs", type=int, default=20, help="runs per block")
    parser.add_argument("--cutoff", type=float, default=2.0)
    parser.add_argument("--seed", type=int, default=9000,
                        help="base seed for instance generation")
    args = parser.parse_args()

    agreements = 0
    for k in range(args.instances):
        kind = (InstanceKind.TYPE_I if k < (args.instances + 1) // 2
                else InstanceKind.TYPE_II)
        inst = generate(GeneratorConfig(n=args.n, kind=kind, seed=args.seed + k))
        rep_a = run_instance(inst, MemeticParams(seed=1000),
                             runs=args.runs, cutoff=args.cutoff)
        rep_b = run_instance(inst, MemeticParams(seed=2000),
                             runs=args.runs, cutoff=args.cutoff)
        agree = abs(rep_a.f_best - rep_b.f_best) <= 1e-6
        agreements += agree
        print(f"{inst.name}: block A f_best={rep_a.f_best:.6f} "
              f"block B f_best={rep_b.f_best:.6f} "
              f"{'agree' if agree else 'MISMATCH'}")
    print(f"\nagreement: {agreements}/{args.instances}")


if __name__ == "__main__":
    main()
