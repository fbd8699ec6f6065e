#!/usr/bin/env python3
"""Generate a suite of random instances plus a benchmark manifest.

Example:
    python scripts/make_suite.py --sizes 20 50 100 200 --per-size 5 --out suite/
"""

import argparse
from pathlib import Path

from maxmean import GeneratorConfig, generate, write_instance
from maxmean.instance import InstanceKind


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", required=True)
    parser.add_argument("--per-size", type=int, default=5,
                        help="instances per (size, type) combination")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed; instance k uses seed+k")
    parser.add_argument("--decimals", type=int, default=2)
    parser.add_argument("--out", type=Path, required=True)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    names = []
    k = 0
    for n in args.sizes:
        for kind in (InstanceKind.TYPE_I, InstanceKind.TYPE_II):
            for _ in range(args.per_size):
                inst = generate(GeneratorConfig(
                    n=n, kind=kind, seed=args.seed + k, decimals=args.decimals))
                fname = f"{inst.name}.txt"
                write_instance(inst, args.out / fname)
                names.append(fname)
                k += 1
    manifest = args.out / "manifest.txt"
    manifest.write_text("\n".join(names) + "\n", encoding="utf-8")
    print(f"wrote {len(names)} instances and {manifest}")


if __name__ == "__main__":
    main()
