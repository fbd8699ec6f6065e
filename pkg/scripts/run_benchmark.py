#!/usr/bin/env python3
"""Run the standard benchmark protocol over a manifest of instance files.

Per instance: 20 independent runs with consecutive seeds under the
size-based wall-clock cutoff (10 s for n <= 150, 100 s for n <= 1000,
1000 s for n <= 3000, 2000 s above).  Writes report.csv and report.md;
pass --ref to add a better/equal/worse comparison column.

Example:
    python scripts/run_benchmark.py --manifest suite/manifest.txt --out results/
"""

import argparse
from pathlib import Path

from maxmean import MemeticParams, read_instance, run_benchmark
from maxmean.bench import load_reference, write_csv, write_markdown


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--manifest", type=Path, required=True)
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--runs", type=int, default=20)
    parser.add_argument("--algo", choices=("mammdp", "mts"), default="mammdp")
    parser.add_argument("--crossover", choices=("uniform", "greedy"),
                        default="uniform")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cutoff", type=float, default=None,
                        help="override the size-based per-run budget (seconds)")
    parser.add_argument("--ref", type=Path, default=None,
                        help="CSV of instance,f_pre reference values")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    instances = []
    for line in args.manifest.read_text(encoding="utf-8").splitlines():
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        path = Path(text)
        if not path.is_absolute():
            path = args.manifest.parent / path
        instances.append(read_instance(path))

    params = MemeticParams(crossover=args.crossover, seed=args.seed)
    cutoffs = ({inst.n: args.cutoff for inst in instances}
               if args.cutoff is not None else None)
    reports = run_benchmark(instances, params, runs=args.runs,
                            cutoffs=cutoffs, algo=args.algo, jobs=args.jobs)

    ref = load_reference(args.ref) if args.ref else None
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(reports, args.out / "report.csv", ref=ref)
    write_markdown(reports, args.out / "report.md", ref=ref)
    for rep in reports:
        print(f"{rep.instance}: f_best={rep.f_best:.6f} f_avg={rep.f_avg:.6f} "
              f"SR={rep.sr}/{rep.runs} t={rep.t_best_avg:.2f}s")


if __name__ == "__main__":
    main()
