"""Command-line entry point: instance generation, solving, exact
verification, property checks, and benchmarking."""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import bench
from .evaluation import Solution, apply_flip, delta_flip, evaluate_full
from .instance import (
    GeneratorConfig,
    InstanceKind,
    ParseError,
    generate,
    read_instance,
    write_instance,
)
from .memetic import EventLog, MemeticParams, multi_start_tabu, solve
from .oracle import brute_force
from .tabu import TabuParams, tabu_search


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxmean", description="Max-mean dispersion solver"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--type", type=int, choices=(1, 2), default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--decimals", type=int, default=2)
    gen.add_argument("--out", required=True)

    slv = sub.add_parser("solve", help="solve an instance file")
    slv.add_argument("file")
    slv.add_argument("--algo", choices=("mammdp", "mts", "ts"), default="mammdp")
    slv.add_argument("--crossover", choices=("uniform", "greedy"), default="uniform")
    slv.add_argument("--p", type=int, default=10)
    slv.add_argument("--alpha", type=int, default=50000)
    slv.add_argument("--tmax", type=int, default=120)
    slv.add_argument("--timeout", type=float, default=None,
                     help="seconds; defaults to the size-based cutoff")
    slv.add_argument("--seed", type=int, default=0)
    slv.add_argument("--iters", type=int, default=None,
                     help="deterministic budget: TS iterations (ts), "
                          "generations (mammdp) or restarts (mts)")
    slv.add_argument("--events", default=None,
                     help="write the driver event log to this CSV file")
    slv.add_argument("--trace", default=None,
                     help="write the TS move trace to this CSV file (ts only)")

    orc = sub.add_parser("oracle", help="exact optimum by exhaustive enumeration")
    orc.add_argument("file")

    ver = sub.add_parser("verify", help="incremental-evaluation property checks")
    ver.add_argument("file")
    ver.add_argument("--cases", type=int, default=10000)
    ver.add_argument("--seed", type=int, default=0)

    bch = sub.add_parser("bench", help="benchmark a manifest of instance files")
    bch.add_argument("--manifest", required=True,
                     help="text file, one instance path per line")
    bch.add_argument("--runs", type=int, default=20)
    bch.add_argument("--ref", default=None, help="CSV instance,f_pre")
    bch.add_argument("--out", required=True, help="report output directory")
    bch.add_argument("--algo", choices=("mammdp", "mts"), default="mammdp")
    bch.add_argument("--crossover", choices=("uniform", "greedy"), default="uniform")
    bch.add_argument("--seed", type=int, default=0)
    bch.add_argument("--jobs", type=int, default=1)
    bch.add_argument("--cutoff", type=float, default=None,
                     help="override the size-based per-run budget (seconds)")
    return parser


def _format_members(sol_x: np.ndarray) -> str:
    return "{" + ",".join(str(int(i) + 1) for i in np.flatnonzero(sol_x)) + "}"


def _cmd_gen(args) -> int:
    kind = InstanceKind.TYPE_I if args.type == 1 else InstanceKind.TYPE_II
    inst = generate(GeneratorConfig(n=args.n, kind=kind, seed=args.seed,
                                    decimals=args.decimals))
    write_instance(inst, args.out)
    print(f"wrote {args.out} (n={inst.n}, {inst.kind.value})")
    return 0


def _cmd_solve(args) -> int:
    inst = read_instance(args.file)
    timeout = args.timeout if args.timeout is not None else bench.default_cutoff(inst.n)
    deterministic = args.iters is not None

    if args.algo == "ts":
        rng = np.random.default_rng(args.seed)
        bits = rng.integers(0, 2, size=inst.n).astype(np.int8)
        while int(bits.sum()) < 2:
            bits[rng.integers(0, inst.n)] = 1
        trace = [] if args.trace else None
        start = time.monotonic()
        best = tabu_search(
            inst,
            Solution.from_bits(inst, bits),
            TabuParams(alpha=args.alpha, t_max=args.tmax),
            rng,
            deadline=None if deterministic else start + timeout,
            max_iters=args.iters,
            trace=trace,
        )
        elapsed = time.monotonic() - start
        if trace is not None:
            with open(args.trace, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["iteration", "index", "delta", "f", "expiry"])
                for y, i, dlt, f, exp in trace:
                    writer.writerow([y, i + 1, repr(float(dlt)), repr(float(f)), exp])
        line = f"f={best.f:.6f} m={best.m} M={_format_members(best.x)}"
        if not deterministic:
            line += f" t_best={elapsed:.2f}"
        print(line)
        return 0

    params = MemeticParams(
        p=args.p, alpha=args.alpha, t_max=args.tmax, t_out=timeout,
        crossover=args.crossover, seed=args.seed, max_generations=args.iters,
    )
    events = EventLog() if args.events else None
    runner = multi_start_tabu if args.algo == "mts" else solve
    result = runner(inst, params, events=events)
    if events is not None:
        with open(args.events, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["event", "wall_ms", "detail"])
            for event, wall_ms, detail in events:
                writer.writerow([event, f"{wall_ms:.1f}", detail])
    line = f"f={result.f:.6f} m={result.m} M={_format_members(result.x)}"
    if deterministic:
        line += f" gens={result.generations} best_gen={result.best_generation}"
    else:
        line += f" t_best={result.time_to_best:.2f}"
    print(line)
    return 0


def _cmd_oracle(args) -> int:
    inst = read_instance(args.file)
    f_opt, members = brute_force(inst)
    print(f"f={f_opt:.6f} m={len(members)} "
          f"M={{{','.join(str(i) for i in members)}}}")
    return 0


def _cmd_verify(args) -> int:
    inst = read_instance(args.file)
    rng = np.random.default_rng(args.seed)
    max_err = 0.0
    for _ in range(args.cases):
        bits = rng.integers(0, 2, size=inst.n).astype(np.int8)
        while int(bits.sum()) < 2:
            bits[rng.integers(0, inst.n)] = 1
        sol = Solution.from_bits(inst, bits)
        i = int(rng.integers(0, inst.n))
        if sol.x[i] and sol.m <= 2:
            continue
        predicted = delta_flip(sol, i)
        flipped = bits.copy()
        flipped[i] ^= 1
        actual = evaluate_full(inst, flipped)[0] - sol.f
        err = abs(predicted - actual) / max(1.0, abs(sol.f))
        max_err = max(max_err, err)
        # involution: apply twice restores the solution exactly
        apply_flip(sol, i)
        apply_flip(sol, i)
        if not np.array_equal(sol.x, bits) or abs(sol.f - evaluate_full(inst, bits)[0]) > 1e-9:
            print("involution=failed", file=sys.stderr)
            return 1
    print(f"cases={args.cases} max_delta_error={max_err:.3e} involution=ok")
    return 0


def _cmd_bench(args) -> int:
    manifest = Path(args.manifest)
    base = manifest.parent
    instances = []
    for raw in manifest.read_text(encoding="utf-8").splitlines():
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        path = Path(text)
        if not path.is_absolute():
            path = base / path
        if not path.exists():
            print(f"missing instance file: {path}", file=sys.stderr)
            return 1
        instances.append(read_instance(path))
    params = MemeticParams(crossover=args.crossover, seed=args.seed)
    cutoffs = None
    if args.cutoff is not None:
        cutoffs = {inst.n: args.cutoff for inst in instances}
    reports = bench.run_benchmark(
        instances, params, runs=args.runs, cutoffs=cutoffs,
        algo=args.algo, jobs=args.jobs,
    )
    ref = bench.load_reference(args.ref) if args.ref else None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bench.write_csv(reports, out / "report.csv", ref=ref)
    bench.write_markdown(reports, out / "report.md", ref=ref)
    for rep in reports:
        print(f"{rep.instance}: f_best={rep.f_best:.6f} f_avg={rep.f_avg:.6f} "
              f"SR={rep.sr}/{rep.runs} t={rep.t_best_avg:.2f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("MAXMEAN_LOG", "WARNING").upper())
    args = _build_parser().parse_args(argv)
    handler = {
        "gen": _cmd_gen,
        "solve": _cmd_solve,
        "oracle": _cmd_oracle,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
    }[args.command]
    try:
        return handler(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
