"""Benchmark harness: repeated seeded runs, per-instance statistics, and
report tables (CSV + Markdown) with an optional comparison against
previously published reference values.
"""

from __future__ import annotations

import csv
import dataclasses
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .instance import Instance
from .memetic import MemeticParams, RunResult, multi_start_tabu, solve

#: absolute tolerance when counting runs that attained the best value
SR_TOL = 1e-6
#: reference values are published with two decimals
REF_TOL = 5e-3


@dataclass(frozen=True)
class RunReport:
    instance: str
    n: int
    runs: int
    f_best: float
    f_avg: float
    sr: int
    t_best_avg: float
    params: dict = field(default_factory=dict)


def default_cutoff(n: int) -> float:
    """Wall-clock budget in seconds by instance size."""
    if n <= 150:
        return 10.0
    if n <= 1000:
        return 100.0
    if n <= 3000:
        return 1000.0
    return 2000.0


def _one_run(args) -> tuple[float, float]:
    inst, params, algo = args
    runner = multi_start_tabu if algo == "mts" else solve
    res = runner(inst, params)
    return res.f, res.time_to_best


def run_instance(
    inst: Instance,
    params: MemeticParams,
    runs: int = 20,
    cutoff: float | None = None,
    algo: str = "mammdp",
    jobs: int = 1,
) -> RunReport:
    """Solve one instance ``runs`` times with seeds seed+0 .. seed+runs-1."""
    cutoff = default_cutoff(inst.n) if cutoff is None else cutoff
    tasks = [
        (inst, replace(params, seed=params.seed + r, t_out=cutoff), algo)
        for r in range(runs)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_one_run, tasks))
    else:
        results = [_one_run(t) for t in tasks]
    fs = np.array([f for f, _ in results])
    f_best = float(fs.max())
    sr = int(np.sum(fs >= f_best - SR_TOL))
    return RunReport(
        instance=inst.name or "unnamed",
        n=inst.n,
        runs=runs,
        f_best=f_best,
        f_avg=float(fs.mean()),
        sr=sr,
        t_best_avg=float(np.mean([t for _, t in results])),
        params={
            "algo": algo,
            "p": params.p,
            "alpha": params.alpha,
            "t_max": params.t_max,
            "t_out": cutoff,
            "crossover": params.crossover,
            "seed": params.seed,
        },
    )


def run_benchmark(
    instances: Iterable[Instance],
    params: MemeticParams,
    runs: int = 20,
    cutoffs: dict[int, float] | None = None,
    algo: str = "mammdp",
    jobs: int = 1,
) -> list[RunReport]:
    """Benchmark several instances; ``cutoffs`` maps n to an override budget."""
    reports = []
    for inst in instances:
        cutoff = (cutoffs or {}).get(inst.n)
        reports.append(
            run_instance(inst, params, runs=runs, cutoff=cutoff, algo=algo, jobs=jobs)
        )
    return reports


def load_reference(path: str | Path) -> dict[str, float]:
    """CSV `instance,f_pre`, optional header row."""
    ref: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            try:
                ref[row[0].strip()] = float(row[1])
            except (IndexError, ValueError):
                continue  # header or malformed row
    return ref


def classify(f_best: float, f_pre: float, tol: float = REF_TOL) -> str:
    if f_best > f_pre + tol:
        return "better"
    if f_best < f_pre - tol:
        return "worse"
    return "equal"


def compare_reports(
    reports: Sequence[RunReport], ref: dict[str, float]
) -> tuple[dict[str, str], dict[str, int]]:
    """Per-instance better/equal/worse labels plus footer counts."""
    labels: dict[str, str] = {}
    counts = {"better": 0, "equal": 0, "worse": 0}
    for rep in reports:
        if rep.instance not in ref:
            continue
        label = classify(rep.f_best, ref[rep.instance])
        labels[rep.instance] = label
        counts[label] += 1
    return labels, counts


def write_csv(reports: Sequence[RunReport], path: str | Path,
              ref: dict[str, float] | None = None) -> None:
    labels = compare_reports(reports, ref)[0] if ref else {}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["instance", "n", "f_pre", "f_best", "f_avg", "sr", "t_best_avg", "vs_ref"]
        )
        for rep in reports:
            f_pre = ref.get(rep.instance, "") if ref else ""
            writer.writerow([
                rep.instance, rep.n, f_pre,
                f"{rep.f_best:.6f}", f"{rep.f_avg:.6f}",
                f"{rep.sr}/{rep.runs}", f"{rep.t_best_avg:.2f}",
                labels.get(rep.instance, ""),
            ])


def write_markdown(reports: Sequence[RunReport], path: str | Path,
                   ref: dict[str, float] | None = None) -> None:
    labels, counts = compare_reports(reports, ref) if ref else ({}, None)
    lines = [
        "| Instance | n | f_pre | f_best | f_avg | SR | t(s) |",
        "|---|---|---|---|---|---|---|",
    ]
    for rep in reports:
        f_pre = f"{ref[rep.instance]:.2f}" if ref and rep.instance in ref else ""
        lines.append(
            f"| {rep.instance} | {rep.n} | {f_pre} | {rep.f_best:.6f} | "
            f"{rep.f_avg:.6f} | {rep.sr}/{rep.runs} | {rep.t_best_avg:.2f} |"
        )
    if counts is not None:
        lines.append(f"| #Better | | | {counts['better']} | | | |")
        lines.append(f"| #Equal | | | {counts['equal']} | | | |")
        lines.append(f"| #Worse | | | {counts['worse']} | | | |")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
