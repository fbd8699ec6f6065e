"""Memetic driver: population of tabu-search local optima, recombined via
a pair set that combines every pair of population members exactly once,
with a full restart (preserving the global best) when the pair set empties.

Also provides the multi-start tabu search baseline.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .crossover import greedy_crossover, uniform_crossover
from .evaluation import Solution
from .instance import Instance
from .tabu import TabuParams, tabu_search

log = logging.getLogger(__name__)

#: attempts to regenerate a duplicate member before accepting it
_DEDUP_RETRIES = 20


class UpdateResult(enum.Enum):
    INSERTED = "inserted"
    REJECTED = "rejected"


@dataclass(frozen=True)
class MemeticParams:
    p: int = 10
    alpha: int = 50000
    t_max: int = 120
    t_out: float = 10.0
    crossover: str = "uniform"  # "uniform" or "greedy"
    seed: int = 0
    max_generations: int | None = None  # deterministic budget mode

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"population size must be >= 2, got {self.p}")
        if self.crossover not in ("uniform", "greedy"):
            raise ValueError(f"unknown crossover {self.crossover!r}")

    def tabu_params(self) -> TabuParams:
        return TabuParams(alpha=self.alpha, t_max=self.t_max)


@dataclass
class Population:
    """p member solutions, their identities, and the unexplored pair set.

    Pairs are stored over slot indices; ``uids`` gives each member a unique
    identity so event logs can distinguish a slot's successive occupants.
    """

    members: list[Solution]
    uids: list[int]
    pairs: set[tuple[int, int]]
    best: Solution

    _next_uid: int = 0

    def new_uid(self) -> int:
        uid = self._next_uid
        self._next_uid += 1
        return uid

    def reset_pairs(self) -> None:
        p = len(self.members)
        self.pairs = {(i, j) for i in range(p) for j in range(i + 1, p)}

    def draw_pair(self, rng: np.random.Generator) -> tuple[int, int]:
        order = sorted(self.pairs)
        pair = order[int(rng.integers(0, len(order)))]
        self.pairs.remove(pair)
        return pair

    def worst_slot(self) -> int:
        return min(range(len(self.members)), key=lambda k: (self.members[k].f, k))

    def best_slot(self) -> int:
        return max(range(len(self.members)), key=lambda k: (self.members[k].f, -k))


@dataclass
class RunResult:
    x: np.ndarray
    f: float
    m: int
    time_to_best: float
    generations: int
    restarts: int
    best_generation: int

    def solution(self, inst: Instance) -> Solution:
        return Solution.from_bits(inst, self.x)


class EventLog(list):
    """Optional (event, wall_ms, detail) records for audits."""

    def __init__(self, start: float | None = None):
        super().__init__()
        self.start = time.monotonic() if start is None else start

    def emit(self, event: str, detail: str = "") -> None:
        self.append((event, (time.monotonic() - self.start) * 1000.0, detail))


def _random_feasible(n: int, rng: np.random.Generator) -> np.ndarray:
    bits = rng.integers(0, 2, size=n).astype(np.int8)
    while int(bits.sum()) < 2:
        off = np.flatnonzero(bits == 0)
        bits[off[rng.integers(0, len(off))]] = 1
    return bits


def init_population(
    inst: Instance,
    params: MemeticParams,
    rng: np.random.Generator,
    deadline: float | None = None,
    events: EventLog | None = None,
) -> Population:
    """p random fair-coin solutions, each improved by tabu search.

    Members duplicating an earlier one are regenerated a bounded number of
    times; on tiny landscapes the duplicate is kept (logged at info level,
    since deep tabu search legitimately converges to one optimum there).
    """
    tp = params.tabu_params()
    members: list[Solution] = []
    for k in range(params.p):
        member = None
        for attempt in range(_DEDUP_RETRIES + 1):
            cand = tabu_search(
                inst,
                Solution.from_bits(inst, _random_feasible(inst.n, rng)),
                tp,
                rng,
                deadline=deadline,
            )
            member = cand
            if all(not np.array_equal(cand.x, m.x) for m in members):
                break
        else:
            log.info("population slot %d kept a duplicate member", k)
        members.append(member)
        if events is not None:
            events.emit("init_member", f"slot={k} f={member.f:.6f}")
    pop = Population(members=members, uids=[], pairs=set(), best=members[0].copy())
    pop.uids = [pop.new_uid() for _ in members]
    pop.best = members[pop.best_slot()].copy()
    pop.reset_pairs()
    return pop


def update_population(
    pop: Population, offspring: Solution, events: EventLog | None = None
) -> UpdateResult:
    """Replace the worst member when the offspring is new and strictly better.

    On insertion all pairs involving the replaced member leave the pair set
    and the pairs joining the offspring with every other member enter it.
    """
    if any(np.array_equal(offspring.x, m.x) for m in pop.members):
        if events is not None:
            events.emit("rejected", "duplicate")
        return UpdateResult.REJECTED
    worst = pop.worst_slot()
    if offspring.f <= pop.members[worst].f:
        if events is not None:
            events.emit("rejected", f"f={offspring.f:.6f}")
        return UpdateResult.REJECTED
    pop.members[worst] = offspring
    pop.uids[worst] = pop.new_uid()
    pop.pairs = {pr for pr in pop.pairs if worst not in pr}
    pop.pairs |= {(min(worst, k), max(worst, k)) for k in range(len(pop.members)) if k != worst}
    if events is not None:
        events.emit("inserted", f"slot={worst} f={offspring.f:.6f} pairs={len(pop.pairs)}")
    return UpdateResult.INSERTED


def solve(
    inst: Instance, params: MemeticParams, events: EventLog | None = None
) -> RunResult:
    """Run the memetic algorithm until the time budget (or, in deterministic
    mode, the generation budget) is exhausted."""
    rng = np.random.default_rng(params.seed)
    start = time.monotonic()
    budget = params.max_generations
    deadline = None if budget is not None else start + params.t_out

    def out_of_time() -> bool:
        if budget is not None:
            return generations >= budget
        return time.monotonic() >= deadline

    tp = params.tabu_params()
    best: Solution | None = None
    t_best = 0.0
    best_gen = 0
    generations = 0
    restarts = -1

    while True:
        pop = init_population(inst, params, rng, deadline=deadline, events=events)
        restarts += 1
        if best is not None:
            worst = pop.worst_slot()
            pop.members[worst] = best.copy()
            pop.uids[worst] = pop.new_uid()
        # the fresh population may contain a new overall best
        slot = pop.best_slot()
        if best is None or pop.members[slot].f > best.f:
            best = pop.members[slot].copy()
            t_best = time.monotonic() - start
            best_gen = generations
            if events is not None:
                events.emit("new_best", f"f={best.f:.6f}")
        pop.best = best.copy()
        if events is not None:
            events.emit("restart", f"epoch={restarts} pairs={len(pop.pairs)}")

        while pop.pairs and not out_of_time():
            i, j = pop.draw_pair(rng)
            if events is not None:
                events.emit("pair_drawn", f"uids={pop.uids[i]},{pop.uids[j]} epoch={restarts}")
            s1, s2 = pop.members[i], pop.members[j]
            if params.crossover == "uniform":
                bits = uniform_crossover(s1, s2, rng)
            else:
                bits = greedy_crossover(inst, s1, s2)
            offspring = tabu_search(
                inst, Solution.from_bits(inst, bits), tp, rng, deadline=deadline
            )
            generations += 1
            if events is not None:
                events.emit("offspring_f", f"f={offspring.f:.6f}")
            if offspring.f > best.f:
                best = offspring.copy()
                pop.best = best.copy()
                t_best = time.monotonic() - start
                best_gen = generations
                if events is not None:
                    events.emit("new_best", f"f={best.f:.6f}")
            update_population(pop, offspring, events=events)
        if out_of_time():
            break

    final = best.copy()
    final.refresh()
    return RunResult(
        x=final.x,
        f=final.f,
        m=final.m,
        time_to_best=t_best,
        generations=generations,
        restarts=restarts,
        best_generation=best_gen,
    )


def multi_start_tabu(
    inst: Instance, params: MemeticParams, events: EventLog | None = None
) -> RunResult:
    """Repeated tabu search from fresh random solutions until the budget ends.

    In deterministic mode ``max_generations`` counts restarts.
    """
    rng = np.random.default_rng(params.seed)
    start = time.monotonic()
    budget = params.max_generations
    deadline = None if budget is not None else start + params.t_out
    tp = params.tabu_params()

    best: Solution | None = None
    t_best = 0.0
    best_gen = 0
    restarts = 0
    while True:
        s0 = Solution.from_bits(inst, _random_feasible(inst.n, rng))
        cand = tabu_search(inst, s0, tp, rng, deadline=deadline)
        restarts += 1
        if best is None or cand.f > best.f:
            best = cand
            t_best = time.monotonic() - start
            best_gen = restarts
            if events is not None:
                events.emit("new_best", f"f={best.f:.6f}")
        if budget is not None:
            if restarts >= budget:
                break
        elif time.monotonic() >= deadline:
            break

    final = best.copy()
    final.refresh()
    return RunResult(
        x=final.x,
        f=final.f,
        m=final.m,
        time_to_best=t_best,
        generations=restarts,
        restarts=restarts,
        best_generation=best_gen,
    )
