"""Tabu search over the one-flip neighborhood.

Each iteration scans all n flips, applies the best eligible one (not tabu,
or beating the best solution found in this call), marks the flipped variable
tabu for a tenure drawn from a periodic step schedule, and stops after a
fixed number of consecutive non-improving iterations or at a deadline.

The inner loop is compiled with numba; the tenure schedule and the wrapper
stay in plain Python.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .evaluation import InfeasibleSolutionError, Solution, evaluate_full
from .instance import Instance

TENURE_PATTERN = (1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1)

#: iterations between deadline checks in the wrapper
_CHUNK = 4096


@dataclass(frozen=True)
class TenureSchedule:
    """Periodic step function for the tabu tenure.

    ``a`` holds the 15 step heights t_max/8 * (1,2,1,4,1,2,1,8,1,2,1,4,1,2,1);
    ``y`` the interval margins y_1 = 1, y_{i+1} = y_i + 5*a_i.  The clock
    wraps after ``period`` = y_15 - 1 iterations, so for t_max = 120 the
    period is 2325.
    """

    t_max: int
    a: tuple[int, ...] = field(init=False)
    y: tuple[int, ...] = field(init=False)
    period: int = field(init=False)

    def __post_init__(self):
        if self.t_max < 1:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        a = tuple(max(1, self.t_max * k // 8) for k in TENURE_PATTERN)
        y = [1]
        for ai in a[:-1]:
            y.append(y[-1] + 5 * ai)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "y", tuple(y))
        object.__setattr__(self, "period", y[-1] - 1)


def tenure_at(schedule: TenureSchedule, y: int, r: int) -> int:
    """Tenure a_i + r for the interval containing ((y-1) mod period) + 1."""
    if y < 1:
        raise ValueError(f"iteration must be >= 1, got {y}")
    yy = (y - 1) % schedule.period + 1
    idx = 0
    for k, margin in enumerate(schedule.y):
        if margin > yy:
            break
        idx = k
    return schedule.a[idx] + r


@dataclass(frozen=True)
class TabuParams:
    alpha: int = 50000
    t_max: int = 120

    def __post_init__(self):
        if self.alpha < 1 or self.t_max < 1:
            raise ValueError("alpha and t_max must be positive")


@dataclass
class TabuState:
    """Per-variable tabu expiries plus the schedule clock.

    Move i is tabu at iteration y iff y < expiry[i].
    """

    expiry: np.ndarray
    iter: int
    schedule: TenureSchedule


@njit(cache=True)
def _exact_objective(d, x, m):
    total = 0.0
    n = x.shape[0]
    for i in range(n):
        if x[i]:
            for j in range(i + 1, n):
                if x[j]:
                    total += d[i, j]
    return total / m


@njit(cache=True)
def _ts_chunk(
    d,
    x,
    w,
    f,
    m,
    expiry,
    y,
    dcount,
    best_x,
    best_f,
    alpha,
    a_seq,
    margins,
    period,
    rng,
    max_steps,
    tie_buf,
    trace,
    do_trace,
):
    """Run up to max_steps tabu iterations in place.

    Returns (f, m, y, dcount, best_f, steps, stuck) where stuck means no
    legal move existed (possible only on degenerate landscapes).
    """
    n = x.shape[0]
    steps = 0
    stuck = False
    while steps < max_steps and dcount < alpha:
        yy = y + 1
        # pass 1: best eligible move value
        best_delta = -np.inf
        found = False
        for i in range(n):
            if x[i]:
                if m == 2:
                    continue  # removal would violate the size constraint
                delta = (f - w[i]) / (m - 1)
            else:
                delta = (w[i] - f) / (m + 1)
            if yy >= expiry[i] or f + delta > best_f:
                found = True
                if delta > best_delta:
                    best_delta = delta
        if found:
            # pass 2: uniform tie-break among eligible argmax moves
            cnt = 0
            for i in range(n):
                if x[i]:
                    if m == 2:
                        continue
                    delta = (f - w[i]) / (m - 1)
                else:
                    delta = (w[i] - f) / (m + 1)
                if delta == best_delta and (yy >= expiry[i] or f + delta > best_f):
                    tie_buf[cnt] = i
                    cnt += 1
            mv = tie_buf[rng.integers(0, cnt)]
            if x[mv]:
                delta = (f - w[mv]) / (m - 1)
            else:
                delta = (w[mv] - f) / (m + 1)
        else:
            # all moves tabu and none aspirating: take the legal move whose
            # tabu status expires soonest (lowest index on ties)
            mv = -1
            soonest = np.int64(2**62)
            for i in range(n):
                if x[i] and m == 2:
                    continue
                if expiry[i] < soonest:
                    soonest = expiry[i]
                    mv = i
            if mv < 0:
                stuck = True
                break
            if x[mv]:
                delta = (f - w[mv]) / (m - 1)
            else:
                delta = (w[mv] - f) / (m + 1)

        y = yy
        steps += 1
        if x[mv]:
            for j in range(n):
                w[j] -= d[mv, j]
            x[mv] = 0
            m -= 1
        else:
            for j in range(n):
                w[j] += d[mv, j]
            x[mv] = 1
            m += 1
        f += delta

        pos = (y - 1) % period + 1
        idx = 0
        for k in range(margins.shape[0]):
            if margins[k] > pos:
                break
            idx = k
        tt = a_seq[idx] + rng.integers(0, 3)
        expiry[mv] = y + tt + 1

        if f > best_f:
            f = _exact_objective(d, x, m)  # cap float drift at each new best
            if f > best_f:
                best_f = f
                for j in range(n):
                    best_x[j] = x[j]
                dcount = 0
            else:
                dcount += 1
        else:
            dcount += 1

        if do_trace:
            trace[steps - 1, 0] = y
            trace[steps - 1, 1] = mv
            trace[steps - 1, 2] = delta
            trace[steps - 1, 3] = f
            trace[steps - 1, 4] = expiry[mv]
    return f, m, y, dcount, best_f, steps, stuck


def tabu_search(
    inst: Instance,
    s0: Solution,
    params: TabuParams | None = None,
    rng: np.random.Generator | None = None,
    deadline: float | None = None,
    max_iters: int | None = None,
    trace: list | None = None,
) -> Solution:
    """Improve s0 by tabu search; returns the best solution found.

    The search stops after ``params.alpha`` consecutive non-improving
    iterations, at ``deadline`` (time.monotonic() reference), or after
    ``max_iters`` total iterations.  When ``trace`` is a list it receives
    one (iteration, flipped index, move value, objective, tabu expiry)
    tuple per applied move.
    """
    if params is None:
        params = TabuParams()
    if rng is None:
        rng = np.random.default_rng()
    if s0.m < 2:
        raise InfeasibleSolutionError(f"starting solution has m={s0.m} < 2")

    sched = TenureSchedule(params.t_max)
    a_seq = np.asarray(sched.a, dtype=np.int64)
    margins = np.asarray(sched.y, dtype=np.int64)

    x = np.ascontiguousarray(s0.x, dtype=np.int8).copy()
    f, w, m = evaluate_full(inst, x)  # fresh caches at the start of each call
    best_x = x.copy()
    best_f = f
    n = inst.n
    expiry = np.zeros(n, dtype=np.int64)
    tie_buf = np.empty(n, dtype=np.int64)
    do_trace = trace is not None
    trace_buf = np.empty((_CHUNK if do_trace else 1, 5))

    y = 0
    dcount = 0
    while dcount < params.alpha:
        steps = _CHUNK
        if max_iters is not None:
            steps = min(steps, max_iters - y)
            if steps <= 0:
                break
        f, m, y, dcount, best_f, done, stuck = _ts_chunk(
            inst.d, x, w, f, m, expiry, y, dcount, best_x, best_f,
            params.alpha, a_seq, margins, sched.period, rng, steps,
            tie_buf, trace_buf, do_trace,
        )
        if do_trace:
            for row in trace_buf[:done]:
                trace.append((int(row[0]), int(row[1]), row[2], row[3], int(row[4])))
        if stuck:
            break
        if deadline is not None and time.monotonic() >= deadline:
            break
    return Solution.from_bits(inst, best_x)
