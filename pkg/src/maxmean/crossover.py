"""Offspring generation: uniform and greedy crossover."""

from __future__ import annotations

import numpy as np

from .evaluation import Solution, delta_flip, apply_flip
from .instance import Instance


def _repair(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Select random extra elements until at least two are selected."""
    while int(x.sum()) < 2:
        off = np.flatnonzero(x == 0)
        x[off[rng.integers(0, len(off))]] = 1
    return x


def uniform_crossover(
    s1: Solution, s2: Solution, rng: np.random.Generator
) -> np.ndarray:
    """Each child bit copies parent 1 with probability 0.5, else parent 2."""
    if s1.x.shape != s2.x.shape:
        raise ValueError("parent lengths differ")
    take_first = rng.random(len(s1.x)) < 0.5
    child = np.where(take_first, s1.x, s2.x).astype(np.int8)
    return _repair(child, rng)


def greedy_crossover(inst: Instance, s1: Solution, s2: Solution) -> np.ndarray:
    """Keep the parents' common elements, then alternately add the best
    remaining element of each parent until the child reaches the average
    parent size (round half up).  Deterministic: move-value ties are broken
    by the smallest element index.
    """
    if s1.m < 2 or s2.m < 2:
        raise ValueError("both parents must have at least two selected elements")
    m_target = (s1.m + s2.m + 1) // 2
    common = s1.x.astype(bool) & s2.x.astype(bool)
    partial = Solution.from_bits(inst, common.astype(np.int8))
    donor1 = list(np.flatnonzero(s1.x.astype(bool) & ~common))
    donor2 = list(np.flatnonzero(s2.x.astype(bool) & ~common))

    # size is re-checked between the two per-round additions so the child
    # lands exactly on m_target instead of overshooting by one
    while partial.m < m_target:
        progressed = False
        for donor in (donor1, donor2):
            if partial.m >= m_target:
                break
            if not donor:
                continue
            best = min(donor, key=lambda v: (-delta_flip(partial, v), v))
            donor.remove(best)
            apply_flip(partial, best)
            progressed = True
        if not progressed:
            break
    # feasible parents guarantee m_target >= 2 and enough donor elements
    return partial.x
