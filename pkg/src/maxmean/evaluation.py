"""Solution representation and objective evaluation.

The objective of a subset M is the sum of pairwise distances among selected
elements divided by |M| (defined as 0 when fewer than two elements are
selected).  Alongside the bit vector we cache |M|, the objective value and
the gain vector w, where w[i] is the summed distance from element i to every
selected element.  This makes the value of any one-flip move an O(1) lookup
and the move application an O(n) update.
"""

from __future__ import annotations

import numpy as np

from .instance import Instance


class ForbiddenMoveError(ValueError):
    """A flip that would leave fewer than two selected elements."""


class InfeasibleSolutionError(ValueError):
    """A solution with fewer than two selected elements where one is required."""


def evaluate_full(inst: Instance, x: np.ndarray) -> tuple[float, np.ndarray, int]:
    """Evaluate a bit vector from scratch in O(n^2).

    Returns (objective, gain vector, selection count).
    """
    x = np.asarray(x)
    if x.shape != (inst.n,):
        raise ValueError(f"bit vector length {x.shape} does not match n={inst.n}")
    xf = x.astype(np.float64)
    w = inst.d @ xf
    m = int(xf.sum())
    f = 0.5 * float(w @ xf) / m if m >= 2 else 0.0
    return f, w, m


class Solution:
    """Mutable selected-subset state with cached objective and gain vector."""

    __slots__ = ("inst", "x", "m", "f", "w")

    def __init__(self, inst: Instance, x: np.ndarray, m: int, f: float, w: np.ndarray):
        self.inst = inst
        self.x = x
        self.m = m
        self.f = f
        self.w = w

    @classmethod
    def from_bits(cls, inst: Instance, x: np.ndarray) -> "Solution":
        x = np.ascontiguousarray(x, dtype=np.int8).copy()
        f, w, m = evaluate_full(inst, x)
        return cls(inst, x, m, f, w)

    def copy(self) -> "Solution":
        return Solution(self.inst, self.x.copy(), self.m, self.f, self.w.copy())

    def refresh(self) -> None:
        """Recompute cached f and w from the bit vector to cap float drift."""
        self.f, self.w, self.m = evaluate_full(self.inst, self.x)

    def selected(self) -> list[int]:
        """Sorted 1-based indices of the selected elements."""
        return [int(i) + 1 for i in np.flatnonzero(self.x)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Solution) and np.array_equal(self.x, other.x)

    def __repr__(self) -> str:
        return f"Solution(f={self.f:.6f}, m={self.m})"

    def format_log(self) -> str:
        members = ",".join(str(i) for i in self.selected())
        return f"f={self.f:.6f} m={self.m} M={{{members}}}"


def delta_flip(sol: Solution, i: int) -> float:
    """Objective change of flipping element i, in O(1).  Does not mutate."""
    m, f, p = sol.m, sol.f, float(sol.w[i])
    if sol.x[i]:
        if m <= 2:
            raise ForbiddenMoveError(
                f"removing element {i + 1} would leave m={m - 1} < 2"
            )
        return (f - p) / (m - 1)
    return (p - f) / (m + 1)


def apply_flip(sol: Solution, i: int) -> None:
    """Flip element i in place: O(n) gain-vector update, cached f and m."""
    dlt = delta_flip(sol, i)
    row = sol.inst.d[i]
    if sol.x[i]:
        sol.w -= row
        sol.x[i] = 0
        sol.m -= 1
    else:
        sol.w += row
        sol.x[i] = 1
        sol.m += 1
    sol.f += dlt
