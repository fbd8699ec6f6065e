"""Exhaustive ground truth for small instances.

Enumerates every subset with at least two elements and scores it by direct
summation of the selected pairwise distances (no incremental shortcuts, so
results are independent of the cached-evaluation code paths).
"""

from __future__ import annotations

import numpy as np

from .instance import Instance

MAX_N = 24
_CHUNK = 1 << 18


class InstanceTooLargeError(ValueError):
    """Instance exceeds the exhaustive enumeration cap."""


def brute_force(inst: Instance) -> tuple[float, tuple[int, ...]]:
    """Exact optimum over all subsets with |M| >= 2.

    Returns (optimal objective, 1-based argmax subset); among tied optima
    the lexicographically smallest subset is reported.
    """
    n = inst.n
    if n > MAX_N:
        raise InstanceTooLargeError(f"n={n} exceeds enumeration cap {MAX_N}")
    bits_of = np.arange(n, dtype=np.uint32)
    best_f = -np.inf
    best_sets: list[tuple[int, ...]] = []
    for lo in range(0, 1 << n, _CHUNK):
        masks = np.arange(lo, min(lo + _CHUNK, 1 << n), dtype=np.uint32)
        sel = ((masks[:, None] >> bits_of) & 1).astype(np.float64)
        m = sel.sum(axis=1)
        pair_sums = 0.5 * ((sel @ inst.d) * sel).sum(axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            f = np.where(m >= 2, pair_sums / m, -np.inf)
        top = float(f.max(initial=-np.inf))
        if top < best_f:
            continue
        tied = masks[f == top]
        subsets = [
            tuple(int(i) + 1 for i in range(n) if mask >> i & 1) for mask in tied
        ]
        if top > best_f:
            best_f = top
            best_sets = subsets
        else:
            best_sets.extend(subsets)
    return best_f, min(best_sets)
