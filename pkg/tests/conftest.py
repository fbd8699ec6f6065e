import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from maxmean import GeneratorConfig, Instance, InstanceKind, generate


@pytest.fixture
def tiny_pair() -> Instance:
    """n=2 with d_12 = 4: the single feasible subset scores 2.0."""
    d = np.array([[0.0, 4.0], [4.0, 0.0]])
    return Instance(n=2, d=d, name="pair4")


@pytest.fixture
def uniform_triangle() -> Instance:
    """n=3 with all distances 6: the full set scores 6.0."""
    d = np.full((3, 3), 6.0)
    np.fill_diagonal(d, 0.0)
    return Instance(n=3, d=d, name="tri6")


def random_instance(n: int, seed: int, kind=InstanceKind.TYPE_I) -> Instance:
    return generate(GeneratorConfig(n=n, seed=seed, kind=kind))


def random_feasible_bits(n: int, rng: np.random.Generator) -> np.ndarray:
    bits = rng.integers(0, 2, size=n).astype(np.int8)
    while int(bits.sum()) < 2:
        bits[int(rng.integers(0, n))] = 1
    return bits
