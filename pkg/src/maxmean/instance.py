"""Problem instances: data model, random generation, file I/O.

An instance is a set of n elements with a symmetric distance matrix whose
entries may be negative.  Two random families are supported: type 1 draws
off-diagonal distances uniformly from [-10, 10], type 2 from
[-10, -5] u [5, 10] (fair coin for the interval, then uniform magnitude).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np

SYMMETRY_TOL = 1e-9


class InstanceKind(enum.Enum):
    TYPE_I = "type1"
    TYPE_II = "type2"
    EXTERNAL = "external"


class InvalidConfigError(ValueError):
    """Generator configuration violates a precondition."""


class ParseError(ValueError):
    """Malformed instance file.  Carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Instance:
    """Immutable problem data: element count and symmetric distance matrix."""

    n: int
    d: np.ndarray
    name: str = ""
    kind: InstanceKind = InstanceKind.EXTERNAL

    def __post_init__(self):
        d = np.ascontiguousarray(self.d, dtype=np.float64)
        if self.n < 2:
            raise InvalidConfigError(f"need at least 2 elements, got n={self.n}")
        if d.shape != (self.n, self.n):
            raise InvalidConfigError(
                f"distance matrix shape {d.shape} does not match n={self.n}"
            )
        if not np.array_equal(d, d.T):
            raise InvalidConfigError("distance matrix must be symmetric")
        if np.any(np.diag(d) != 0.0):
            raise InvalidConfigError("self-distances must be zero")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    kind: InstanceKind = InstanceKind.TYPE_I
    seed: int = 0
    decimals: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise InvalidConfigError(f"need n >= 2, got {self.n}")
        if self.kind is InstanceKind.EXTERNAL:
            raise InvalidConfigError("cannot generate an EXTERNAL instance")
        if not 0 <= self.decimals <= 9:
            raise InvalidConfigError(f"decimals must be in [0, 9], got {self.decimals}")


def generate(cfg: GeneratorConfig) -> Instance:
    """Generate a random instance; deterministic for a fixed seed."""
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n
    k = n * (n - 1) // 2
    if cfg.kind is InstanceKind.TYPE_I:
        vals = rng.uniform(-10.0, 10.0, size=k)
    else:
        sign = np.where(rng.integers(0, 2, size=k) == 1, 1.0, -1.0)
        vals = sign * rng.uniform(5.0, 10.0, size=k)
    vals = np.round(vals, cfg.decimals)
    d = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    d[iu] = vals
    d += d.T
    label = "1" if cfg.kind is InstanceKind.TYPE_I else "2"
    name = f"type{label}_n{n}_s{cfg.seed}"
    return Instance(n=n, d=d, name=name, kind=cfg.kind)


def write_instance(inst: Instance, sink: Union[IO[str], str, Path]) -> None:
    """Write in the canonical pair format (n, then n(n-1)/2 lines `i j d`)."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            write_instance(inst, fh)
        return
    if inst.name:
        sink.write(f"# {inst.name}\n")
    sink.write(f"{inst.n}\n")
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            # repr round-trips doubles exactly through decimal text
            sink.write(f"{i + 1} {j + 1} {float(inst.d[i, j])!r}\n")


def read_instance(source: Union[IO[str], str, Path], name: str = "") -> Instance:
    """Parse the canonical pair format or the full-matrix layout.

    Pair layout: first significant line is `n`, followed by exactly
    n(n-1)/2 lines `i j d` with 1-based indices and i < j.  Full-matrix
    layout: `n` followed by n rows of n reals (symmetry checked to 1e-9).
    Lines starting with `#` are comments.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_instance(fh, name=name or Path(source).stem)

    rows: list[tuple[int, list[str]]] = []  # (1-based line number, tokens)
    for lineno, raw in enumerate(source, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        rows.append((lineno, text.split()))

    if not rows:
        raise ParseError("empty instance file")
    header_line, header = rows[0]
    if len(header) != 1:
        raise ParseError(f"expected a single element count, got {header!r}", header_line)
    try:
        n = int(header[0])
    except ValueError:
        raise ParseError(f"element count is not an integer: {header[0]!r}", header_line)
    if n < 2:
        raise ParseError(f"need at least 2 elements, got n={n}", header_line)
    data = rows[1:]

    if _looks_like_pairs(n, data):
        d = _parse_pairs(n, data)
    elif len(data) == n and all(len(toks) == n for _, toks in data):
        d = _parse_matrix(n, data)
    else:
        expected = n * (n - 1) // 2
        raise ParseError(
            f"expected {expected} pair lines or {n} matrix rows, got "
            f"{len(data)} data lines",
            data[0][0] if data else header_line,
        )
    return Instance(n=n, d=d, name=name, kind=InstanceKind.EXTERNAL)


def _looks_like_pairs(n: int, data: list[tuple[int, list[str]]]) -> bool:
    if len(data) != n * (n - 1) // 2:
        return False
    for _, toks in data:
        if len(toks) != 3:
            return False
        try:
            i, j = int(toks[0]), int(toks[1])
        except ValueError:
            return False
        if not (1 <= i < j <= n):
            return False
    return True


def _parse_pairs(n: int, data: list[tuple[int, list[str]]]) -> np.ndarray:
    d = np.zeros((n, n))
    seen = np.zeros((n, n), dtype=bool)
    for lineno, toks in data:
        i, j = int(toks[0]) - 1, int(toks[1]) - 1
        if seen[i, j]:
            raise ParseError(f"duplicate pair ({i + 1}, {j + 1})", lineno)
        try:
            val = float(toks[2])
        except ValueError:
            raise ParseError(f"bad distance value {toks[2]!r}", lineno)
        d[i, j] = d[j, i] = val
        seen[i, j] = True
    return d


def _parse_matrix(n: int, data: list[tuple[int, list[str]]]) -> np.ndarray:
    d = np.zeros((n, n))
    for r, (lineno, toks) in enumerate(data):
        try:
            d[r] = [float(t) for t in toks]
        except ValueError:
            raise ParseError("matrix row contains a non-numeric token", lineno)
    asym = np.abs(d - d.T)
    if asym.max() > SYMMETRY_TOL:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        bad = data[max(i, j)][0]
        raise ParseError(
            f"matrix not symmetric: d[{i + 1},{j + 1}]={d[i, j]!r} vs "
            f"d[{j + 1},{i + 1}]={d[j, i]!r}",
            bad,
        )
    if np.abs(np.diag(d)).max() > SYMMETRY_TOL:
        r = int(np.argmax(np.abs(np.diag(d))))
        raise ParseError(f"nonzero self-distance for element {r + 1}", data[r][0])
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d
