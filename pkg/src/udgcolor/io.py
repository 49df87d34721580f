"""Text formats for point sets and colorings.

Point files hold optional ``#`` comment lines, then ``x y [multiplicity]``
per line. Coloring files hold ``id color`` per line; fractional colorings
start with a ``p q`` header and list ``id c1,c2,...,cq``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .coloring import Coloring, FractionalColoring
from .fourier import FourierConfig, build_construction
from .udg import WeightedPointSet

GENERATORS = ("uniform-box", "grid", "sinusoidal", "file")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_points(path, ps: WeightedPointSet, comment: str | None = None) -> Path:
    path = Path(path)
    lines = [] if comment is None else [f"# {c}" for c in comment.splitlines()]
    for (x, y), m in zip(ps.positions, ps.multiplicities):
        row = f"{_fmt(x)} {_fmt(y)}"
        lines.append(row if m == 1 else f"{row} {int(m)}")
    path.write_text("\n".join(lines) + "\n")
    return path


def read_points(path) -> WeightedPointSet:
    pos, mult = [], []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"{path}:{lineno}: expected 'x y [multiplicity]', got {raw!r}")
        pos.append((float(parts[0]), float(parts[1])))
        mult.append(int(parts[2]) if len(parts) == 3 else 1)
    if not pos:
        raise ValueError(f"{path}: no points")
    return WeightedPointSet(np.array(pos, dtype=float), np.array(mult, dtype=np.int64))


def write_coloring(path, c) -> Path:
    path = Path(path)
    if isinstance(c, FractionalColoring):
        lines = [f"{c.p} {c.q}"]
        lines += [f"{v} {','.join(str(int(x)) for x in row)}" for v, row in enumerate(c.sets)]
    else:
        lines = [f"{v} {int(col)}" for v, col in enumerate(c.colors)]
    path.write_text("\n".join(lines) + "\n")
    return path


def read_coloring(path, palette_size: int | None = None):
    """Parse a coloring file.

    Integral colorings carry no palette in the file; ``palette_size``
    defaults to one more than the largest color.
    """
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError(f"{path}: empty coloring")
    if _is_fractional(lines):
        return _read_fractional(lines, path)
    colors = {}
    for ln in lines:
        v, col = ln.split()
        colors[int(v)] = int(col)
    n = len(colors)
    if sorted(colors) != list(range(n)):
        raise ValueError(f"{path}: ids must be 0..n-1")
    arr = np.array([colors[v] for v in range(n)], dtype=np.int64)
    if palette_size is None:
        palette_size = int(arr.max()) + 1
    return Coloring(arr, palette_size)


def _is_fractional(lines) -> bool:
    # integral files start with vertex 0; a fractional header starts with p >= 1
    if any("," in ln for ln in lines):
        return True
    return len(lines) > 1 and lines[0].split()[0] != "0" and lines[1].split()[0] == "0"


def _read_fractional(lines, path) -> FractionalColoring:
    p, q = (int(t) for t in lines[0].split())
    rows = {}
    for ln in lines[1:]:
        v, sets = ln.split()
        rows[int(v)] = [int(x) for x in sets.split(",")]
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise ValueError(f"{path}: ids must be 0..n-1")
    sets = np.array([rows[v] for v in range(n)], dtype=np.int64).reshape(n, q)
    return FractionalColoring(p, q, sets)


@dataclass(frozen=True)
class InstanceSpec:
    """Provenance of a test instance; :meth:`build` produces the points."""

    generator: str
    n: int = 100
    width: float = 10.0
    height: float = 10.0
    seed: int = 0
    step: float = 0.5
    path: str | None = None
    fourier: FourierConfig | None = None

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ValueError(f"generator must be one of {GENERATORS}, got {self.generator!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (self.width > 0 and self.height > 0 and self.step > 0):
            raise ValueError("dimensions must be positive")

    def build(self) -> WeightedPointSet:
        if self.generator == "uniform-box":
            return uniform_box(self.n, self.width, self.height, self.seed)
        if self.generator == "grid":
            return grid_points(self.step, self.width, self.height)
        if self.generator == "sinusoidal":
            return build_construction(self.fourier or FourierConfig())
        return read_points(self.path)


def uniform_box(n: int, width: float, height: float, seed: int) -> WeightedPointSet:
    rng = np.random.default_rng(seed)
    pos = rng.random((n, 2)) * [width, height]
    return WeightedPointSet.from_points(pos)


def grid_points(step: float, width: float, height: float) -> WeightedPointSet:
    xs = np.arange(0.0, width + 1e-12, step)
    ys = np.arange(0.0, height + 1e-12, step)
    gx, gy = np.meshgrid(xs, ys, indexing="xy")
    return WeightedPointSet.from_points(np.column_stack([gx.ravel(), gy.ravel()]))
