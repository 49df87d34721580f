"""Coloring containers and their validator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..udg import UnitDiskGraph


@dataclass
class Coloring:
    """One color per vertex, each below ``palette_size``."""

    colors: np.ndarray
    palette_size: int

    @property
    def n_colors(self) -> int:
        return len(np.unique(self.colors)) if len(self.colors) else 0


@dataclass
class FractionalColoring:
    """A ``(p:q)``-coloring: row ``v`` of ``sets`` is the sorted q-subset of
    ``range(p)`` given to vertex ``v``."""

    p: int
    q: int
    sets: np.ndarray

    @property
    def ratio(self) -> float:
        return self.p / self.q


@dataclass
class ValidationReport:
    passed: bool
    message: str = "ok"
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.passed


def validate(g: UnitDiskGraph, c) -> ValidationReport:
    """Check properness (or disjointness), palette bounds and completeness."""
    if isinstance(c, FractionalColoring):
        return _validate_fractional(g, c)
    colors = np.asarray(c.colors)
    if colors.shape != (g.n,):
        return ValidationReport(False, f"expected {g.n} colors, got {colors.shape}")
    if g.n and colors.min() < 0:
        v = int(np.argmin(colors))
        return ValidationReport(False, f"vertex {v} is uncolored")
    if g.n and colors.max() >= c.palette_size:
        v = int(np.argmax(colors))
        return ValidationReport(False, f"vertex {v} has color {colors[v]} >= palette {c.palette_size}")
    edges = g.edges()
    clash = colors[edges[:, 0]] == colors[edges[:, 1]]
    if clash.any():
        u, v = (int(x) for x in edges[np.argmax(clash)])
        return ValidationReport(False, f"adjacent vertices {u} and {v} share color {colors[u]}", (u, v))
    return ValidationReport(True)


def _validate_fractional(g: UnitDiskGraph, c: FractionalColoring) -> ValidationReport:
    sets = np.asarray(c.sets)
    if c.q < 1 or sets.shape != (g.n, c.q):
        return ValidationReport(False, f"expected a ({g.n}, {c.q}) array of color sets, got {sets.shape}")
    if g.n == 0:
        return ValidationReport(True)
    if sets.min() < 0 or sets.max() >= c.p:
        return ValidationReport(False, f"color outside range({c.p})")
    if c.q > 1 and np.any(np.diff(sets, axis=1) <= 0):
        v = int(np.flatnonzero(np.any(np.diff(sets, axis=1) <= 0, axis=1))[0])
        return ValidationReport(False, f"set of vertex {v} is not strictly increasing")
    for u, v in g.edges():
        if len(np.intersect1d(sets[u], sets[v], assume_unique=True)):
            return ValidationReport(False, f"adjacent vertices {u} and {v} share a color", (int(u), int(v)))
    return ValidationReport(True)
