"""Fractional (p:q)-coloring from ``r`` shifted rectangle systems.

System ``i`` is the lattice of rectangles of height sqrt(3)/2 and length
``1/eps`` with periods ``1 + 1/eps`` (horizontal) and ``1 + sqrt(3)/2``
(vertical), shifted by ``i/r`` of a period in both directions. Rectangles
contain their top and right edges only, so distinct rectangles of one
system are more than 1 apart and each is colored with ``omega`` colors
from a palette private to the system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..geometry import STRIPE_HEIGHT
from ..localsim import LOCATION_AWARE, GatherProgram, NodeProgram, assign_ids, run
from ..udg import UnitDiskGraph, connected_components
from .base import FractionalColoring
from .strip import color_strip


class InfeasibleError(ValueError):
    """Some vertex is covered by no system (``r`` too small or ``eps`` too large)."""


@dataclass(frozen=True)
class RegionSystem:
    eps: float
    r: int

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.r < 1:
            raise ValueError("r must be >= 1")

    @property
    def length(self) -> float:
        return 1.0 / self.eps

    @property
    def x_period(self) -> float:
        return 1.0 + 1.0 / self.eps

    @property
    def y_period(self) -> float:
        return 1.0 + STRIPE_HEIGHT

    def offsets(self, systems=None) -> tuple[np.ndarray, np.ndarray]:
        i = np.arange(self.r) if systems is None else np.asarray(systems)
        return i / self.r * self.x_period, i / self.r * self.y_period

    def locate(self, positions, systems=None):
        """Rectangle indices ``(kx, ky)`` and a coverage mask, shaped
        ``(systems, points)``."""
        positions = np.asarray(positions, dtype=float).reshape(-1, 2)
        ox, oy = self.offsets(systems)
        kx, inx = _axis(positions[:, 0], ox, self.x_period, self.length)
        ky, iny = _axis(positions[:, 1], oy, self.y_period, STRIPE_HEIGHT)
        return kx, ky, inx & iny

    def coverage(self, positions) -> np.ndarray:
        """Number of systems covering each point."""
        return self.locate(positions)[2].sum(axis=0)

    def coverage_lower_bound(self) -> float:
        """Coverage guaranteed everywhere in the plane."""
        r = self.r
        return r - math.ceil(r / (1.0 + STRIPE_HEIGHT)) - math.ceil(r / (1.0 + 1.0 / self.eps))


def _axis(coord, offsets, period, length):
    # rectangle k spans (offset + k period, offset + k period + length]
    rel = coord[None, :] - offsets[:, None]
    k = np.ceil(rel / period) - 1
    rem = rel - k * period
    return k.astype(np.int64), rem <= length


def _component_coloring(g: UnitDiskGraph, members: np.ndarray, ids: np.ndarray) -> np.ndarray:
    local = np.empty(len(members), dtype=np.int64)
    pos_of = {int(v): i for i, v in enumerate(members)}
    for comp in connected_components(g, members):
        idx = [pos_of[int(v)] for v in comp]
        local[idx] = color_strip(g.positions[comp], ids[comp])
    return local


def color_fractional(g: UnitDiskGraph, omega: int, r: int = 20000, eps: float = 1e-4,
                     mode: str = "central", seed: int = 0, ids=None) -> FractionalColoring:
    """(p:q)-coloring with ``p = r * omega`` and ``q`` the minimum number of
    systems covering a vertex; every vertex keeps the colors of its ``q``
    lowest-indexed covering systems."""
    if ids is None:
        ids = assign_ids(g.n, seed)
    ids = np.asarray(ids, dtype=np.int64)
    system = RegionSystem(eps, r)
    if mode == "central":
        return _central(g, omega, system, ids)
    if mode == "simulate":
        return color_fractional_simulated(g, omega, system, ids, seed)[0]
    raise ValueError(f"mode must be 'central' or 'simulate', got {mode!r}")


def _min_coverage(system, positions) -> int:
    if len(positions) == 0:
        raise InfeasibleError("empty graph")
    q = int(system.coverage(positions).min())
    if q == 0:
        raise InfeasibleError(f"some vertex is covered by no system (r={system.r}, eps={system.eps})")
    return q


def _central(g, omega, system, ids):
    kx, ky, inside = system.locate(g.positions)
    q = _min_coverage(system, g.positions)
    n = g.n
    local = np.full((system.r, n), -1, dtype=np.int64)
    cache: dict[tuple, np.ndarray] = {}
    prev = None
    for i in range(system.r):
        state = (inside[i], kx[i], ky[i])
        if prev is not None and all(np.array_equal(a, b) for a, b in zip(state, prev)):
            local[i] = local[i - 1]
            continue
        prev = state
        covered = np.flatnonzero(inside[i])
        if len(covered) == 0:
            continue
        order = np.lexsort((covered, kx[i, covered], ky[i, covered]))
        cov = covered[order]
        keys = np.column_stack([kx[i, cov], ky[i, cov]])
        cuts = np.flatnonzero(np.any(np.diff(keys, axis=0) != 0, axis=1)) + 1
        for members in np.split(cov, cuts):
            members = np.sort(members)
            tag = tuple(members.tolist())
            if tag not in cache:
                cache[tag] = _component_coloring(g, members, ids)
            local[i, members] = cache[tag]
    sets = np.empty((n, q), dtype=np.int64)
    for v in range(n):
        chosen = np.flatnonzero(inside[:, v])[:q]
        sets[v] = chosen * omega + local[chosen, v]
    if local.max() >= omega:
        raise AssertionError("a rectangle needed more than omega colors")
    return FractionalColoring(system.r * omega, q, sets)


class FractionalProgram(NodeProgram):
    """Gather a ball wide enough to contain every rectangle component of the
    node, then color each covering system locally.

    ``q`` is a global input, like ``omega``.
    """

    def __init__(self, omega: int, system: RegionSystem, q: int):
        self.omega = omega
        self.system = system
        self.q = q
        self.radius = math.floor(4.0 / system.eps) + 2
        self.gather = GatherProgram(self.radius, stable=False)

    @property
    def round_cap(self) -> int:
        return math.floor(4.0 / self.system.eps + 4)

    def initialize(self, info, rng):
        return {"g": self.gather.initialize(info, rng), "sets": None}

    def send(self, state, round_no):
        return self.gather.send(state["g"], round_no)

    def receive(self, state, round_no, inbox):
        g = self.gather.receive(state["g"], round_no, inbox)
        state["g"] = g
        if state["sets"] is None and g.done is not None:
            state["sets"] = self._color(g.info.id, g.records)
        return state

    def output(self, state):
        return state["sets"]

    def _color(self, me, records):
        known = sorted(records)
        index = {vid: k for k, vid in enumerate(known)}
        pos = np.array([records[v][0] for v in known], dtype=float)
        kx, ky, inside = self.system.locate(pos)
        mi = index[me]
        systems = np.flatnonzero(inside[:, mi])[:self.q]
        colors = []
        for i in systems:
            same = inside[i] & (kx[i] == kx[i, mi]) & (ky[i] == ky[i, mi])
            comp = _bfs(me, records, lambda v: v in index and same[index[v]])
            comp_ids = np.array(sorted(comp))
            comp_pos = pos[[index[v] for v in comp_ids]]
            local = color_strip(comp_pos, comp_ids)
            colors.append(int(i) * self.omega + int(local[np.searchsorted(comp_ids, me)]))
        return tuple(colors)


def _bfs(source, records, allowed):
    seen = {source}
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for w in records[v][1]:
                if w not in seen and allowed(w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def color_fractional_simulated(g: UnitDiskGraph, omega: int, system: RegionSystem, ids, seed: int = 0):
    """Location-aware run of :class:`FractionalProgram`; returns
    ``(FractionalColoring, RoundTrace)``."""
    ids = np.asarray(ids, dtype=np.int64)
    q = _min_coverage(system, g.positions)
    program = FractionalProgram(omega, system, q)
    trace = run(g, program, mode=LOCATION_AWARE, seed=seed, round_cap=program.round_cap, ids=ids)
    if trace.cap_exceeded:
        raise AssertionError("fractional coloring exceeded its round cap")
    sets = np.array([list(s) for s in trace.outputs], dtype=np.int64).reshape(g.n, q)
    return FractionalColoring(system.r * omega, q, sets), trace
