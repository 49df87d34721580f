"""Location-aware 4-omega coloring on a staggered stripe layout.

The plane is cut into half-open horizontal stripes of height sqrt(3)/2.
Stripe ``j`` carries unit-length rectangles at ``x in [o_j + 6k, o_j + 6k + 1)``
with ``o_j = 2.2 j mod 6``; the rest of the stripe is split into segments
of length 5. Segments of stripes ``j = i mod 3`` form class ``i``. Parts of
one class, and all rectangles, are pairwise more than 1 apart, so each part
can be colored on its own from a per-class palette of ``omega`` colors.
"""

from __future__ import annotations

import math

import numpy as np

from ..geometry import STRIPE_HEIGHT, Rect, stripe_index
from ..localsim import GATHER_FAILED, LOCATION_AWARE, GatherProgram, NodeProgram, run
from ..udg import UnitDiskGraph, connected_components
from .base import Coloring
from .strip import color_strip

PERIOD = 6.0
RECT_LENGTH = 1.0
STAGGER = 2.2
GATHER_CAP = 24
ROUND_CAP = 30

RECTANGLE = "rectangle"


def stripe_offset(j: int) -> float:
    return (STAGGER * j) % PERIOD


def region_tag(x: float, y: float) -> tuple[str, int, int]:
    """``(region, stripe, index)`` of a point; the triple identifies its part."""
    j = stripe_index(y)
    u = x - stripe_offset(j)
    k = math.floor(u / PERIOD)
    if u - k * PERIOD < RECT_LENGTH:
        return (RECTANGLE, j, k)
    return (f"segment-{j % 3}", j, k)


def palette_offset(tag, omega: int) -> int:
    region = tag[0]
    if region == RECTANGLE:
        return 3 * omega
    return int(region.rsplit("-", 1)[1]) * omega


def _layout_rects(j: int, k: int) -> Rect:
    return Rect(stripe_offset(j) + k * PERIOD, (j - 1) * STRIPE_HEIGHT, RECT_LENGTH,
                STRIPE_HEIGHT, closed_high=False)


def check_layout() -> dict[str, float]:
    """Measure the separations the layout relies on; raise if any fails."""
    same = min(_layout_rects(1, 0).distance_to(_layout_rects(1, k)) for k in (-1, 1))
    adjacent = min(_layout_rects(j, 0).distance_to(_layout_rects(j + 1, k))
                   for j in range(1, 4) for k in range(-2, 3))
    two_apart = min(_layout_rects(j, 0).distance_to(_layout_rects(j + 2, k))
                    for j in range(1, 4) for k in range(-2, 3))
    gaps = {"same_stripe": same, "adjacent_stripe": adjacent, "two_apart": two_apart,
            "segment_length": PERIOD - RECT_LENGTH}
    # adjacent stripes are vertically touching, so the whole gap is horizontal
    if not (math.isclose(same, 5.0) and adjacent >= 1.2 - 1e-12 and two_apart > 1.0
            and gaps["segment_length"] <= 5.0):
        raise AssertionError(f"stripe layout violates its separation constraints: {gaps}")
    return gaps


LAYOUT_GAPS = check_layout()


def _part_key(info):
    return region_tag(*info.position)


def _component_colors(view) -> dict[int, int]:
    ids = np.array(view.ids)
    pos = np.array([view.positions[i] for i in view.ids], dtype=float)
    colors = color_strip(pos, ids)
    return dict(zip(ids.tolist(), colors.tolist()))


class StripeColoringProgram(NodeProgram):
    """Gather the own part-component, color it optimally, keep own color."""

    def __init__(self, omega: int, gather_cap: int = GATHER_CAP):
        self.omega = omega
        self.gather = GatherProgram(gather_cap, key=_part_key, stable=True)

    def initialize(self, info, rng):
        return {"g": self.gather.initialize(info, rng), "color": None}

    def send(self, state, round_no):
        return self.gather.send(state["g"], round_no)

    def receive(self, state, round_no, inbox):
        g = self.gather.receive(state["g"], round_no, inbox)
        state["g"] = g
        if state["color"] is None and g.done is not None:
            if g.done == GATHER_FAILED:
                raise AssertionError(f"part of node {g.info.id} did not stabilize "
                                     f"within {self.gather.radius_cap} rounds")
            local = _component_colors(g.done)
            used = max(local.values()) + 1
            if used > self.omega:
                raise AssertionError(f"part of node {g.info.id} needs {used} > omega colors")
            state["color"] = palette_offset(g.key, self.omega) + local[g.info.id]
        return state

    def output(self, state):
        return state["color"]


def color_4omega(g: UnitDiskGraph, omega: int, seed: int = 0, ids=None):
    """Run the stripe program in the location-aware simulator.

    Returns ``(Coloring, RoundTrace)``; the palette has ``4 * omega`` colors.
    """
    trace = run(g, StripeColoringProgram(omega), mode=LOCATION_AWARE, seed=seed,
                round_cap=ROUND_CAP, ids=ids)
    if trace.cap_exceeded:
        raise AssertionError(f"stripe coloring exceeded {ROUND_CAP} rounds")
    return Coloring(np.array(trace.outputs, dtype=np.int64), 4 * omega), trace


def part_keys(g: UnitDiskGraph) -> list:
    return [region_tag(x, y) for x, y in g.positions]


def color_4omega_central(g: UnitDiskGraph, omega: int, ids) -> Coloring:
    """Same coloring as :func:`color_4omega`, computed directly."""
    ids = np.asarray(ids)
    keys = part_keys(g)
    groups: dict = {}
    for v, k in enumerate(keys):
        groups.setdefault(k, []).append(v)
    colors = np.full(g.n, -1, dtype=np.int64)
    # edges between different parts are dropped, as in the gather key filter
    for key, members in groups.items():
        for comp in connected_components(g, members):
            local = color_strip(g.positions[comp], ids[comp])
            colors[comp] = palette_offset(key, omega) + local
    return Coloring(colors, 4 * omega)
