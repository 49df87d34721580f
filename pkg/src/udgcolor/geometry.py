"""Planar primitives shared by the graph builders and the coloring layouts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

STRIPE_HEIGHT = math.sqrt(3.0) / 2.0


class Point(NamedTuple):
    x: float
    y: float


def dist(a, b) -> float:
    """Euclidean distance between two points given as ``(x, y)`` pairs."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def dist2(a, b) -> float:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def point_in_disk(p, center, radius: float) -> bool:
    """Closed-disk membership, decided on squared distances."""
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    return dist2(p, center) <= radius * radius


def reuleaux_cover_probability(r: float) -> float:
    """Probability that a fixed point at distance ``r`` from a vertex lies in
    a uniformly rotated Reuleaux triangle with a corner at the vertex.

    The value is ``arccos(r / 2) / pi - 1/6`` and lies in ``[1/6, 1/3]``.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    return math.acos(r / 2.0) / math.pi - 1.0 / 6.0


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle with explicit boundary conventions.

    With ``closed_high=True`` (the default) the rectangle contains its top
    and right edges and excludes its bottom and left edges; with
    ``closed_high=False`` it is the other way round.
    """

    x0: float
    y0: float
    width: float
    height: float
    closed_high: bool = True

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError("rectangle width and height must be positive")

    @property
    def x1(self) -> float:
        return self.x0 + self.width

    @property
    def y1(self) -> float:
        return self.y0 + self.height

    def contains(self, p) -> bool:
        x, y = p[0], p[1]
        if self.closed_high:
            return self.x0 < x <= self.x1 and self.y0 < y <= self.y1
        return self.x0 <= x < self.x1 and self.y0 <= y < self.y1

    def distance_to(self, other: "Rect") -> float:
        """Distance between the closures of two rectangles."""
        dx = max(0.0, other.x0 - self.x1, self.x0 - other.x1)
        dy = max(0.0, other.y0 - self.y1, self.y0 - other.y1)
        return math.hypot(dx, dy)


def stripe_index(y: float, height: float = STRIPE_HEIGHT) -> int:
    """1-based index of the half-open stripe ``[(j-1)h, jh)`` containing y."""
    return math.floor(y / height) + 1
