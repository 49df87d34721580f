import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from udgcolor.geometry import STRIPE_HEIGHT
from udgcolor.udg import WeightedPointSet, build_graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

T3 = [(0.0, 0.0), (0.5, 0.1), (1.0, 0.0)]

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def uniform_box(n, width, height, seed):
    rng = np.random.default_rng(seed)
    return rng.random((n, 2)) * [width, height]


def strip_points(n, length, seed, height=STRIPE_HEIGHT):
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2)) * [length, height]
    # keep strictly inside the half-open strip
    pts[:, 1] = np.minimum(pts[:, 1], np.nextafter(height, 0))
    return pts


def clustered(n_clusters, per_cluster, spread, box, seed):
    rng = np.random.default_rng(seed)
    centers = rng.random((n_clusters, 2)) * box
    pts = centers[:, None, :] + rng.normal(scale=spread, size=(n_clusters, per_cluster, 2))
    return pts.reshape(-1, 2)


def wheel(n_rim, n_hub=1, radius=0.999999, offset=(0.0, 0.0)):
    """Hub points at the center of a ring of ``n_rim`` points.

    Hub vertices have degree close to ``n_rim`` while the clique number is
    about ``n_rim / 6``, so they exceed the 5.675 omega threshold.
    """
    t = 2 * math.pi * np.arange(n_rim) / n_rim
    rim = np.column_stack([radius * np.cos(t), radius * np.sin(t)])
    hub = np.zeros((n_hub, 2))
    return np.vstack([hub, rim]) + np.asarray(offset)


def graph_of(points, multiplicities=None):
    return build_graph(WeightedPointSet.from_points(points, multiplicities))


@pytest.fixture
def t3():
    return graph_of(T3)


@pytest.fixture
def acceptance():
    """Record ``(criterion, passed, detail)`` for the end-of-run summary."""

    def record(name, passed, detail=""):
        _ACCEPTANCE.append((name, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
