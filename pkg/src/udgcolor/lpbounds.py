"""The two small linear programs bounding ``(d(u) + d(v)) / 2`` for adjacent
vertices at distance ``delta`` in ``[1/2, 1]``.

Both programs are normalized to ``omega = 1`` (they are homogeneous in
omega) and solved exactly by enumerating basic solutions: every choice of
``n_vars`` tight hyperplanes among the constraints and the coordinate
planes is intersected, infeasible points are dropped, and the best
objective value wins.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

GRID = np.round(np.linspace(0.5, 1.0, 101), 3)
FEAS_TOL = 1e-9


@dataclass(frozen=True)
class LPInstance:
    """``max c.x  s.t.  A x <= b,  x >= 0``."""

    delta: float
    variant: str
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray


def _check_delta(delta: float) -> None:
    if not 0.5 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [1/2, 1], got {delta}")


def f5_instance(delta: float) -> LPInstance:
    _check_delta(delta)
    d = delta
    w1 = math.sqrt(d * d / 4 + (1 - math.sqrt(1 - d * d / 4)) ** 2)
    w3 = math.sqrt(1 + d * d - d * math.sqrt(3))
    c = np.array([1.0, 1.0, 2.0])
    A = np.array([[0.0, 1.0, 1.0],
                  [2.0 - w1, 1.0, 3.0 - w3]])
    b = np.array([5.0, 6.0])
    return LPInstance(delta, "f5", c, A, b)


def f4_instance(delta: float) -> LPInstance:
    _check_delta(delta)
    d = delta
    w1 = math.sqrt(d * d / 4 + (math.sqrt(3) / 2 - math.sqrt(1 - (1 + d) ** 2 / 4)) ** 2)
    w3 = math.sqrt(1 + d * d - d)
    w4 = math.sqrt(1 - d)
    c = np.array([1.0, 1.0, 2.0, 2.0])
    A = np.array([[0.0, 1.0, 1.0, 1.0],
                  [1.0, 0.0, 2.0, 0.0],
                  [2.0 - w1, 1.0, 3.0 - w3, 3.0 - w4]])
    b = np.array([4.0, 2.0, 6.0])
    return LPInstance(delta, "f4", c, A, b)


def basic_solutions(lp: LPInstance):
    """Yield every feasible vertex of ``{A x <= b, x >= 0}``."""
    m, n = lp.A.shape
    planes = np.vstack([lp.A, -np.eye(n)])
    rhs = np.concatenate([lp.b, np.zeros(n)])
    for rows in itertools.combinations(range(m + n), n):
        M = planes[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, rhs[list(rows)])
        if np.all(planes @ x <= rhs + FEAS_TOL):
            yield x


def solve(lp: LPInstance) -> tuple[float, np.ndarray]:
    best, arg = -math.inf, None
    for x in basic_solutions(lp):
        val = float(lp.c @ x)
        if val > best:
            best, arg = val, x
    return best, arg


def solve_f5(delta: float) -> float:
    return solve(f5_instance(delta))[0]


def solve_f4(delta: float) -> float:
    return solve(f4_instance(delta))[0]


@dataclass
class LPCurve:
    deltas: np.ndarray
    values: np.ndarray
    name: str

    def rows(self, digits: int = 4) -> list[str]:
        return [f"{d:.3f} {round(v, digits):.{digits}f}" for d, v in zip(self.deltas, self.values)]


def curve(name: str, deltas=GRID) -> LPCurve:
    fn = {"f5": solve_f5, "f4": solve_f4}[name]
    return LPCurve(np.asarray(deltas), np.array([fn(d) for d in deltas]), name)


def pairwise_degree_bound(deltas=GRID) -> tuple[float, float]:
    """Largest value of ``min(f4, f5)`` over the grid and where it occurs."""
    m = np.minimum(curve("f4", deltas).values, curve("f5", deltas).values)
    k = int(np.argmax(m))
    return float(m[k]), float(deltas[k])


def emit_curves(prefix) -> tuple[Path, Path]:
    """Write ``lp5.dat`` and ``lp4.dat`` (header plus 101 rows).

    A directory prefix puts the files inside it; any other prefix is
    prepended to the file names.
    """
    prefix = str(prefix)
    out = []
    for name, fname in (("f5", "lp5.dat"), ("f4", "lp4.dat")):
        if prefix == "" or prefix.endswith(("/", "\\")) or Path(prefix).is_dir():
            path = Path(prefix or ".") / fname
        else:
            path = Path(prefix + fname)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join([f"delta {name}", *curve(name).rows()]) + "\n")
        out.append(path)
    return out[0], out[1]


def crossings(deltas=GRID) -> list[float]:
    """Grid points where ``f5 - f4`` changes sign (reported, not interpreted)."""
    diff = curve("f5", deltas).values - curve("f4", deltas).values
    s = np.sign(diff)
    return [float(deltas[k + 1]) for k in range(len(s) - 1) if s[k] != s[k + 1]]
