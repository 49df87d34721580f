"""Bessel numerics and the sinusoidal point-set construction.

The construction places ``ceil(w * g(x))`` points at every node of a square
grid over ``[0, N]^2``, where ``g(x, y) = 1 + a sin(2 B x)``, ``B`` is the
first positive zero of ``J1`` and ``N`` is a whole number of periods
``pi / B``. With ``a = 1`` the ratio of average degree to disk clique
number tends to ``4 (1 + J1(2B) / (2B))``; with ``a = 0`` (uniform
density) it tends to 4.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from .udg import DISK_TOL, WeightedPointSet, max_disk_weight

J1_DOMAIN = (0.0, 20.0)
WEIGHT_BUDGET = 10**9
_SERIES_CUTOFF = decimal.Decimal("1e-15")


def bessel_j1(x: float) -> float:
    """``J1(x)`` for ``0 <= x <= 20`` from its power series.

    The alternating terms reach ~1e6 near ``x = 20``, so the sum is carried
    in 50-digit decimal arithmetic to keep the error below 1e-12.
    """
    lo, hi = J1_DOMAIN
    if not lo <= x <= hi:
        raise ValueError(f"x must lie in [{lo}, {hi}], got {x}")
    with decimal.localcontext() as ctx:
        ctx.prec = 50
        half = decimal.Decimal(x) / 2
        h2 = half * half
        term = half
        total = term
        k = 0
        while True:
            term = -term * h2 / ((k + 1) * (k + 2))
            k += 1
            total += term
            if abs(term) < _SERIES_CUTOFF and k > half:
                break
        return float(total)


def first_bessel_zero(tol: float = 1e-12) -> float:
    """Smallest positive zero of ``J1`` by bisection on ``[3, 4]``."""
    a, b = 3.0, 4.0
    fa = bessel_j1(a)
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = bessel_j1(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


B_ZERO = first_bessel_zero()


def asymptotic_ratio() -> float:
    """Limit of average degree over disk clique number for the sinusoid."""
    return 4.0 * (1.0 + bessel_j1(2 * B_ZERO) / (2 * B_ZERO))


@dataclass(frozen=True)
class FourierConfig:
    k_periods: int = 16
    grid: int = 512
    weight_scale: float = 50.0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.k_periods < 2:
            raise ValueError("k_periods must be >= 2")
        if self.grid % self.k_periods:
            raise ValueError("grid must be a multiple of k_periods so the grid is periodic")
        if self.step > 0.1:
            raise ValueError(f"grid step {self.step:.4g} exceeds 0.1; raise grid")
        if not self.weight_scale > 0:
            raise ValueError("weight_scale must be positive")

    @property
    def B(self) -> float:
        return B_ZERO

    @property
    def size(self) -> float:
        return self.k_periods * math.pi / B_ZERO

    @property
    def step(self) -> float:
        return self.size / self.grid

    @property
    def period_cells(self) -> int:
        return self.grid // self.k_periods

    def density(self) -> np.ndarray:
        """``g`` at the grid columns; ``2 B x_i = 2 pi i k / M`` is reduced
        mod ``M`` in integers so the columns are exactly periodic."""
        i = np.arange(self.grid + 1)
        phase = 2.0 * np.pi * ((i * self.k_periods) % self.grid) / self.grid
        return 1.0 + self.amplitude * np.sin(phase)

    def column_weights(self) -> np.ndarray:
        # ceil with a guard against sin() rounding just above an integer
        return np.ceil(self.weight_scale * self.density() - 1e-9).astype(np.int64).clip(min=0)

    def weights(self) -> np.ndarray:
        """Multiplicity field indexed ``[j, i]`` (row y, column x)."""
        w = self.column_weights()
        return np.broadcast_to(w, (self.grid + 1, self.grid + 1))

    def total_weight(self) -> int:
        return int(self.column_weights().sum()) * (self.grid + 1)


def _check_budget(cfg: FourierConfig) -> None:
    if cfg.total_weight() > WEIGHT_BUDGET:
        raise MemoryError(f"construction weight {cfg.total_weight()} exceeds {WEIGHT_BUDGET}")


def build_construction(cfg: FourierConfig) -> WeightedPointSet:
    """Grid sites with their multiplicities; zero-multiplicity sites are omitted."""
    _check_budget(cfg)
    w = cfg.weights()
    jj, ii = np.nonzero(w > 0)
    pos = np.column_stack([ii * cfg.step, jj * cfg.step])
    return WeightedPointSet(pos, w[jj, ii])


def _stencil(radius: float, step: float) -> np.ndarray:
    r = int(math.floor(radius / step)) + 1
    a = np.arange(-r, r + 1)
    d2 = (a[:, None] ** 2 + a[None, :] ** 2) * step * step
    return (d2 <= radius * radius).astype(float)


def _interior(cfg: FourierConfig, margin: float = 1.0) -> np.ndarray:
    coords = np.arange(cfg.grid + 1) * cfg.step
    return (coords >= margin) & (coords <= cfg.size - margin)


def disk_sums(field: np.ndarray, radius: float, step: float) -> np.ndarray:
    """Sum of ``field`` over grid nodes in the closed disk around each node."""
    out = fftconvolve(np.asarray(field, dtype=float), _stencil(radius, step), mode="same")
    return out


def sup_convolution_half(cfg: FourierConfig, margin: float = 1.0) -> float:
    """``max_x integral of g over the radius-1/2 disk at x``, by grid
    summation over interior sample nodes."""
    g = np.broadcast_to(cfg.density(), (cfg.grid + 1, cfg.grid + 1))
    sums = disk_sums(g, 0.5, cfg.step) * cfg.step ** 2
    inner = _interior(cfg, margin)
    return float(sums[np.ix_(inner, inner)].max())


def interior_average_degree(cfg: FourierConfig, margin: float = 1.0) -> float:
    """Multiplicity-weighted mean degree over interior sites.

    A site's vertices each see every point within closed distance 1 except
    themselves.
    """
    w = np.asarray(cfg.weights(), dtype=float)
    deg = np.rint(disk_sums(w, 1.0, cfg.step)) - 1.0
    inner = _interior(cfg, margin)
    wi = w[np.ix_(inner, inner)]
    return float((wi * deg[np.ix_(inner, inner)]).sum() / wi.sum())


def grid_disk_clique_number(cfg: FourierConfig) -> int:
    """Exact disk clique number of the construction.

    The multiplicity field is invariant under whole-period shifts in x and
    unit-row shifts in y, and disks near the boundary see a subset of what
    their interior translates see. So candidate disks only need a first
    defining site in one period of one interior row.
    """
    step = cfg.step
    w = cfg.weights()
    period = cfg.period_cells
    reach = int(math.ceil(1.0 / step)) + 1
    if cfg.grid + 1 < 2 * reach + period + 2:
        ps = build_construction(cfg)
        return max_disk_weight(ps.positions, ps.multiplicities, 0.5)
    j0 = cfg.grid // 2
    i0 = j0 - period // 2
    cum = np.concatenate([np.zeros((w.shape[0], 1)), np.cumsum(w, axis=1)], axis=1)

    a = np.arange(-reach, reach + 1)
    da, db = np.meshgrid(a, a, indexing="ij")
    d2 = (da ** 2 + db ** 2) * step * step
    near = (d2 <= 1.0) & (d2 > 0)
    da, db = da[near], db[near]

    best = 0
    for i in range(i0, i0 + period):
        if w[j0, i] == 0:
            continue
        anchor = np.array([i * step, j0 * step])
        pi, pj = i + da, j0 + db
        live = w[pj, pi] > 0
        other = np.column_stack([pi[live] * step, pj[live] * step])
        half = (other - anchor) / 2.0
        hl2 = np.einsum("ij,ij->i", half, half)
        t = np.sqrt(np.maximum(0.25 - hl2, 0.0) / hl2)
        perp = np.column_stack([-half[:, 1], half[:, 0]]) * t[:, None]
        mid = anchor + half
        centers = np.vstack([anchor[None, :], mid + perp, mid - perp])
        best = max(best, int(_grid_disk_counts(cum, centers, step).max()))
    return best


def _grid_disk_counts(cum: np.ndarray, centers: np.ndarray, step: float) -> np.ndarray:
    """Weight in the closed radius-1/2 disk at each center, via row prefix sums."""
    rows_span = int(math.ceil(0.5 / step)) + 1
    cy = centers[:, 1]
    cx = centers[:, 0]
    base = np.floor(cy / step).astype(np.int64)
    total = np.zeros(len(centers))
    n_cols = cum.shape[1] - 1
    for off in range(-rows_span, rows_span + 2):
        j = base + off
        dy = j * step - cy
        h2 = 0.25 + DISK_TOL - dy * dy
        ok = (h2 >= 0) & (j >= 0) & (j < cum.shape[0])
        hw = np.sqrt(np.where(ok, h2, 0.0))
        lo = np.clip(np.ceil((cx - hw) / step - 1e-9).astype(np.int64), 0, n_cols)
        hi = np.clip(np.floor((cx + hw) / step + 1e-9).astype(np.int64) + 1, 0, n_cols)
        jj = np.clip(j, 0, cum.shape[0] - 1)
        s = cum[jj, hi] - cum[jj, lo]
        total += np.where(ok & (hi > lo), s, 0.0)
    return total


@dataclass
class FourierReport:
    B: float
    sup_conv_half: float
    avg_degree: float
    omega_D: int
    ratio: float
    config: FourierConfig = field(default=None)

    def lines(self) -> list[str]:
        c = self.config
        head = [] if c is None else [
            f"k_periods {c.k_periods}", f"grid {c.grid}", f"weight_scale {c.weight_scale:g}",
            f"amplitude {c.amplitude:g}", f"N {c.size:.6f}", f"step {c.step:.6f}"]
        return head + [
            f"B {self.B:.10f}",
            f"sup_conv_half {self.sup_conv_half:.6f}",
            f"avg_degree {self.avg_degree:.4f}",
            f"omega_D {self.omega_D}",
            f"ratio {self.ratio:.5f}",
            f"target {asymptotic_ratio():.5f}",
        ]


def measure_ratio(cfg: FourierConfig | None = None) -> FourierReport:
    """Average degree over disk clique number for the construction."""
    cfg = cfg or FourierConfig()
    _check_budget(cfg)
    avg = interior_average_degree(cfg)
    wd = grid_disk_clique_number(cfg)
    ratio = avg / wd
    if not 0 < ratio < 6:
        raise AssertionError(f"ratio {ratio} outside (0, 6)")
    return FourierReport(B_ZERO, sup_convolution_half(cfg), avg, wd, ratio, cfg)


def refinement_sweep(levels=((16, 512), (16, 1024)), weight_scale: float = 50.0,
                     amplitude: float = 1.0) -> list[tuple[int, int, float]]:
    """``(k_periods, grid, ratio)`` for successive refinements.

    Only a smaller grid step moves the ratio; doubling ``k_periods`` and
    ``grid`` together keeps the step and the periodic pattern, so the ratio
    stays put up to the interior fraction.
    """
    out = []
    for k, m in levels:
        rep = measure_ratio(FourierConfig(k, m, weight_scale, amplitude))
        out.append((k, m, rep.ratio))
    return out
