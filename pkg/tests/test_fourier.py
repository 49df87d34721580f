import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from udgcolor import fourier as fr
from udgcolor.udg import max_disk_weight, site_degrees


@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 3.8, 7.66, 12.5, 19.9, 20.0])
def test_j1_against_mpmath(x):
    assert fr.bessel_j1(x) == pytest.approx(float(mpmath.besselj(1, x)), abs=1e-12)


@given(st.floats(0, 20))
def test_j1_error_bound(x):
    assert abs(fr.bessel_j1(x) - float(mpmath.besselj(1, x))) < 1e-12


def test_j1_examples():
    assert fr.bessel_j1(0.0) == 0.0
    assert fr.bessel_j1(1.0) == pytest.approx(0.4400505857, abs=1e-9)
    assert fr.bessel_j1(1e-6) / 1e-6 == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("x", [-0.1, 20.5])
def test_j1_domain(x):
    with pytest.raises(ValueError):
        fr.bessel_j1(x)


def test_first_zero():
    B = fr.first_bessel_zero()
    assert B == pytest.approx(3.8317, abs=1e-4)
    assert B == pytest.approx(float(mpmath.besseljzero(1, 1)), abs=1e-11)
    assert abs(fr.bessel_j1(B)) < 1e-10
    assert fr.bessel_j1(B - 0.1) > 0 > fr.bessel_j1(B + 0.1)


def test_bessel_identities_at_2B():
    # the constants behind the asymptotic ratio, frozen from mpmath
    B = fr.B_ZERO
    j = fr.bessel_j1(2 * B)
    assert j == pytest.approx(0.173456007112013, abs=1e-12)
    assert j / (2 * B) == pytest.approx(0.0226343055104799, abs=1e-12)
    assert j / B == pytest.approx(0.0452686110209597, abs=1e-12)
    assert fr.asymptotic_ratio() == pytest.approx(4.09053722204192, abs=1e-10)


def test_config_invariants():
    cfg = fr.FourierConfig()
    assert cfg.size == pytest.approx(16 * math.pi / cfg.B)
    assert cfg.step <= 0.1
    with pytest.raises(ValueError):
        fr.FourierConfig(grid=100)          # step too coarse
    with pytest.raises(ValueError):
        fr.FourierConfig(k_periods=16, grid=520)   # not periodic on the grid
    with pytest.raises(ValueError):
        fr.FourierConfig(k_periods=1)
    with pytest.raises(ValueError):
        fr.FourierConfig(weight_scale=0)


def test_multiplicity_extremes():
    cfg = fr.FourierConfig(k_periods=4, grid=256, weight_scale=10)
    w = cfg.column_weights()
    M, k = cfg.grid, cfg.k_periods
    # 2Bx = pi/2 at i = M/(4k), 3pi/2 at i = 3M/(4k)
    assert w[M // (4 * k)] == 20
    assert w[3 * M // (4 * k)] == 0
    ps = fr.build_construction(cfg)
    assert np.all(ps.multiplicities >= 1)
    assert not np.any(np.isclose(ps.positions[:, 0], 3 * M // (4 * k) * cfg.step))


def test_total_weight_against_direct_sum():
    cfg = fr.FourierConfig(k_periods=4, grid=256, weight_scale=10)
    ps = fr.build_construction(cfg)
    x = np.arange(cfg.grid + 1) * cfg.step
    direct = sum(math.ceil(10 * (1 + math.sin(2 * cfg.B * xi)) - 1e-9) for xi in x) * (cfg.grid + 1)
    assert ps.total_weight == direct == cfg.total_weight()


def test_total_weight_near_continuum_at_defaults():
    # rounding up adds about half a point per site, so small weights drift further
    cfg = fr.FourierConfig()
    assert cfg.total_weight() == pytest.approx(cfg.weight_scale * cfg.size ** 2 / cfg.step ** 2,
                                               rel=0.02)


def test_budget():
    with pytest.raises(MemoryError):
        fr.build_construction(fr.FourierConfig(k_periods=16, grid=512, weight_scale=5000))


def test_grid_disk_clique_matches_generic_method():
    for k, m, w, a in ((4, 40, 3, 1.0), (2, 18, 5, 1.0)):
        cfg = fr.FourierConfig(k, m, w, a)
        ps = fr.build_construction(cfg)
        assert fr.grid_disk_clique_number(cfg) == max_disk_weight(ps.positions, ps.multiplicities)


def test_average_degree_matches_site_arithmetic():
    cfg = fr.FourierConfig(4, 40, 3)
    ps = fr.build_construction(cfg)
    deg = site_degrees(ps)
    inner = np.all((ps.positions >= 1.0) & (ps.positions <= cfg.size - 1.0), axis=1)
    w = ps.multiplicities[inner]
    want = (w * deg[inner]).sum() / w.sum()
    assert fr.interior_average_degree(cfg) == pytest.approx(want, rel=1e-12)


def test_sup_convolution_uniform_control():
    cfg = fr.FourierConfig(amplitude=0.0)
    assert fr.sup_convolution_half(cfg) == pytest.approx(math.pi / 4, rel=0.02)


def test_sup_convolution_default_and_refined():
    a = fr.sup_convolution_half(fr.FourierConfig())
    b = fr.sup_convolution_half(fr.FourierConfig(grid=1024))
    assert a == pytest.approx(math.pi / 4, rel=0.02)
    assert abs(a - b) / a < 0.01


def test_uniform_control_disk_clique():
    cfg = fr.FourierConfig(amplitude=0.0)
    wd = fr.grid_disk_clique_number(cfg)
    assert wd == pytest.approx(cfg.weight_scale * (math.pi / 4) / cfg.step ** 2, rel=0.03)


def test_report_lines():
    rep = fr.measure_ratio(fr.FourierConfig(k_periods=4, grid=64, weight_scale=5))
    text = "\n".join(rep.lines())
    assert "ratio" in text and "omega_D" in text
    assert 0 < rep.ratio < 6 and rep.omega_D >= 1
