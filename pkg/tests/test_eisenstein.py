import cmath
import math

import numpy as np
import pytest

from eislab.eisenstein import (
    UpperHalfPlanePoint,
    constant_term_fit,
    eisenstein_fourier,
    eisenstein_value,
    growth_scan,
    l2_norm_oracle,
    maass_selberg_norm,
    truncated_eisenstein,
)
from eislab.special_functions import completed_zeta, scattering


def test_fundamental_domain_reduction():
    rng = np.random.default_rng(5)
    for _ in range(50):
        z = UpperHalfPlanePoint(rng.uniform(-3, 3), rng.uniform(0.05, 4.0))
        r = z.reduce()
        assert abs(r.x) <= 0.5 + 1e-12
        assert r.x ** 2 + r.y ** 2 >= 1.0 - 1e-12


def test_point_requires_positive_y():
    with pytest.raises(ValueError):
        UpperHalfPlanePoint(0.0, -1.0)


def test_sl2_invariance_direct_sum():
    # gamma = [[0,-1],[1,0]] at z = 0.1 + 1.3i, t = 1
    z = complex(0.1, 1.3)
    w = -1.0 / z
    v1 = eisenstein_value((z.real, z.imag), 1.0, cutoff=600).value
    v2 = eisenstein_value((w.real, w.imag), 1.0, cutoff=600).value
    assert abs(v1 - v2) < 1e-4


def test_two_cutoff_consistency():
    a = eisenstein_value((0.0, 2.0), 1.0, cutoff=500)
    b = eisenstein_value((0.0, 2.0), 1.0, cutoff=1000)
    assert abs(a.value - b.value) < 1e-5
    assert b.converged and b.tail_estimate < 1e-5


def test_direct_vs_fourier_cross_validation():
    for (x, y, t) in [(0.0, 2.0, 1.0), (0.1, 1.3, 1.0), (0.3, 0.9, 5.0)]:
        d = eisenstein_value((x, y), t, cutoff=800).value
        f = eisenstein_fourier(x, y, t)
        assert abs(d - f) < 1e-6


@pytest.mark.parametrize("t", [2.0, 5.0])
def test_constant_term_fixes_normalization(t):
    # the fit is the oracle that decides between xi(2it)/xi(1+2it) and the
    # halved-argument convention xi(it)/xi(1+it); it picks the former
    c_fit, residual, leading = constant_term_fit(t, cutoff=700)
    doubled = scattering(t).value
    halved = completed_zeta(1j * t) / completed_zeta(1.0 + 1j * t)
    assert residual <= 1e-4
    assert abs(abs(c_fit) - 1.0) <= 1e-4
    assert abs(c_fit - doubled) < 1e-6
    assert abs(c_fit - halved) > 0.1
    assert abs(leading - 1.0) < 1e-6


def test_eisenstein_value_cutoff_guard():
    with pytest.raises(ValueError):
        eisenstein_value((0.0, 2.0), 1.0, cutoff=50)


def test_truncation_below_height_identity():
    # e^T = e > 1.2, so truncation changes nothing; compare against the
    # independent direct-sum route
    z = (0.1, 1.2)
    tr = truncated_eisenstein(z, 1.0, 1.0)
    direct = eisenstein_value(z, 1.0, cutoff=800).value
    assert abs(tr - direct) < 1e-4


def test_truncation_rapid_decay():
    assert abs(truncated_eisenstein((0.0, 50.0), 1.0, 1.0)) <= 1e-3


def test_below_height_identity_random_points():
    # Lambda^T E = E on the domain below height e^T, 100 random points
    rng = np.random.default_rng(12)
    t, T = 1.0, 3.0
    for _ in range(100):
        z = UpperHalfPlanePoint(rng.uniform(-2, 2), rng.uniform(0.1, 5.0))
        r = z.reduce()
        if r.y > math.exp(T):
            continue
        tr = truncated_eisenstein(z, t, T)
        full = eisenstein_fourier(r.x, r.y, t)
        assert abs(tr - full) < 1e-10


def test_truncation_kills_constant_term():
    # integral over x of the truncated series at height 2 e^T
    t, T = 2.0, 1.0
    y = 2.0 * math.exp(T)
    xs = (np.arange(32) + 0.5) / 32 - 0.5
    vals = [truncated_eisenstein((float(x), y), t, T) for x in xs]
    assert abs(np.mean(vals)) < 1e-4


def test_maass_selberg_nonnegative_grid():
    for t in (1.0, 2.0, 5.0, 10.0, 25.0):
        for T in (1.0, 2.0, 3.0, 5.0):
            assert maass_selberg_norm(t, T) >= 0.0


def test_maass_selberg_slope_in_T():
    t = 5.0
    for T in (2.0, 3.0, 4.0):
        slope = maass_selberg_norm(t, T + 1.0) - maass_selberg_norm(t, T)
        assert abs(slope - 2.0) <= 2.0 / abs(t) + 1e-12


def test_closed_form_vs_oracle_point():
    t, T = 5.0, 3.0
    oracle = l2_norm_oracle(t, T, nx=140, ny=160)
    closed = maass_selberg_norm(t, T)
    assert oracle.refinement_ok
    assert abs(closed - oracle.value) / oracle.value <= 1e-2


def test_oracle_monotone_in_T():
    a = l2_norm_oracle(5.0, 3.0, nx=100, ny=120).value
    b = l2_norm_oracle(5.0, 4.0, nx=100, ny=120).value
    assert a <= b


def test_oracle_refinement_convergence():
    res = l2_norm_oracle(2.0, 2.0, nx=160, ny=160)
    assert res.error_estimate <= 0.01


def test_growth_scan_degenerate_and_arithmetic():
    scan = growth_scan(10.0, 10.0 + 1e-9, 1, 3.0)
    t, norm, ratio = scan.rows[0]
    assert norm == pytest.approx(maass_selberg_norm(10.0, 3.0), abs=1e-9)
    assert ratio == pytest.approx(norm / (3.0 * math.log(12.0)), rel=1e-12)
    assert scan.sup_ratio == ratio


def test_growth_scan_sup_ratio_regression():
    from eislab import baselines

    scan = growth_scan(1.0, 100.0, 199, 3.0)
    assert scan.sup_ratio == pytest.approx(baselines.GROWTH_SUP_RATIO, rel=5e-2)


def test_growth_scan_domain_guard():
    with pytest.raises(ValueError):
        growth_scan(0.0, 10.0, 5, 3.0)
