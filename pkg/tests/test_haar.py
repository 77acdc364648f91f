import math

import numpy as np
import pytest

from eislab.haar import (
    CalibrationError,
    CartanCoordinate,
    EuclideanProfile,
    QuadratureConvergenceError,
    RadialProfile,
    SupportViolationError,
    TestFunctionSpec,
    abel_inverse,
    abel_transform,
    ball_conv_lower,
    ball_volume,
    conv_overlap_quadrature,
    fourier_laplace,
    haar_ball_volume,
    spherical_fn,
    spherical_transform,
    test_function_build,
)


def _bump(r, b=1.0, freq=0.0):
    r = np.asarray(r)
    return (np.exp(-1.0 / np.clip(1.0 - (r / b) ** 2, 1e-300, None))
            * (r < b) * np.cos(freq * r))


# ---------------------------------------------------------------- volumes

def test_cartan_norm_roundtrip():
    g = CartanCoordinate.from_norm(10.0)
    assert g.frobenius_norm == pytest.approx(10.0)
    with pytest.raises(ValueError):
        CartanCoordinate.from_norm(1.0)


def test_volume_monotone_and_degenerate():
    assert ball_volume(1.0) == 0.0
    vols = [ball_volume(R) for R in (2.0, 5.0, 10.0, 40.0)]
    assert all(a < b for a, b in zip(vols, vols[1:]))


def test_mc_volume_agrees_with_quadrature():
    for seed, R in ((1, 10.0), (2, 40.0)):
        v, se = haar_ball_volume(R, samples=200_000, seed=seed)
        q = ball_volume(R, quad_nodes=400)
        assert abs(v - q) <= 3.0 * se
        assert q == pytest.approx(ball_volume(R), rel=1e-12)


def test_volume_loglog_slope():
    Rs = (10.0, 20.0, 40.0, 80.0)
    vols = [haar_ball_volume(R, samples=400_000, seed=9)[0] for R in Rs]
    slope = np.polyfit(np.log(Rs), np.log(vols), 1)[0]
    assert abs(slope - 2.0) <= 0.1


# ---------------------------------------------------------------- overlap

def test_overlap_at_identity_is_full_ball():
    R = 15.0
    v = ball_conv_lower(math.sqrt(2.0), R, samples=100_000, seed=4)
    assert v == pytest.approx(ball_volume(R), rel=5e-3)


def test_overlap_nonincreasing_in_g():
    # radial quadrature oracle at three radial positions
    R = 20.0
    vals = [conv_overlap_quadrature(g, R) for g in (2.0, 6.0, 18.0)]
    assert vals[0] >= vals[1] >= vals[2] > 0.0


def test_overlap_mc_matches_quadrature_and_measured_ratio():
    # ||g|| = R^2/100 at R = 20: measured overlap fraction is ~0.309 of the
    # full ball (the radial quadrature is the oracle of record here)
    R = 20.0
    g = R * R / 100.0
    q = conv_overlap_quadrature(g, R)
    v = ball_conv_lower(g, R, samples=400_000, seed=8)
    se = ball_volume(R) / math.sqrt(400_000.0)
    assert abs(v - q) <= 4.0 * se
    assert q / ball_volume(R) == pytest.approx(0.309, abs=0.01)
    assert q >= 0.29 * ball_volume(R)


def test_overlap_kappa_band_regression():
    from eislab import baselines

    c = baselines.CONV_C
    for R in (10.0, 40.0):
        far = conv_overlap_quadrature(c * R * R, R)
        assert far >= 0.9 * baselines.CONV_KAPPA_MIN


# ---------------------------------------------------------------- spherical

def test_spherical_identity_point():
    for mu in (0.0, 0.7j, 1.0 + 0.5j):
        assert spherical_fn(mu, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_spherical_weyl_symmetry():
    a = spherical_fn(0.7j, 1.0)
    b = spherical_fn(-0.7j, 1.0)
    assert abs(a - b) < 1e-8


def test_spherical_refinement_pin():
    # value pinned by the 512-node quadrature
    assert spherical_fn(0.5j, 1.0).real == pytest.approx(0.6150553749710181, abs=1e-12)


def test_spherical_domain_guards():
    with pytest.raises(ValueError):
        spherical_fn(3.0, 1.0)
    with pytest.raises(ValueError):
        spherical_fn(0.5j, 25.0)


# ---------------------------------------------------------------- transforms

def test_abel_of_zero_is_zero():
    prof = abel_transform(lambda r: np.zeros_like(np.asarray(r)), b=1.0)
    assert np.max(np.abs(prof.samples)) == 0.0


def test_abel_support_containment():
    prof = abel_transform(lambda r: _bump(r), b=1.0)
    beyond = np.abs(prof.grid) > 1.0 + 1e-12
    assert np.max(np.abs(np.asarray(prof.samples)[beyond])) <= 1e-8
    assert prof.symmetric


def test_harish_chandra_identity():
    b = 1.0
    for freq in (0.0, 2.0, 5.0):
        H = lambda r, f=freq: _bump(r, b, f)
        sh = abel_transform(H, b=b, out_step=b / 400.0)
        for m in (0.0, 1.0, 2.0, 3.0, 5.0):
            lhs = fourier_laplace(sh, 1j * m)
            rhs = spherical_transform(H, b, 1j * m)
            assert abs(lhs - rhs) <= 1e-6


def test_abel_inverse_of_zero():
    n = 401
    prof = EuclideanProfile(samples=(0.0,) * n, step=0.005, support_b=1.0)
    rad = abel_inverse(prof)
    assert np.max(np.abs(rad.samples)) == 0.0


@pytest.mark.parametrize("freq", [0.0, 3.0, 6.0])
def test_abel_roundtrip(freq):
    b = 1.0
    half = 600
    step = 1.3 * b / half
    us = (np.arange(2 * half + 1) - half) * step
    f = EuclideanProfile(samples=tuple(_bump(np.abs(us), b, freq)), step=step,
                         support_b=b)
    rad = abel_inverse(f)
    fwd = abel_transform(rad, b=b, out_step=step)
    err = np.max(np.abs(np.asarray(fwd(us)) - np.asarray(f.samples)))
    assert err <= 1e-4
    # inverse support within [0, b]
    rgrid = np.arange(len(rad.samples)) * rad.step
    beyond = rgrid > b
    if np.any(beyond):
        assert np.max(np.abs(np.asarray(rad.samples)[beyond])) <= 1e-12


def test_abel_inverse_roundtrip_check_flag():
    b = 1.0
    half = 400
    step = 1.3 * b / half
    us = (np.arange(2 * half + 1) - half) * step
    f = EuclideanProfile(samples=tuple(_bump(np.abs(us), b)), step=step, support_b=b)
    abel_inverse(f, check_roundtrip=True)  # must not raise


def test_profile_validation():
    with pytest.raises(ValueError):
        EuclideanProfile(samples=(0.0, 1.0), step=0.1, support_b=1.0)  # even length
    with pytest.raises(ValueError):
        EuclideanProfile(samples=(0.0, 1.0, 2.0), step=0.1, support_b=1.0)  # not even fn


# ---------------------------------------------------------------- test function

@pytest.mark.parametrize("m0", [0.0, 2.0, 10.0])
def test_window_properties(m0):
    tf = test_function_build(TestFunctionSpec(mu0=1j * m0))
    assert tf.axis_min() >= -1e-10
    assert tf.localization_min() >= 0.1
    assert tf.paley_wiener_fit() >= 6.0


def test_window_weyl_symmetry_exact():
    tf = test_function_build(TestFunctionSpec(mu0=2j))
    nus = 1j * np.linspace(-5.0, 5.0, 21) + 0.3
    diff = np.max(np.abs(tf(nus) - tf(-nus)))
    assert diff <= 1e-12


def test_window_spec_validation():
    with pytest.raises(ValueError):
        TestFunctionSpec(delta=-0.1)
    with pytest.raises(ValueError):
        TestFunctionSpec(mu0=1.0 + 0j)


def test_window_calibration_failure():
    with pytest.raises(CalibrationError):
        test_function_build(TestFunctionSpec(mu0=0j), localization_floor=100.0)


def test_window_exponential_type_reported():
    tf = test_function_build(TestFunctionSpec(mu0=0j))
    b = tf.exponential_type_fit()
    assert math.isfinite(b)
