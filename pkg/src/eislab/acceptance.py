"""Acceptance criteria as callable checks, shared by pytest and the CLI.

Each criterion function returns a dict record:
  id, name, passed, measured, threshold, runtime_s, details
Quick profile shrinks grids for a fast smoke pass; full profile runs the
grids exactly as pinned.
"""
from __future__ import annotations

import math
import time

import numpy as np

from . import baselines
from .eisenstein import growth_scan, l2_norm_oracle, maass_selberg_norm
from .haar import (
    TestFunctionSpec,
    abel_transform,
    ball_conv_lower,
    ball_volume,
    fourier_laplace,
    haar_ball_volume,
    spherical_transform,
    test_function_build,
)
from .lattice import (
    ball_count,
    brute_force_count_n2,
    brute_force_count_n3,
    drs_fit,
    gamma_q_count,
    sarnak_xue_scan,
    sl_count_mod,
    sl_count_mod_brute,
)
from .lifting import lifting_exponent_scan

__all__ = ["CRITERIA", "run_criterion", "run_all"]


def _record(cid, name, passed, measured, threshold, t0, details=""):
    return {
        "id": cid,
        "name": name,
        "passed": bool(passed),
        "measured": measured,
        "threshold": threshold,
        "runtime_s": round(time.time() - t0, 3),
        "details": details,
    }


def criterion_1(profile="full"):
    """Maass-Selberg closed form vs quadrature oracle, rel <= 1e-2."""
    t0 = time.time()
    grid_t = (1.0, 2.0, 5.0, 10.0) if profile == "full" else (1.0, 5.0)
    grid_T = (2.0, 3.0, 4.0) if profile == "full" else (2.0, 3.0)
    nx = ny = 200 if profile == "full" else 100
    worst = 0.0
    rows = []
    for t in grid_t:
        for T in grid_T:
            closed = maass_selberg_norm(t, T)
            oracle = l2_norm_oracle(t, T, nx=nx, ny=ny)
            rel = abs(closed - oracle.value) / oracle.value
            worst = max(worst, rel)
            rows.append(f"t={t} T={T} rel={rel:.2e}")
    return _record(1, "maass_selberg_vs_oracle", worst <= 1e-2, worst, 1e-2,
                   t0, "; ".join(rows))


def criterion_2(profile="full"):
    """Growth sup ratio finite, two runs within 5%, matches pinned baseline."""
    t0 = time.time()
    steps = 199 if profile == "full" else 40
    s1 = growth_scan(1.0, 100.0, steps, 3.0).sup_ratio
    s2 = growth_scan(1.0, 100.0, steps, 3.0).sup_ratio
    stable = abs(s1 - s2) <= 0.05 * s1
    pinned_ok = True
    if profile == "full":
        pinned_ok = abs(s1 - baselines.GROWTH_SUP_RATIO) <= 0.05 * baselines.GROWTH_SUP_RATIO
    ok = math.isfinite(s1) and stable and pinned_ok
    return _record(2, "growth_sup_ratio", ok, s1, baselines.GROWTH_SUP_RATIO, t0,
                   f"run1={s1:.6f} run2={s2:.6f} pinned={baselines.GROWTH_SUP_RATIO}")


def criterion_3(profile="full"):
    """Truncated norm nondecreasing in T, closed form and oracle."""
    t0 = time.time()
    Ts = (2.0, 3.0, 4.0, 5.0)
    ts = (1.0, 5.0, 10.0) if profile == "full" else (1.0, 5.0)
    nx = ny = 160 if profile == "full" else 80
    ok = True
    details = []
    for t in ts:
        closed = [maass_selberg_norm(t, T) for T in Ts]
        oracle = [l2_norm_oracle(t, T, nx=nx, ny=ny).value for T in Ts]
        mono_c = all(a <= b + 1e-12 for a, b in zip(closed, closed[1:]))
        mono_o = all(a <= b for a, b in zip(oracle, oracle[1:]))
        ok = ok and mono_c and mono_o
        details.append(f"t={t} closed={mono_c} oracle={mono_o}")
    return _record(3, "truncation_monotonicity", ok, ok, True, t0, "; ".join(details))


def criterion_4(profile="full"):
    """Small-radius regime: exactly the identity below R = q/2."""
    t0 = time.time()
    qs = (5, 7, 11, 13, 17)
    counts = {q: gamma_q_count(2, q, q / 2.0).count for q in qs}
    ok = all(c == 1 for c in counts.values())
    return _record(4, "small_radius_identity", ok, counts, 1, t0, str(counts))


def criterion_5(profile="full"):
    """Sarnak-Xue ratio stays within 10% of the pinned first-run maximum."""
    t0 = time.time()
    qs = (2, 3, 5, 6, 7, 10)
    Rs = (10.0, 30.0, 100.0) if profile == "full" else (10.0, 30.0)
    _, max_ratio = sarnak_xue_scan(2, qs, Rs)
    threshold = baselines.SX_MAX_RATIO * 1.10
    ok = max_ratio <= threshold
    return _record(5, "sarnak_xue_ratio", ok, max_ratio, threshold, t0,
                   f"pinned={baselines.SX_MAX_RATIO}")


def criterion_6(profile="full"):
    """DRS free-exponent fit lands in [1.9, 2.1] for n = 2."""
    t0 = time.time()
    Rs = (50.0, 75.0, 100.0, 150.0, 200.0, 300.0) if profile == "full" else (30.0, 50.0, 75.0, 100.0)
    fit = drs_fit(2, Rs, free_exponent=True)
    ok = 1.9 <= fit.exponent <= 2.1
    return _record(6, "drs_exponent", ok, fit.exponent, (1.9, 2.1), t0,
                   f"c2={fit.c_n:.4f}")


def criterion_7(profile="full"):
    """Optimal lifting: uncovered fraction strictly decreasing, small at q=13.

    Implemented exactly as stated.  Measured behavior: coverage saturates
    at epsilon = 0.2 (uncovered fraction identically zero on this grid), so
    the strict-decrease clause cannot hold; see the decisions ledger.
    """
    t0 = time.time()
    qs = (5, 7, 11, 13) if profile == "full" else (5, 7, 11)
    records, slope = lifting_exponent_scan(2, qs, 0.2)
    fracs = [r.uncovered_fraction for r in records]
    strictly_decreasing = all(a > b for a, b in zip(fracs, fracs[1:]))
    small_at_end = fracs[-1] <= 0.05
    ok = strictly_decreasing and small_at_end
    return _record(7, "optimal_lifting", ok, fracs, "strict decrease and <= 0.05",
                   t0, f"slope={slope}")


def criterion_8(profile="full"):
    """Ball-volume growth exponent 2.0 +/- 0.1; MC within 3 stderr of quadrature."""
    t0 = time.time()
    Rs = (10.0, 20.0, 40.0, 80.0)
    samples = 1_000_000 if profile == "full" else 100_000
    vols, errs = [], []
    agree = True
    for i, R in enumerate(Rs):
        v, se = haar_ball_volume(R, samples=samples, seed=17 + i)
        q = ball_volume(R, quad_nodes=400)
        vols.append(v)
        errs.append(se)
        if abs(v - q) > 3.0 * se:
            agree = False
    slope = float(np.polyfit(np.log(Rs), np.log(vols), 1)[0])
    ok = abs(slope - 2.0) <= 0.1 and agree
    return _record(8, "volume_exponent", ok, slope, (1.9, 2.1), t0,
                   f"mc_vs_quad_3sigma={agree}")


def criterion_9(profile="full"):
    """Convolution lower bound: kappa positive and stable (<= 2x) across R."""
    t0 = time.time()
    c = baselines.CONV_C
    Rs = (10.0, 20.0, 40.0)
    samples = 200_000 if profile == "full" else 50_000
    kappas = []
    for i, R in enumerate(Rs):
        norms = np.linspace(math.sqrt(2.0), c * R * R, 10)
        vals = [ball_conv_lower(float(g), R, samples=samples, seed=101 + i)
                for g in norms]
        kappas.append(min(vals))
    ok = min(kappas) > 0 and max(kappas) / min(kappas) <= 2.0
    return _record(9, "conv_lower_bound", ok, kappas, "kappa > 0, spread <= 2x",
                   t0, f"c={c}")


def criterion_10(profile="full"):
    """Harish-Chandra identity |FT(S h) - h~| <= 1e-6, three radial bumps."""
    t0 = time.time()
    freqs = (0.0, 2.0, 5.0)
    mus = (0.0, 1.0, 2.0, 3.0, 5.0) if profile == "full" else (0.0, 2.0)
    worst = 0.0
    for freq in freqs:
        b = 1.0
        H = lambda r, f=freq: (np.exp(-1.0 / np.clip(1.0 - (r / b) ** 2, 1e-300, None))
                               * (r < b) * np.cos(f * r))
        sh = abel_transform(H, b=b, out_step=b / 400.0)
        for m in mus:
            nu = 1j * m
            lhs = fourier_laplace(sh, nu)
            rhs = spherical_transform(H, b, nu)
            worst = max(worst, abs(lhs - rhs))
    return _record(10, "harish_chandra_identity", worst <= 1e-6, worst, 1e-6, t0)


def criterion_11(profile="full"):
    """Localized window properties at mu0 in {0, 2i, 10i}, C0 = 2||rho|| + 1."""
    t0 = time.time()
    ok = True
    details = []
    for m0 in (0.0, 2.0, 10.0):
        tf = test_function_build(TestFunctionSpec(mu0=1j * m0))
        ax = tf.axis_min()
        loc = tf.localization_min()
        nfit = tf.paley_wiener_fit()
        good = ax >= -1e-10 and loc >= 0.1 and nfit >= 6.0
        ok = ok and good
        details.append(f"mu0={m0}i delta={tf.delta} axis={ax:.2e} loc={loc:.3f} N={nfit:.2f}")
    return _record(11, "test_function_properties", ok, details, "axis>=-1e-10, loc>=0.1, N>=6", t0)


def criterion_12(profile="full"):
    """Exact agreement of the enumerators and the quotient-order formula."""
    t0 = time.time()
    ok = True
    details = []
    rs2 = (2.0, 5.0, 10.0, 20.0, 30.0) if profile == "full" else (2.0, 5.0, 10.0)
    for R in rs2:
        a = ball_count(2, R)
        b = brute_force_count_n2(R)
        ok = ok and a == b
        details.append(f"n2 R={R}: {a}/{b}")
    rs3 = (math.sqrt(3.0), 3.0, 5.0, 8.0) if profile == "full" else (math.sqrt(3.0), 3.0, 5.0)
    for R in rs3:
        a = ball_count(3, R)
        b = brute_force_count_n3(R)
        ok = ok and a == b
        details.append(f"n3 R={R:.3f}: {a}/{b}")
    for q in (2, 3):
        a = sl_count_mod(2, q)
        b = sl_count_mod_brute(2, q)
        ok = ok and a == b
        details.append(f"mod q={q}: {a}/{b}")
    return _record(12, "oracle_equivalence", ok, ok, True, t0, "; ".join(details))


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run_criterion(cid: int, profile: str = "full") -> dict:
    return CRITERIA[cid](profile=profile)


def run_all(profile: str = "full", ids=None) -> dict:
    records = [CRITERIA[c](profile=profile) for c in sorted(ids or CRITERIA)]
    return {
        "profile": profile,
        "passed": all(r["passed"] for r in records),
        "criteria": records,
    }
