"""Command-line front end.

Every experiment is reproducible from a single command line; identical
(flags, seed) produce byte-identical CSV artifacts.  Exit codes: 0 ok,
2 argument error, 3 budget or memory guard, 4 numerical tolerance failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import acceptance, baselines
from .eisenstein import growth_scan, l2_norm_oracle, maass_selberg_norm
from .haar import (
    CalibrationError,
    QuadratureConvergenceError,
    RoundTripError,
    SupportViolationError,
    TestFunctionSpec,
    abel_inverse,
    abel_transform,
    ball_conv_lower,
    ball_volume,
    bump_profile,
    conv_overlap_quadrature,
    haar_ball_volume,
    test_function_build,
)
from .lattice import (
    BudgetExceededError,
    NonSquareFreeError,
    ball_count,
    drs_fit,
    gamma_q_count,
    sarnak_xue_scan,
)
from .lifting import MemoryCapError, ResidueClass, coverage, lifting_exponent_scan, minimal_lift
from .storage import BallCountCache, write_csv, write_manifest, write_profile

GUARD_ERRORS = (BudgetExceededError, MemoryCapError)
TOLERANCE_ERRORS = (QuadratureConvergenceError, RoundTripError,
                    SupportViolationError, CalibrationError)


def _floats(text: str):
    return [float(v) for v in text.split(",") if v]


def _ints(text: str):
    return [int(v) for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eislab",
                                description="numerical experiments for Eisenstein "
                                            "norms, congruence counting and rank-1 "
                                            "harmonic analysis")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default=None, help="CSV/JSON artifact path")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1,
                        help="chunking hint; results identical for any value")
        sp.add_argument("--cache", default=None, help="ball-count cache path")

    sp = sub.add_parser("gl2-norm", help="closed-form vs quadrature truncated norm")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--nx", type=int, default=200)
    sp.add_argument("--ny", type=int, default=200)
    common(sp)

    sp = sub.add_parser("gl2-scan", help="growth scan of the closed-form norm")
    sp.add_argument("--t-min", type=float, default=1.0)
    sp.add_argument("--t-max", type=float, default=100.0)
    sp.add_argument("--steps", type=int, default=199)
    sp.add_argument("--T", type=float, default=3.0)
    common(sp)

    sp = sub.add_parser("count", help="congruence ball count with SX bound")
    sp.add_argument("--n", type=int, choices=(2, 3), required=True)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--R", type=float, required=True)
    common(sp)

    sp = sub.add_parser("sx-scan", help="Sarnak-Xue ratio table")
    sp.add_argument("--n", type=int, choices=(2, 3), default=2)
    sp.add_argument("--q", type=_ints, default=[2, 3, 5, 6, 7, 10])
    sp.add_argument("--R", type=_floats, default=[10.0, 30.0, 100.0])
    common(sp)

    sp = sub.add_parser("drs-fit", help="fit ball counts against c R^(n(n-1))")
    sp.add_argument("--n", type=int, choices=(2, 3), default=2)
    sp.add_argument("--R", type=_floats, default=[50.0, 75.0, 100.0, 150.0, 200.0, 300.0])
    sp.add_argument("--free-exponent", action="store_true")
    common(sp)

    sp = sub.add_parser("lift", help="residue coverage of one (q, R)")
    sp.add_argument("--n", type=int, choices=(2, 3), default=2)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--R", type=float, required=True)
    common(sp)

    sp = sub.add_parser("lift-scan", help="coverage at R = q^(1+1/n+eps) per q")
    sp.add_argument("--n", type=int, choices=(2, 3), default=2)
    sp.add_argument("--q", type=_ints, default=[5, 7, 11, 13])
    sp.add_argument("--eps", type=float, default=0.2)
    common(sp)

    sp = sub.add_parser("minlift", help="minimal-norm lift of a residue class")
    sp.add_argument("--n", type=int, choices=(2, 3), default=2)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--residue", required=True,
                    help="comma-separated row-major entries in [0, q)")
    sp.add_argument("--R-max", type=float, required=True)
    common(sp)

    sp = sub.add_parser("haar-vol", help="Monte Carlo Haar ball volume")
    sp.add_argument("--R", type=float, required=True)
    sp.add_argument("--samples", type=int, default=1_000_000)
    common(sp)

    sp = sub.add_parser("conv-lower", help="ball convolution overlap volume")
    sp.add_argument("--g-norm", type=float, required=True)
    sp.add_argument("--R", type=float, required=True)
    sp.add_argument("--samples", type=int, default=200_000)
    common(sp)

    sp = sub.add_parser("abel-roundtrip", help="Abel transform round trip")
    sp.add_argument("--b", type=float, default=1.0)
    sp.add_argument("--freq", type=float, default=3.0)
    common(sp)

    sp = sub.add_parser("testfn", help="build and report the spectral window")
    sp.add_argument("--mu0", type=float, default=0.0,
                    help="imaginary part of the window center")
    sp.add_argument("--delta", type=float, default=0.5)
    common(sp)

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp.add_argument("--only", type=_ints, default=None,
                    help="comma-separated criterion ids")
    common(sp)
    return p


def _emit(path, header, rows):
    if path:
        write_csv(path, header, rows)


def _cmd_gl2_norm(args) -> int:
    closed = maass_selberg_norm(args.t, args.T)
    oracle = l2_norm_oracle(args.t, args.T, nx=args.nx, ny=args.ny)
    ratio = closed / oracle.value
    print(f"closed_form={closed:.17g} oracle={oracle.value:.17g} "
          f"ratio={ratio:.17g} refine_err={oracle.error_estimate:.3e}")
    _emit(args.out, ["t", "T", "closed_form", "oracle", "ratio"],
          [(args.t, args.T, closed, oracle.value, ratio)])
    return 0


def _cmd_gl2_scan(args) -> int:
    scan = growth_scan(args.t_min, args.t_max, args.steps, args.T)
    print(f"sup_ratio={scan.sup_ratio:.17g} over {len(scan.rows)} points")
    _emit(args.out, ["t", "T", "closed_form", "ratio"],
          [(t, args.T, n, r) for (t, n, r) in scan.rows])
    return 0


def _cmd_count(args) -> int:
    cache = BallCountCache(args.cache) if args.cache else None
    if cache is not None and args.q == 1:
        bound = int(math.floor(args.R ** 2 + 1e-9))
        hit = cache.get(args.n, bound)
        if hit is None:
            rec = gamma_q_count(args.n, args.q, args.R)
            cache.put(args.n, bound, rec.count)
        else:
            from .lattice import CountRecord, _sx_bound
            sx = _sx_bound(args.n, 1, args.R)
            rec = CountRecord(args.n, 1, args.R, hit,
                              baselines.DRS_C[args.n] * args.R ** (args.n * (args.n - 1)),
                              sx, hit / sx)
    else:
        rec = gamma_q_count(args.n, args.q, args.R)
    print(f"count={rec.count} main_term={rec.main_term:.17g} "
          f"sx_bound={rec.sx_bound:.17g} ratio_sx={rec.ratio_sx:.17g}")
    _emit(args.out, ["n", "q", "R", "count", "main_term", "sx_bound", "ratio_sx"],
          [(rec.n, rec.q, rec.R, rec.count, rec.main_term, rec.sx_bound, rec.ratio_sx)])
    return 0


def _cmd_sx_scan(args) -> int:
    records, max_ratio = sarnak_xue_scan(args.n, args.q, args.R)
    print(f"max_ratio_sx={max_ratio:.17g} rows={len(records)}")
    _emit(args.out, ["n", "q", "R", "count", "main_term", "sx_bound", "ratio_sx"],
          [(r.n, r.q, r.R, r.count, r.main_term, r.sx_bound, r.ratio_sx)
           for r in records])
    return 0


def _cmd_drs_fit(args) -> int:
    cache = BallCountCache(args.cache) if args.cache else None
    counts = []
    for R in args.R:
        bound = int(math.floor(R * R + 1e-9))
        hit = cache.get(args.n, bound) if cache else None
        if hit is None:
            hit = ball_count(args.n, R)
            if cache:
                cache.put(args.n, bound, hit)
        counts.append(hit)
    fit = drs_fit(args.n, args.R, counts=counts, free_exponent=args.free_exponent)
    print(f"c_n={fit.c_n:.17g} exponent={fit.exponent:.17g} "
          f"max_rel_residual={max(abs(r) for r in fit.residuals):.3e}")
    _emit(args.out, ["R", "count", "rel_residual"],
          [(R, c, r) for R, c, r in zip(args.R, counts, fit.residuals)])
    return 0


def _cmd_lift(args) -> int:
    rec = coverage(args.n, args.q, args.R)
    print(f"covered={rec.covered}/{rec.total} "
          f"uncovered_fraction={rec.uncovered_fraction:.17g}")
    _emit(args.out, ["n", "q", "R", "covered", "total", "uncovered_fraction"],
          [(rec.n, rec.q, rec.R, rec.covered, rec.total, rec.uncovered_fraction)])
    return 0


def _cmd_lift_scan(args) -> int:
    records, slope = lifting_exponent_scan(args.n, args.q, args.eps)
    print(f"fitted_decay_slope={slope}")
    _emit(args.out, ["n", "q", "R", "covered", "total", "uncovered_fraction"],
          [(r.n, r.q, r.R, r.covered, r.total, r.uncovered_fraction)
           for r in records])
    if args.out:
        write_manifest(args.out + ".manifest.json",
                       {"command": "lift-scan", "n": args.n, "q": args.q,
                        "eps": args.eps, "seed": args.seed,
                        "workers": args.workers},
                       cache_path=args.cache)
    return 0


def _cmd_minlift(args) -> int:
    entries = tuple(int(v) % args.q for v in args.residue.split(","))
    r = ResidueClass(n=args.n, q=args.q, entries=entries)
    m = minimal_lift(args.n, args.q, r, args.R_max)
    if m is None:
        print("not-found")
        return 0
    print(f"entries={','.join(str(e) for e in m.entries)} "
          f"norm={math.sqrt(m.norm_sq):.17g}")
    return 0


def _cmd_haar_vol(args) -> int:
    v, se = haar_ball_volume(args.R, samples=args.samples, seed=args.seed)
    q = ball_volume(args.R, quad_nodes=400)
    print(f"mc={v:.17g} stderr={se:.3e} quadrature={q:.17g}")
    _emit(args.out, ["R", "samples", "seed", "mc", "stderr", "quadrature"],
          [(args.R, args.samples, args.seed, v, se, q)])
    return 0


def _cmd_conv_lower(args) -> int:
    v = ball_conv_lower(args.g_norm, args.R, samples=args.samples, seed=args.seed)
    q = conv_overlap_quadrature(args.g_norm, args.R)
    print(f"mc={v:.17g} quadrature={q:.17g} vol={ball_volume(args.R):.17g}")
    _emit(args.out, ["g_norm", "R", "samples", "seed", "mc", "quadrature"],
          [(args.g_norm, args.R, args.samples, args.seed, v, q)])
    return 0


def _cmd_abel_roundtrip(args) -> int:
    f = bump_profile(args.b, args.freq)
    radial = abel_inverse(f)
    forward = abel_transform(radial, b=args.b, out_step=f.step)
    err = float(np.max(np.abs(np.asarray(forward(f.grid)) - np.asarray(f.samples))))
    print(f"roundtrip_sup_error={err:.17g}")
    if args.out:
        write_profile(args.out, radial)
    if err > 1e-4:
        raise RoundTripError(f"round trip sup error {err:.2e} > 1e-4")
    return 0


def _cmd_testfn(args) -> int:
    spec = TestFunctionSpec(delta=args.delta, mu0=1j * args.mu0)
    tf = test_function_build(spec)
    report = {
        "mu0_imag": args.mu0,
        "delta_calibrated": tf.delta,
        "axis_min": tf.axis_min(),
        "localization_min": tf.localization_min(),
        "paley_wiener_N": tf.paley_wiener_fit(),
        "exponential_type_b": tf.exponential_type_fit(),
    }
    print(" ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                   for k, v in report.items()))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_verify(args) -> int:
    report = acceptance.run_all(profile=args.profile, ids=args.only)
    for rec in report["criteria"]:
        status = "PASS" if rec["passed"] else "FAIL"
        print(f"[{status}] criterion {rec['id']:2d} {rec['name']} "
              f"({rec['runtime_s']}s)")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    if not report["passed"]:
        first = next(r for r in report["criteria"] if not r["passed"])
        print(f"error: tolerance: criterion {first['id']} {first['name']} failed",
              file=sys.stderr)
        return 4
    return 0


_DISPATCH = {
    "gl2-norm": _cmd_gl2_norm,
    "gl2-scan": _cmd_gl2_scan,
    "count": _cmd_count,
    "sx-scan": _cmd_sx_scan,
    "drs-fit": _cmd_drs_fit,
    "lift": _cmd_lift,
    "lift-scan": _cmd_lift_scan,
    "minlift": _cmd_minlift,
    "haar-vol": _cmd_haar_vol,
    "conv-lower": _cmd_conv_lower,
    "abel-roundtrip": _cmd_abel_roundtrip,
    "testfn": _cmd_testfn,
    "verify": _cmd_verify,
}


def run(argv) -> int:
    """Parse and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except GUARD_ERRORS as exc:
        print(f"error: guard: {exc}", file=sys.stderr)
        return 3
    except TOLERANCE_ERRORS as exc:
        print(f"error: tolerance: {exc}", file=sys.stderr)
        return 4
    except (ValueError, NonSquareFreeError) as exc:
        print(f"error: argument: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
