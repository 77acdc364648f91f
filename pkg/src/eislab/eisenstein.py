"""GL(2) real-analytic Eisenstein series at desk scale.

Two independent evaluation routes for E(z, 1/2 + it):

* ``eisenstein_value`` sums the defining lattice series over a box
  max(|c|, |d|) <= cutoff with trapezoid boundary weights, adds the smooth
  exterior integral of the underlying quadratic form, and removes the
  remaining N^(-2s) oscillation by two-cutoff extrapolation.  It never
  touches zeta/Gamma except for one overall normalization, so it serves
  as the oracle that fixes the scattering normalization.

* ``eisenstein_fourier`` uses the Bessel expansion with explicitly
  computed K_{it} and divisor coefficients; it is fast and accurate and
  drives the truncation operator and the L2-norm quadrature oracle.

The truncated series, the Maass-Selberg closed form of its L2 norm, the
fundamental-domain quadrature oracle, and growth scans in t live here too.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .special_functions import (
    UndefinedAtZeroError,
    completed_zeta,
    riemann_zeta,
    scattering,
    scattering_log_deriv,
)

__all__ = [
    "UpperHalfPlanePoint",
    "EisensteinValue",
    "OracleResult",
    "GrowthScan",
    "eisenstein_value",
    "eisenstein_fourier",
    "truncated_eisenstein",
    "constant_term_fit",
    "maass_selberg_norm",
    "l2_norm_oracle",
    "growth_scan",
]


@dataclass(frozen=True)
class UpperHalfPlanePoint:
    """Point x + iy with y > 0."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0.0:
            raise ValueError(f"upper half plane needs y > 0, got y = {self.y}")

    def reduce(self) -> "UpperHalfPlanePoint":
        """SL(2,Z)-translate into |x| <= 1/2, x^2 + y^2 >= 1."""
        z = complex(self.x, self.y)
        for _ in range(1000):
            x = z.real - round(z.real)
            z = complex(x, z.imag)
            if abs(z) < 1.0 - 1e-15:
                z = -1.0 / z
            else:
                break
        return UpperHalfPlanePoint(z.real, z.imag)


def _as_point(z) -> UpperHalfPlanePoint:
    if isinstance(z, UpperHalfPlanePoint):
        return z
    if isinstance(z, complex):
        return UpperHalfPlanePoint(z.real, z.imag)
    x, y = z
    return UpperHalfPlanePoint(float(x), float(y))


# ---------------------------------------------------------------------------
# direct lattice route
# ---------------------------------------------------------------------------

def _epstein_box(x: float, y: float, t: float, N: int) -> complex:
    """Full-lattice sum of Q(c,d)^(-s) over max(|c|,|d|) <= N, Q = |cz+d|^2.

    Boundary lattice points carry trapezoid weight 1/2 (1/4 at corners) and
    the smooth exterior integral of Q^(-s) over the box complement is added,
    analytically continued to the critical line.  The residual error is
    c(z,s) N^(-2s) plus higher order.
    """
    s = 0.5 + 1j * t
    ds = np.arange(-N, N + 1, dtype=float)
    boundary_d = np.abs(ds) == N
    # c = 0 row, d != 0
    nz = ds != 0.0
    w0 = np.where(boundary_d[nz], 0.5, 1.0)
    total = complex(np.sum(w0 * np.abs(ds[nz]) ** (-2.0 * s)))
    for c in range(1, N + 1):
        Q = (c * x + ds) ** 2 + (c * y) ** 2
        w = np.where(boundary_d, 0.5, 1.0)
        if c == N:
            w = 0.5 * w
        total += 2.0 * complex(np.sum(w * Q ** (-s)))
    # exterior integral: G(z,s) * N^(2-2s) / (2s-2), with
    # G = 2 int_{-1}^{1} [Q(1,u)^-s + Q(u,1)^-s] du over the unit box edges
    nodes, wts = np.polynomial.legendre.leggauss(400)
    q_right = ((x + nodes) ** 2 + y * y) ** (-s)
    q_top = ((nodes * x + 1.0) ** 2 + (nodes * y) ** 2) ** (-s)
    G = 2.0 * complex(np.sum(wts * (q_right + q_top)))
    total += G * N ** (2.0 - 2.0 * s) / (2.0 * s - 2.0)
    return total


def _extrapolate_pair(e1: complex, e2: complex, n1: int, n2: int, s: complex) -> complex:
    r1 = n1 ** (-2.0 * s)
    r2 = n2 ** (-2.0 * s)
    coeff = (e2 - e1) / (r2 - r1)
    return e2 - coeff * r2


def _epstein_extrapolated(x: float, y: float, t: float, N: int) -> tuple[complex, float]:
    """Extrapolation with the known N^(-2s) error exponent of the box sum.

    The reported tail estimate is the difference between the extrapolated
    values computed at cutoff N/2 and at cutoff N, i.e. exactly the
    half-cutoff self-consistency of the operation's own output.
    """
    s = 0.5 + 1j * t
    n0, n1 = max(N // 4, 8), max(N // 2, 16)
    e0 = _epstein_box(x, y, t, n0)
    e1 = _epstein_box(x, y, t, n1)
    e2 = _epstein_box(x, y, t, N)
    half = _extrapolate_pair(e0, e1, n0, n1, s)
    full = _extrapolate_pair(e1, e2, n1, N, s)
    return full, abs(full - half)


@dataclass(frozen=True)
class EisensteinValue:
    """Direct-sum value with its self-consistency diagnostics."""

    value: complex
    tail_estimate: float
    converged: bool


def eisenstein_value(z, t: float, cutoff: int = 1000) -> EisensteinValue:
    """E(z, 1/2 + it) from the lattice sum at the given box cutoff.

    ``tail_estimate`` is the modulus of the difference of the two
    extrapolation inputs (cutoff/2 and cutoff); ``converged`` is False when
    the two half-cutoff partial values disagree by more than 1e-4.
    """
    if cutoff < 100:
        raise ValueError("cutoff must be >= 100")
    p = _as_point(z)
    s = 0.5 + 1j * t
    ep, tail = _epstein_extrapolated(p.x, p.y, t, cutoff)
    value = (p.y ** s) * ep / (2.0 * riemann_zeta(1.0 + 2j * t))
    return EisensteinValue(value=value, tail_estimate=tail, converged=tail <= 1e-4)


def constant_term_fit(t: float, ys=(3.0, 4.0, 5.0, 6.0), cutoff: int = 800,
                      x_nodes: int = 8):
    """Extract the constant term of the lattice sum and fit its two exponents.

    Integrates the (un-normalized) lattice sum over x in [0,1), fits
    A y^s + B y^(1-s) by least squares over the given heights, and returns
    ``(c_fit, residual, leading)`` with c_fit = B/A and leading = A times
    the zeta normalization (close to 1).  This fit is zeta-free in the
    ratio and is the oracle that pins the scattering normalization.
    """
    s = 0.5 + 1j * t
    xs = (np.arange(x_nodes) + 0.5) / x_nodes
    ys = np.asarray(ys, dtype=float)
    m0 = []
    for yv in ys:
        vals = [_epstein_extrapolated(float(xv), float(yv), t, cutoff)[0] for xv in xs]
        m0.append((yv ** s) * np.mean(vals))
    m0 = np.array(m0)
    design = np.vstack([ys ** s, ys ** (1.0 - s)]).T
    coef, *_ = np.linalg.lstsq(design, m0, rcond=None)
    A, B = coef
    residual = float(np.max(np.abs(design @ coef - m0)) / abs(A))
    leading = A / (2.0 * riemann_zeta(1.0 + 2j * t))
    return B / A, residual, leading


# ---------------------------------------------------------------------------
# Bessel route
# ---------------------------------------------------------------------------

def _besselk_it(t: float, xs: np.ndarray) -> np.ndarray:
    """K_{it}(x) for x > 0 via the even integral representation.

    Trapezoid on [0, umax] is spectrally accurate here because the
    integrand is even and decays doubly exponentially.
    """
    xs = np.asarray(xs, dtype=float)
    xmin = float(xs.min())
    umax = math.acosh(750.0 / xmin) if xmin < 750.0 else 1.0
    h = min(0.04, 0.4 / max(1.0, abs(t)))
    n = int(umax / h) + 2
    u = np.arange(n + 1) * h
    integrand = np.exp(-np.outer(xs, np.cosh(u))) * np.cos(t * u)
    val = h * (integrand.sum(axis=1) - 0.5 * integrand[:, 0])
    return val


def _divisor_sigma(n: int, t: float) -> complex:
    """sigma_{-2it}(n) = sum over divisors d of n of d^(-2it)."""
    total = 0.0 + 0.0j
    for d in range(1, n + 1):
        if n % d == 0:
            total += d ** (-2j * t)
    return total


def eisenstein_fourier(x, y, t: float, modes: int | None = None):
    """E(z, 1/2 + it) via the Bessel expansion; x, y scalars or arrays.

    Valid for y bounded away from 0 (use points reduced to the fundamental
    domain).  The mode count is chosen so the dropped tail is below 1e-16
    relative to the K_{it} scale.
    """
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    x, y = np.atleast_1d(x).ravel(), np.atleast_1d(y).ravel()
    s = 0.5 + 1j * t
    phi = scattering(t).value
    out = y ** s + phi * y ** (1.0 - s)
    ymin = float(y.min())
    if modes is None:
        modes = int((math.pi * abs(t) / 2.0 + 40.0) / (2.0 * math.pi * ymin)) + 1
    xi1 = completed_zeta(1.0 + 2j * t)
    acc = np.zeros(len(y), dtype=complex)
    for n in range(1, modes + 1):
        a_n = n ** (1j * t) * _divisor_sigma(n, t)
        K = _besselk_it(t, 2.0 * math.pi * n * y)
        acc += a_n * K * np.cos(2.0 * math.pi * n * x)
    out = out + (4.0 * np.sqrt(y) / xi1) * acc
    return complex(out[0]) if scalar else out.reshape(shape)


def truncated_eisenstein(z, t: float, T: float, cutoff: int = 1000,
                         method: str = "fourier"):
    """Arthur truncation at height e^T, in classical coordinates.

    Reduces z to the fundamental domain; below height e^T the value is the
    full series, above it the constant term y^s + c y^(1-s) is subtracted.
    ``method`` picks the evaluation route ('fourier' or 'direct').
    """
    p = _as_point(z).reduce()
    s = 0.5 + 1j * t
    if method == "fourier":
        val = complex(eisenstein_fourier(p.x, p.y, t))
    elif method == "direct":
        val = eisenstein_value(p, t, cutoff=cutoff).value
    else:
        raise ValueError(f"unknown method {method!r}")
    if p.y > math.exp(T):
        val = val - (p.y ** s + scattering(t).value * p.y ** (1.0 - s))
    return val


# ---------------------------------------------------------------------------
# Maass-Selberg norm, quadrature oracle, growth scan
# ---------------------------------------------------------------------------

def maass_selberg_norm(t: float, T: float) -> float:
    """Closed form of the squared L2 norm of the truncated series.

    ||Lambda^T E(., 1/2+it)||^2 = 2T - (c'/c)(t) - Im(c(t) e^{-2itT}) / t
    with c the unimodular scattering factor.  The middle term is the real
    logarithmic derivative from :func:`scattering_log_deriv`.
    """
    if t == 0.0:
        raise UndefinedAtZeroError("norm undefined at t = 0")
    c = scattering(t).value
    ld = scattering_log_deriv(t)
    return 2.0 * T - ld - (c * cmath.exp(-2j * t * T)).imag / t


@dataclass(frozen=True)
class OracleResult:
    value: float
    error_estimate: float
    refinement_ok: bool
    coarse_value: float


def l2_norm_oracle(t: float, T: float, nx: int = 200, ny: int = 200,
                   refine_tol: float = 0.05) -> OracleResult:
    """Quadrature of the truncated norm over the fundamental domain.

    Midpoint rule in x and in log y, with the y range of each column
    starting exactly at the domain boundary sqrt(1 - x^2) and extending to
    max(10 e^T, 50).  A half-resolution pass supplies the a posteriori
    error estimate; disagreement beyond ``refine_tol`` clears the flag.
    """
    fine = _l2_quadrature(t, T, nx, ny)
    coarse = _l2_quadrature(t, T, max(nx // 2, 10), max(ny // 2, 10))
    err = abs(fine - coarse) / max(abs(fine), 1e-300)
    return OracleResult(value=fine, error_estimate=err,
                        refinement_ok=err <= refine_tol, coarse_value=coarse)


def _l2_quadrature(t: float, T: float, nx: int, ny: int) -> float:
    Y = math.exp(T)
    ymax = max(10.0 * Y, 50.0)
    s = 0.5 + 1j * t
    phi = scattering(t).value
    xs = (np.arange(nx) + 0.5) / nx - 0.5
    total = 0.0
    for xv in xs:
        ylo = math.sqrt(max(1.0 - xv * xv, 0.0))
        la, lb = math.log(ylo), math.log(ymax)
        step = (lb - la) / ny
        ysc = np.exp(la + (np.arange(ny) + 0.5) * step)
        vals = eisenstein_fourier(np.full(ny, xv), ysc, t)
        above = ysc > Y
        vals = np.where(above, vals - (ysc ** s + phi * ysc ** (1.0 - s)), vals)
        total += float(np.sum(np.abs(vals) ** 2 / ysc)) * step
    return total / nx


@dataclass(frozen=True)
class GrowthScan:
    rows: list = field(default_factory=list)   # (t, norm, ratio) triples
    sup_ratio: float = 0.0


def growth_scan(t_min: float, t_max: float, steps: int, T: float) -> GrowthScan:
    """Closed-form norms on a t grid with the ratio norm / (T log(2 + t))."""
    if not (1.0 <= t_min < t_max <= 200.0):
        raise ValueError("need 1 <= t_min < t_max <= 200")
    ts = np.linspace(t_min, t_max, steps)
    rows = []
    sup = 0.0
    for t in ts:
        norm = maass_selberg_norm(float(t), T)
        ratio = norm / (T * math.log(2.0 + t))
        rows.append((float(t), norm, ratio))
        sup = max(sup, ratio)
    return GrowthScan(rows=rows, sup_ratio=sup)
