"""Rank-1 harmonic analysis on SL(2,R) with the Frobenius-norm ball.

Normalizations, fixed once and used consistently everywhere:

* Haar measure in Cartan coordinates g = k1 a_r k2 is sinh(2r) dr with
  probability measure on each K factor, so vol(B_R) integrates sinh(2r)
  up to r_max = arccosh(R^2/2)/2.
* The split torus is a_r = diag(e^r, e^-r); the spectral coordinate nu
  normalizes the half-root to 1/2 (so ||rho|| = 1/2 and characters read
  chi_nu(a_r) = e^(2 nu r)).
* The transform on N uses dn = dx / (2 pi), which makes the spherical
  transform exactly the Fourier-Laplace transform of the Abel transform:
  integral of f(u) e^(2 nu u) du.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadratureConvergenceError",
    "SupportViolationError",
    "RoundTripError",
    "CalibrationError",
    "CartanCoordinate",
    "RadialProfile",
    "EuclideanProfile",
    "bump_profile",
    "TestFunctionSpec",
    "TestFunction",
    "ball_volume",
    "haar_ball_volume",
    "ball_conv_lower",
    "conv_overlap_quadrature",
    "spherical_fn",
    "spherical_transform",
    "abel_transform",
    "abel_inverse",
    "fourier_laplace",
    "test_function_build",
]

RHO_NORM = 0.5


class QuadratureConvergenceError(ArithmeticError):
    pass


class SupportViolationError(ArithmeticError):
    pass


class RoundTripError(ArithmeticError):
    pass


class CalibrationError(RuntimeError):
    pass


@lru_cache(maxsize=16)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


@dataclass(frozen=True)
class CartanCoordinate:
    """Radial coordinate r >= 0 of g = k1 diag(e^r, e^-r) k2."""

    r: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("Cartan radius must be nonnegative")

    @property
    def frobenius_norm(self) -> float:
        return math.sqrt(2.0 * math.cosh(2.0 * self.r))

    @classmethod
    def from_norm(cls, norm: float) -> "CartanCoordinate":
        if norm < math.sqrt(2.0):
            raise ValueError("SL2 Frobenius norms start at sqrt(2)")
        return cls(r=0.5 * math.acosh(norm * norm / 2.0))


def _rmax(R: float) -> float:
    return 0.5 * math.acosh(R * R / 2.0)


def ball_volume(R: float, quad_nodes: int = 0) -> float:
    """Haar volume of {||g|| <= R}; closed form, or Gauss quadrature of the
    radial density when ``quad_nodes`` > 0 (the deterministic oracle)."""
    if R <= math.sqrt(2.0):
        return 0.0
    rm = _rmax(R)
    if quad_nodes:
        nodes, wts = _gauss(quad_nodes)
        r = 0.5 * rm * (nodes + 1.0)
        return float(0.5 * rm * np.sum(wts * np.sinh(2.0 * r)))
    return (R * R - 2.0) / 4.0


def haar_ball_volume(R: float, samples: int = 100_000, seed: int = 0):
    """Monte Carlo ball volume via the radial density; returns (value, stderr)."""
    if R <= math.sqrt(2.0):
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    rm = _rmax(R)
    r = rng.random(samples) * rm
    w = rm * np.sinh(2.0 * r)
    return float(np.mean(w)), float(np.std(w) / math.sqrt(samples))


def _overlap_condition(r, theta, s: float, R: float):
    # || a_{-s} k(theta) a_r ||^2 = 2 [cos^2 th cosh 2(r-s) + sin^2 th cosh 2(r+s)]
    c2 = np.cos(theta) ** 2
    lhs = c2 * np.cosh(2.0 * (r - s)) + (1.0 - c2) * np.cosh(2.0 * (r + s))
    return lhs <= R * R / 2.0


def ball_conv_lower(g, R: float, samples: int = 200_000, seed: int = 0) -> float:
    """Monte Carlo estimate of vol(B_R intersect g B_R^{-1}).

    ``g`` is a CartanCoordinate or a Frobenius norm; inversion preserves
    the norm in SL2, so only the radial part of g matters.
    """
    s = g.r if isinstance(g, CartanCoordinate) else CartanCoordinate.from_norm(float(g)).r
    if R <= math.sqrt(2.0):
        return 0.0
    rng = np.random.default_rng(seed)
    rm = _rmax(R)
    u = rng.random(samples)
    r = 0.5 * np.arccosh(1.0 + u * (math.cosh(2.0 * rm) - 1.0))
    theta = rng.random(samples) * (2.0 * math.pi)
    hits = _overlap_condition(r, theta, s, R)
    return ball_volume(R) * float(np.mean(hits))


def conv_overlap_quadrature(g, R: float, nr: int = 2000, ntheta: int = 512) -> float:
    """Deterministic (r, theta) quadrature for the same overlap volume."""
    s = g.r if isinstance(g, CartanCoordinate) else CartanCoordinate.from_norm(float(g)).r
    if R <= math.sqrt(2.0):
        return 0.0
    rm = _rmax(R)
    r = (np.arange(nr) + 0.5) * rm / nr
    theta = (np.arange(ntheta) + 0.5) * (2.0 * math.pi / ntheta)
    frac = _overlap_condition(r[:, None], theta[None, :], s, R).mean(axis=1)
    return float(np.sum(np.sinh(2.0 * r) * frac) * rm / nr)


# ---------------------------------------------------------------------------
# spherical function and transforms
# ---------------------------------------------------------------------------

def spherical_fn(mu: complex, r: float, nodes: int = 256,
                 check_tol: float = 1e-8) -> complex:
    """eta_mu(a_r) by the K-integral, periodic trapezoid quadrature.

    Spectrally accurate for smooth integrands; the 2x-node refinement must
    agree to ``check_tol`` or QuadratureConvergenceError is raised.
    """
    mu = complex(mu)
    if abs(mu.real) > 2.0:
        raise ValueError("spectral parameter guard: |Re mu| <= 2")
    if not 0.0 <= r <= 20.0:
        raise ValueError("radial guard: 0 <= r <= 20")
    v1 = _spherical_quad(mu, r, nodes)
    v2 = _spherical_quad(mu, r, 2 * nodes)
    if abs(v1 - v2) > check_tol:
        raise QuadratureConvergenceError(
            f"{nodes} vs {2*nodes} node values differ by {abs(v1 - v2):.2e}")
    return v2


def _spherical_quad(mu: complex, r: float, n: int) -> complex:
    theta = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    a1sq = math.exp(2.0 * r) / (np.cos(theta) ** 2
                                + np.sin(theta) ** 2 * math.exp(4.0 * r))
    return complex(np.mean(a1sq ** (mu + 0.5)))


@dataclass(frozen=True)
class RadialProfile:
    """Samples of a bi-K-invariant radial function at r = k * step."""

    samples: tuple
    step: float
    support_b: float

    def __call__(self, r):
        xs = np.arange(len(self.samples)) * self.step
        return np.interp(r, xs, np.asarray(self.samples), right=0.0)


@dataclass(frozen=True)
class EuclideanProfile:
    """Even function on the torus Lie algebra, uniform symmetric grid.

    samples[k] sits at u = (k - (len-1)/2) * step; length must be odd so
    u = 0 is a node.
    """

    samples: tuple
    step: float
    support_b: float
    symmetric: bool = True

    def __post_init__(self):
        if len(self.samples) % 2 == 0:
            raise ValueError("need an odd number of samples")
        if self.symmetric:
            s = np.asarray(self.samples)
            if np.max(np.abs(s - s[::-1])) > 1e-9 * max(1.0, np.max(np.abs(s))):
                raise ValueError("profile flagged symmetric is not even")

    @property
    def grid(self) -> np.ndarray:
        half = (len(self.samples) - 1) // 2
        return (np.arange(len(self.samples)) - half) * self.step

    def __call__(self, u):
        return np.interp(u, self.grid, np.asarray(self.samples),
                         left=0.0, right=0.0)


def bump_profile(b: float, freq: float = 0.0, n: int = 801) -> EuclideanProfile:
    """Even cosine-modulated bump supported on [-b, b], sampled past b."""
    half = (n - 1) // 2
    step = 1.3 * b / half
    us = (np.arange(n) - half) * step
    vals = (np.exp(-1.0 / np.clip(1.0 - (us / b) ** 2, 1e-300, None))
            * (np.abs(us) < b) * np.cos(freq * us))
    return EuclideanProfile(samples=tuple(vals), step=step, support_b=b)


def fourier_laplace(profile: EuclideanProfile, nu) -> complex | np.ndarray:
    """FT in the fixed convention: integral of f(u) e^(2 nu u) du (trapezoid)."""
    us = profile.grid
    fs = np.asarray(profile.samples)
    nu_arr = np.atleast_1d(np.asarray(nu, dtype=complex))
    vals = np.array([np.trapezoid(fs * np.exp(2.0 * nn * us), us) for nn in nu_arr])
    return vals if np.ndim(nu) else complex(vals[0])


def abel_transform(h, b: float | None = None, out_step: float | None = None,
                   quad_nodes: int = 400, pad: float = 1.25,
                   support_tol: float = 1e-8) -> EuclideanProfile:
    """Abel transform S h(u) = delta^(1/2) integral over N, as an even profile.

    Computed in the smooth substitution cosh 2r = cosh 2u + v^2/2:
    S h(u) = (1/pi) * integral_0^inf h(r(v)) dv.  The output grid extends
    past b so the support condition supp(Sh) within [-b, b] can be checked;
    excess mass beyond b raises SupportViolationError.
    """
    if isinstance(h, RadialProfile):
        b = h.support_b if b is None else b
        fun = h
    else:
        if b is None:
            raise ValueError("callable input needs an explicit support bound b")
        fun = h
    if out_step is None:
        out_step = b / 200.0
    half = int(math.ceil(pad * b / out_step))
    us = (np.arange(2 * half + 1) - half) * out_step
    nodes, wts = _gauss(quad_nodes)
    out = np.zeros(len(us))
    cosh2b = math.cosh(2.0 * b)
    for i, uu in enumerate(us):
        gap = cosh2b - math.cosh(2.0 * uu)
        if gap <= 0.0:
            continue
        vmax = math.sqrt(2.0 * gap)
        v = 0.5 * vmax * (nodes + 1.0)
        w = 0.5 * vmax * wts
        r = 0.5 * np.arccosh(math.cosh(2.0 * uu) + v * v / 2.0)
        out[i] = float(np.sum(w * fun(r))) / math.pi
    beyond = np.abs(us) > b + 1e-12
    if np.any(beyond):
        excess = float(np.max(np.abs(out[beyond])))
        if excess > support_tol:
            raise SupportViolationError(f"mass {excess:.2e} beyond support bound")
    return EuclideanProfile(samples=tuple(out), step=out_step, support_b=b)


def spherical_transform(h, b: float, nu: complex, quad_nodes: int = 800) -> complex:
    """h~(nu) = integral h(r) eta_nu(a_r) sinh(2r) dr over [0, b]."""
    nodes, wts = _gauss(quad_nodes)
    r = 0.5 * b * (nodes + 1.0)
    w = 0.5 * b * wts
    eta = np.array([_spherical_quad(complex(nu), float(rr), 512) for rr in r])
    return complex(np.sum(w * np.asarray(h(r)) * eta * np.sinh(2.0 * r)))


def abel_inverse(f: EuclideanProfile, r_step: float | None = None,
                 quad_nodes: int = 400, check_roundtrip: bool = False,
                 roundtrip_tol: float = 1e-4) -> RadialProfile:
    """Inverse Abel transform in derivative-then-smooth-integral form.

    H(r) = -2 integral_0^inf Phi'(cosh 2r + s^2/2) ds with
    Phi'(W) = f'(u) / (2 sinh 2u) at u = arccosh(W)/2; the u -> 0 limit is
    f''(0)/4.  The derivative f' comes from FFT spectral differentiation on
    the padded grid (f is compactly supported inside it).
    """
    us = f.grid
    fs = np.asarray(f.samples, dtype=float)
    n = len(us)
    du = f.step
    k = np.fft.fftfreq(n, d=du) * 2.0 * math.pi
    fhat = np.fft.fft(np.fft.ifftshift(fs))
    df = np.real(np.fft.fftshift(np.fft.ifft(1j * k * fhat)))
    pos = us >= 0.0
    up = us[pos]
    with np.errstate(divide="ignore", invalid="ignore"):
        phip = df[pos] / (2.0 * np.sinh(2.0 * up))
    i0 = np.argmin(np.abs(us))
    f2 = (fs[i0 + 1] - 2.0 * fs[i0] + fs[i0 - 1]) / du ** 2
    phip[up < 1e-12] = f2 / 4.0

    def phi_prime(W):
        uu = 0.5 * np.arccosh(np.clip(W, 1.0, None))
        return np.interp(uu, up, phip, right=0.0)

    b = f.support_b
    if r_step is None:
        r_step = f.step
    m = int(math.ceil(b / r_step)) + 1
    rg = np.arange(m) * r_step
    nodes, wts = _gauss(quad_nodes)
    H = np.zeros(m)
    cosh2b = math.cosh(2.0 * b)
    for i, r in enumerate(rg):
        gap = cosh2b - math.cosh(2.0 * r)
        if gap <= 0.0:
            continue
        smax = math.sqrt(2.0 * gap)
        sv = 0.5 * smax * (nodes + 1.0)
        w = 0.5 * smax * wts
        H[i] = -2.0 * float(np.sum(w * phi_prime(math.cosh(2.0 * r) + sv ** 2 / 2.0)))
    result = RadialProfile(samples=tuple(H), step=r_step, support_b=b)
    if check_roundtrip:
        forward = abel_transform(result, b=b, out_step=f.step)
        err = float(np.max(np.abs(np.asarray(forward(us)) - fs)))
        if err > roundtrip_tol:
            raise RoundTripError(f"round trip sup error {err:.2e} > {roundtrip_tol}")
    return result


# ---------------------------------------------------------------------------
# localized test functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TestFunctionSpec:
    """Parameters of the localized spectral window.

    (__test__ guards keep pytest from collecting these names.)

    delta: initial support radius of the base bump (halved during
    calibration if needed); mu0: purely imaginary center; C0: localization
    radius, canonically 2 ||rho|| + 1 = 2.
    """

    delta: float = 0.5
    mu0: complex = 0.0j
    C0: float = 2.0 * RHO_NORM + 1.0

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if abs(complex(self.mu0).real) > 1e-12:
            raise ValueError("mu0 must be purely imaginary")


TestFunctionSpec.__test__ = False


def _bump_fhat(nu_arr: np.ndarray, delta: float, nq: int = 200) -> np.ndarray:
    """FT of the L1-normalized bump exp(-1/(1-(2u/delta)^2)) on [-d/2, d/2]."""
    nodes, wts = _gauss(nq)
    u = 0.5 * delta * nodes
    w = 0.5 * delta * wts
    prof = np.exp(-1.0 / np.clip(1.0 - (2.0 * u / delta) ** 2, 1e-300, None))
    Z = float(np.sum(w * prof))
    return np.array([np.sum(w * prof * np.exp(2.0 * nn * u)) for nn in nu_arr]) / Z


class TestFunction:
    """Evaluator of the spectral window h^ built from a calibrated bump.

    h^(mu) = f^_{mu0}(mu) * conj(f^_{mu0}(-conj(mu))) with
    f^_{mu0}(mu) = f0^(mu - mu0) + f0^(mu + mu0) and f0 = bump * bump^*.
    """

    __test__ = False

    def __init__(self, spec: TestFunctionSpec, delta: float):
        self.spec = spec
        self.delta = delta
        self.mu0 = complex(spec.mu0)

    def fhat_mu0(self, nu) -> np.ndarray:
        nu_arr = np.atleast_1d(np.asarray(nu, dtype=complex))
        f0 = _bump_fhat(nu_arr - self.mu0, self.delta) ** 2
        f0 = f0 + _bump_fhat(nu_arr + self.mu0, self.delta) ** 2
        return f0

    def __call__(self, nu):
        nu_arr = np.atleast_1d(np.asarray(nu, dtype=complex))
        left = self.fhat_mu0(nu_arr)
        right = np.conj(self.fhat_mu0(-np.conj(nu_arr)))
        vals = left * right
        return vals if np.ndim(nu) else complex(vals[0])

    def localization_min(self, grid_points: int = 100) -> float:
        """min |h^| over the C0-ball around mu0 (square grid cut to the disc)."""
        side = int(math.ceil(math.sqrt(grid_points)))
        C0 = self.spec.C0
        vals = []
        for xr in np.linspace(-C0, C0, side):
            for yi in np.linspace(-C0, C0, side):
                if xr * xr + yi * yi > C0 * C0 + 1e-12:
                    continue
                vals.append(abs(self(self.mu0 + xr + 1j * yi)))
        return min(vals)

    def axis_min(self, half_range: float = 30.0, grid_points: int = 200) -> float:
        axis = 1j * np.linspace(-half_range, half_range, grid_points)
        return float(np.min(np.real(self(axis))))

    def paley_wiener_fit(self, ray_start: float = 5.0, ray_end: float = 50.0,
                         points: int = 40) -> float:
        """Fitted decay order N along the imaginary ray from mu0."""
        xs = np.linspace(ray_start, ray_end, points)
        vals = np.abs(self(self.mu0 + 1j * xs))
        vals = np.clip(vals, 1e-300, None)
        slope = np.polyfit(np.log1p(xs), np.log(vals), 1)[0]
        return float(-slope)

    def exponential_type_fit(self, reach: float | None = None,
                             points: int = 21) -> float:
        """Fitted growth rate b in the real direction (reported, not asserted)."""
        reach = self.spec.C0 if reach is None else reach
        xs = np.linspace(0.0, reach, points)
        vals = np.abs(self(self.mu0 + xs))
        return float(np.polyfit(xs, np.log(np.clip(vals, 1e-300, None)), 1)[0])


def test_function_build(spec: TestFunctionSpec, delta_min: float = 1e-3,
                        localization_floor: float = 0.1) -> TestFunction:
    """Build the window, halving delta until the localization bound holds.

    Property checked during calibration: |h^| >= 1/10 on the C0-ball around
    mu0 (100-point grid).  CalibrationError if no delta >= delta_min works.
    """
    delta = spec.delta
    while delta >= delta_min:
        tf = TestFunction(spec, delta)
        if tf.localization_min() >= localization_floor:
            return tf
        delta *= 0.5
    raise CalibrationError(
        f"no delta >= {delta_min} meets the localization bound for mu0 = {spec.mu0}")


test_function_build.__test__ = False
