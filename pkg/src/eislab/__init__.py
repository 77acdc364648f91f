"""Desk-scale numerical laboratory for unitary Eisenstein-series norms,
congruence lattice counting, optimal lifting, and rank-1 spherical analysis."""

from .special_functions import (
    ScatteringValue,
    complex_gamma,
    completed_zeta,
    riemann_zeta,
    scattering,
    scattering_log_deriv,
)
from .eisenstein import (
    EisensteinValue,
    UpperHalfPlanePoint,
    constant_term_fit,
    eisenstein_fourier,
    eisenstein_value,
    growth_scan,
    l2_norm_oracle,
    maass_selberg_norm,
    truncated_eisenstein,
)
from .lattice import (
    CongruenceLevel,
    CountRecord,
    IntegerMatrix,
    ball_count,
    ball_enumerate,
    drs_fit,
    gamma_q_count,
    sarnak_xue_scan,
    sl_count_mod,
)
from .lifting import CoverageRecord, ResidueClass, coverage, lifting_exponent_scan, minimal_lift
from .haar import (
    CartanCoordinate,
    EuclideanProfile,
    RadialProfile,
    TestFunctionSpec,
    abel_inverse,
    abel_transform,
    ball_conv_lower,
    ball_volume,
    haar_ball_volume,
    spherical_fn,
    test_function_build,
)

__version__ = "0.1.0"
