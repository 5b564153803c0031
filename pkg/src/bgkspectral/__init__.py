"""Spectral analysis of a one-dimensional BGK-type kinetic equation whose
collision frequency depends affinely on molecular speed.

The package builds the model from its conservation laws, evaluates the
Cauchy-type moment integrals and the 3x3 dispersion matrix/function,
verifies the spectral picture (continuous spectrum on (-alpha, alpha),
a fourth-order discrete point at infinity), assembles the general
solution from discrete and continuum eigenfunctions, and provides both
closed-form limits (constant frequency; frequency proportional to speed)
as user-facing features and internal oracles.
"""

from .errors import (
    DomainError,
    EvaluationError,
    IllConditionedContourError,
    WrongRegionError,
)
from .params import (
    GasParams,
    VelocityMap,
    kernel_q,
    kernel_q_c,
    make_params,
    mu_of,
    velocity_map,
    weight,
    weight_c,
)
from .quadrature import (
    QuadratureScheme,
    integrate_gauss,
    integrate_pv,
    integrate_weighted,
    make_scheme,
    pv_interval,
)
from .moments import (
    MomentSet,
    Region,
    asymptotic_moments,
    moments_at,
    moments_boundary,
    moments_pv,
)
from .dispersion import (
    DispersionEval,
    SokhotskyJump,
    SpectrumDescription,
    circle_contour,
    count_zeros,
    dispersion_eval,
    keyhole_contour,
    lambda_alpha,
    lambda_boundary,
    lambda_fn,
    lambda_matrix,
    lambda_pv,
    laurent_order_at_infinity,
    q_tilde,
    semicircle_contour,
    sokhotsky_jump,
)
from .spectrum import (
    EigenData,
    SpectralExpansion,
    apply_expansion,
    discrete_solution,
    discrete_solution_dx,
    eigen_data,
    eigenfunction_regular,
    normalization_check,
    residual_2_4,
)
from .limits import (
    FM_DECAY_RATE,
    FM_DECAY_RATE_QUOTED,
    FreeMolecularSolution,
    fm_general_solution,
    fm_kernel,
    fm_modes,
    fm_project_system,
    fm_residual,
    lambda_a0,
    lambda_a0_boundary,
    lambda_a0_pv,
    lambda_c,
    lambda_c_boundary,
    lambda_c_pv,
    lambda_c_stable,
)

__all__ = [
    "DomainError", "EvaluationError", "IllConditionedContourError",
    "WrongRegionError",
    "GasParams", "VelocityMap", "make_params", "velocity_map", "mu_of",
    "weight", "weight_c", "kernel_q", "kernel_q_c",
    "QuadratureScheme", "make_scheme", "integrate_weighted", "integrate_gauss",
    "integrate_pv", "pv_interval",
    "MomentSet", "Region", "moments_at", "moments_pv", "moments_boundary",
    "asymptotic_moments",
    "DispersionEval", "SpectrumDescription", "SokhotskyJump", "dispersion_eval",
    "lambda_matrix", "lambda_fn", "lambda_pv", "lambda_boundary", "lambda_alpha",
    "q_tilde", "sokhotsky_jump", "count_zeros", "laurent_order_at_infinity",
    "keyhole_contour", "semicircle_contour", "circle_contour",
    "EigenData", "SpectralExpansion", "eigen_data", "discrete_solution",
    "discrete_solution_dx", "eigenfunction_regular", "apply_expansion",
    "residual_2_4", "normalization_check",
    "FM_DECAY_RATE", "FM_DECAY_RATE_QUOTED", "FreeMolecularSolution",
    "fm_kernel", "fm_project_system", "fm_modes", "fm_general_solution",
    "fm_residual", "lambda_c", "lambda_c_pv", "lambda_c_boundary",
    "lambda_c_stable", "lambda_a0", "lambda_a0_pv", "lambda_a0_boundary",
]

__version__ = "0.1.0"
