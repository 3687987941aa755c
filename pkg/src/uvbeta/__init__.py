"""Solutions u_beta, v_beta of a pair of Stieltjes-type integral equations, their
continuation, the associated 2x2 Riemann-Hilbert parametrix, and the special
function G_beta together with its Mittag-Leffler application."""

__version__ = "0.1.0"

from .kernel import (BETA_MAX, BETA_MIN, DomainError, KernelParams, beta_critical,
                     contraction_bound, eta_L, kernel_complex, kernel_real)
from .solver import (PreconditionError, QuadratureError, SolutionGrid, SolverError,
                     build_quadrature, picard_solve, solve_ray)
from .continuation import SurfacePoint, UVFunctions, eval_surface
from .asymptotics import coeff_c, coeff_d, eval_expansion, stokes_lines
from .gbeta import g_beta, g_beta_rational, g_beta_small_z
from .special import incomplete_gamma_upper
from .mittag import ml_series, ml_via_gbeta
from .rhp import Parametrix, assemble_L, boundary_values, verify_rhp

__all__ = [
    "BETA_MAX", "BETA_MIN", "DomainError", "KernelParams", "beta_critical", "contraction_bound",
    "eta_L", "kernel_complex", "kernel_real", "PreconditionError", "QuadratureError",
    "SolutionGrid", "SolverError", "build_quadrature", "picard_solve", "solve_ray",
    "SurfacePoint", "UVFunctions", "eval_surface", "coeff_c", "coeff_d", "eval_expansion",
    "stokes_lines", "g_beta", "g_beta_rational", "g_beta_small_z", "incomplete_gamma_upper",
    "ml_series", "ml_via_gbeta", "Parametrix", "assemble_L", "boundary_values", "verify_rhp",
]
