"""Numerical laboratory for the extended modified KdV equation.

Forward scattering, stationary-phase geometry, long-time asymptotic formulas, the
fourth-order Painleve II Riemann-Hilbert problem, and a pseudospectral reference solver.
"""

from .asymptotics import AsymptoticEnvelope, beta_X, chi, decay_region_bound, delta, leading_order, nu
from .errors import EmkdvError
from .model import InitialProfile, ModelParams
from .painleve import PainleveSolution, RHContour, ode_residual, painleve_asymptote, solve_profile, solve_rh_painleve, u_p
from .pde import FieldSnapshot, SpectralGrid, conserved_quantities, evolve, linear_symbol, nonlinear_term
from .phase import StationaryPointSet, classify_region, phase, signature_table, stationary_points
from .scattering import ReflectionData, compute_scattering, count_zeros_of_a, integrate_jost

__all__ = [
    "AsymptoticEnvelope", "EmkdvError", "FieldSnapshot", "InitialProfile", "ModelParams",
    "PainleveSolution", "RHContour", "ReflectionData", "SpectralGrid", "StationaryPointSet",
    "beta_X", "chi", "classify_region", "compute_scattering", "conserved_quantities",
    "count_zeros_of_a", "decay_region_bound", "delta", "evolve", "integrate_jost",
    "leading_order", "linear_symbol", "nonlinear_term", "nu", "ode_residual", "painleve_asymptote",
    "phase", "signature_table", "solve_profile", "solve_rh_painleve", "stationary_points", "u_p",
]
