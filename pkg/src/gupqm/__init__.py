"""Quantum mechanics of a 1D point interaction under a minimal-length
(GUP-type) correction: closed-form propagators, Green's functions and bound
states from both the stationary-equation and propagator constructions, each
cross-validated against independent numerical oracles, plus the machine
report of their first-order inequivalence."""

from .params import Config, PhysParams, PropagatorQuery, Quadratures, TalbotSpec
from .delta_schrodinger import (
    BcResidual,
    BoundState,
    PiecewiseExponential,
    bc_residual_schrodinger,
    bound_state_schrodinger,
)
from .delta_pathintegral import (
    DeltaGreenQuery,
    PoleResult,
    bc_residual_pathintegral,
    bound_state_from_pole,
    bound_state_pathintegral_closed,
    delta_green_closed,
    delta_green_expanded,
    delta_propagator_time,
)
from .gup_free import (
    dispersion,
    euclidean_oracle,
    free_euclidean,
    free_green,
    free_kernel,
)
from .oracle_spectral import GridSpec, SpectralResult, alpha_slope, delta_limit_energy, ground_state
from .report import ComparisonReport, SuiteOutcome, compare_bound_states, emit, run_suite, verify_laplace_table

__all__ = [
    "BcResidual", "BoundState", "ComparisonReport", "Config", "DeltaGreenQuery",
    "GridSpec", "PhysParams", "PiecewiseExponential", "PoleResult",
    "PropagatorQuery", "Quadratures", "SpectralResult", "SuiteOutcome",
    "TalbotSpec", "alpha_slope", "bc_residual_pathintegral",
    "bc_residual_schrodinger", "bound_state_from_pole",
    "bound_state_pathintegral_closed", "bound_state_schrodinger",
    "compare_bound_states", "delta_green_closed", "delta_green_expanded",
    "delta_limit_energy", "delta_propagator_time", "dispersion", "emit",
    "euclidean_oracle", "free_euclidean", "free_green", "free_kernel",
    "ground_state", "run_suite", "verify_laplace_table",
]

__version__ = "0.1.0"
