"""Ulam stability toolkit for first-order linear h-difference equations
with periodic complex coefficients: classification, exact best constants,
simulation, worst-case witnesses, and ultimate-boundedness certificates.

All public types are immutable values and all operations are pure
functions, so everything can be shared freely across threads.
"""

from .boundedness import (
    AlphaRow,
    BoundednessCertificate,
    BoundednessVerification,
    bounded_perturbation,
    certificate,
    settle_time,
    ultimate_bound,
    verify_boundedness,
)
from .cycle import (
    CoefficientCycle,
    coefficient_at,
    minimal_period,
    on_hilger_circle,
    validate_cycle,
)
from .exponential import Multiplier, ep, ep_profile, ep_values, log_ep, multiplier
from .simulate import (
    GridFunction,
    LimitEstimate,
    PerturbationSpec,
    Trajectory,
    forcing_limit_sum,
    limit_estimate,
    limit_solution,
    random_disk,
    residual,
    solve_forced,
    solve_forced_many,
    solve_homogeneous,
    solve_perturbed,
)
from .stability import (
    StabilityClass,
    StabilityReport,
    classify,
    expanding_minimum_constant,
    initial_radius,
    partial_sums,
    two_cycle_constant,
    ulam_constant,
)
from .witness import (
    WitnessReport,
    brute_force_sup,
    instability_witness,
    sharpness_witness,
    suffix_tracking_errors,
    tracking_error_profile,
)
from . import errors, sampling, verify

__version__ = "0.1.0"

__all__ = [
    "AlphaRow",
    "BoundednessCertificate",
    "BoundednessVerification",
    "CoefficientCycle",
    "GridFunction",
    "LimitEstimate",
    "Multiplier",
    "PerturbationSpec",
    "StabilityClass",
    "StabilityReport",
    "Trajectory",
    "WitnessReport",
    "bounded_perturbation",
    "brute_force_sup",
    "certificate",
    "classify",
    "coefficient_at",
    "ep",
    "ep_profile",
    "ep_values",
    "errors",
    "expanding_minimum_constant",
    "forcing_limit_sum",
    "initial_radius",
    "instability_witness",
    "limit_estimate",
    "limit_solution",
    "log_ep",
    "minimal_period",
    "multiplier",
    "on_hilger_circle",
    "partial_sums",
    "random_disk",
    "residual",
    "sampling",
    "settle_time",
    "sharpness_witness",
    "solve_forced",
    "solve_forced_many",
    "solve_homogeneous",
    "solve_perturbed",
    "suffix_tracking_errors",
    "tracking_error_profile",
    "two_cycle_constant",
    "ulam_constant",
    "ultimate_bound",
    "validate_cycle",
    "verify",
    "verify_boundedness",
]
