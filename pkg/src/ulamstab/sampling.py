"""Seeded random generators for cycles and forcings used by suites and tests."""

from __future__ import annotations

import math

import numpy as np

from .cycle import CoefficientCycle, validate_cycle
from .simulate import random_disk

STEP_CHOICES = (0.5, 1.0, 2.0)


def cycle_from_factors(h: float, factors) -> CoefficientCycle:
    """Cycle whose recurrence factors 1 + h*p_k are the given values."""
    coeffs = [(f - 1.0) / h for f in np.asarray(factors, dtype=complex)]
    return validate_cycle(h, coeffs)


def random_cycle(
    rng: np.random.Generator,
    n: int,
    h: float,
    log_rho: float,
    spread: float = 0.6,
) -> CoefficientCycle:
    """Random cycle with |e_p(nh)| = exp(log_rho) and random factor phases.

    Per-factor log magnitudes are drawn within +-spread and shifted to hit
    the target, so no factor comes near the singular value.
    """
    logs = rng.uniform(-spread, spread, n)
    logs += (log_rho - logs.sum()) / n
    mags = np.exp(logs)
    phases = rng.uniform(0.0, 2.0 * np.pi, n)
    return cycle_from_factors(h, mags * np.exp(1j * phases))


def _pick(rng, n, h):
    if n is None:
        n = int(rng.integers(1, 6))
    if h is None:
        h = float(STEP_CHOICES[rng.integers(0, len(STEP_CHOICES))])
    return n, h


def random_expanding_cycle(
    rng: np.random.Generator,
    n: int | None = None,
    h: float | None = None,
    rho_range: tuple[float, float] = (1.05, 4.0),
) -> CoefficientCycle:
    n, h = _pick(rng, n, h)
    log_rho = rng.uniform(math.log(rho_range[0]), math.log(rho_range[1]))
    return random_cycle(rng, n, h, log_rho)


def random_contracting_cycle(
    rng: np.random.Generator,
    n: int | None = None,
    h: float | None = None,
    rho_range: tuple[float, float] = (0.2, 0.9),
) -> CoefficientCycle:
    n, h = _pick(rng, n, h)
    log_rho = rng.uniform(math.log(rho_range[0]), math.log(rho_range[1]))
    return random_cycle(rng, n, h, log_rho)


def random_boundary_cycle(
    rng: np.random.Generator,
    n: int | None = None,
    h: float | None = None,
    all_unit_factors: bool = False,
) -> CoefficientCycle:
    """Cycle with |e_p(nh)| = 1; optionally every factor on the unit circle."""
    n, h = _pick(rng, n, h)
    spread = 0.0 if all_unit_factors else 0.6
    return random_cycle(rng, n, h, 0.0, spread=spread)


def equal_magnitude_cycle(
    rng: np.random.Generator, n: int, h: float, rho: float
) -> CoefficientCycle:
    """Cycle whose factors all share magnitude rho**(1/n), phases random."""
    mag = rho ** (1.0 / n)
    phases = rng.uniform(0.0, 2.0 * np.pi, n)
    return cycle_from_factors(h, mag * np.exp(1j * phases))


__all__ = [
    "cycle_from_factors",
    "random_cycle",
    "random_expanding_cycle",
    "random_contracting_cycle",
    "random_boundary_cycle",
    "equal_magnitude_cycle",
    "random_disk",
]
