"""Periodic coefficient cycles on the uniform grid {0, h, 2h, ...}.

A cycle holds the step size h and the n complex coefficients p_0..p_{n-1}
of the period-n coefficient function p(t) = p_k for t/h = k (mod n).
Grid times are handled as integer step indices throughout, so residues
mod n are exact and never suffer t/h rounding drift.

All types are immutable values and every operation is a pure function, so
cycles can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    EmptyCycleError,
    NonFiniteValueError,
    NonPositiveStepError,
    SingularCoefficientError,
)

# The mathematical exclusion is only p_k == -1/h exactly; factors below this
# floor are indistinguishable from it in double precision.
SINGULAR_FLOOR = 1e-300

# Factors this close to singular make the stability constants explode;
# reports carry a warning flag instead of rejecting the cycle.
NEAR_SINGULAR_FLOOR = 1e-8


def _require_finite_complex(value: complex, what: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteValueError(f"{what} must have finite real and imaginary parts")
    return z


def _require_step_size(h: float) -> float:
    h = float(h)
    if not (math.isfinite(h) and h > 0.0):
        raise NonPositiveStepError("step size h must be a positive finite real")
    return h


@dataclass(frozen=True)
class CoefficientCycle:
    """Validated period-n coefficient cycle; build via :func:`validate_cycle`.

    ``minimal`` is False when some proper divisor of n already reproduces
    the coefficient pattern; all constants remain valid in that case, the
    flag only feeds the report warning.
    """

    h: float
    coefficients: tuple[complex, ...]
    minimal: bool

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @cached_property
    def factors(self) -> tuple[complex, ...]:
        """Per-step recurrence factors 1 + h*p_k."""
        return tuple(1.0 + self.h * p for p in self.coefficients)

    @cached_property
    def factor_magnitudes(self) -> tuple[float, ...]:
        return tuple(abs(f) for f in self.factors)

    @cached_property
    def log_factor_magnitudes(self) -> tuple[float, ...]:
        return tuple(math.log(m) for m in self.factor_magnitudes)

    @property
    def near_singular(self) -> bool:
        return min(self.factor_magnitudes) < NEAR_SINGULAR_FLOOR


def validate_cycle(h: float, coefficients) -> CoefficientCycle:
    """Validate (h, p_0..p_{n-1}) and return the immutable cycle.

    Raises NonPositiveStepError, EmptyCycleError, NonFiniteValueError or
    SingularCoefficientError; anything that passes satisfies every cycle
    invariant.
    """
    h = _require_step_size(h)
    coeffs = tuple(
        _require_finite_complex(p, f"coefficient {k}") for k, p in enumerate(coefficients)
    )
    if not coeffs:
        raise EmptyCycleError("a cycle needs at least one coefficient")
    for k, p in enumerate(coeffs):
        mag = abs(1.0 + h * p)
        if mag < SINGULAR_FLOOR:
            raise SingularCoefficientError(k, mag)
    n = len(coeffs)
    minimal = _minimal_divisor(coeffs) == n
    return CoefficientCycle(h=h, coefficients=coeffs, minimal=minimal)


def _minimal_divisor(coeffs: tuple[complex, ...]) -> int:
    n = len(coeffs)
    for d in range(1, n):
        if n % d == 0 and all(coeffs[k] == coeffs[(k + d) % n] for k in range(n)):
            return d
    return n


def coefficient_at(cycle: CoefficientCycle, step: int) -> complex:
    """Coefficient p(t) at grid time t = step*h."""
    if step < 0:
        raise ValueError("grid times are nonnegative")
    return cycle.coefficients[step % cycle.n]


def minimal_period(cycle: CoefficientCycle) -> int:
    """Smallest divisor d of n such that the cycle is d-periodic."""
    return _minimal_divisor(cycle.coefficients)


def on_hilger_circle(p: complex, h: float, tol: float = 1e-9) -> bool:
    """Whether |1 + h*p| is within tol of 1 (unit-magnitude factor locus)."""
    h = _require_step_size(h)
    p = _require_finite_complex(p, "coefficient")
    return abs(abs(1.0 + h * p) - 1.0) <= tol
