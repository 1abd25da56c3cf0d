"""Forward simulation on the grid and the limiting tracked solution.

The production path is always the stepping recurrence

    phi(t + h) = (1 + h*p(t)) * phi(t) + h * q(t),

which is O(steps) and numerically stable; agreement with the closed-form
variation-of-constants representation is enforced by tests rather than by
evaluating the sum in production.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cycle import CoefficientCycle, _require_finite_complex
from .errors import (
    InsufficientSamplesError,
    LengthMismatchError,
    NonFiniteValueError,
    NotExpandingError,
    StepSizeMismatchError,
    TooShortError,
    TrajectoryOverflowError,
)
from .exponential import ep_profile, multiplier
from .stability import (
    DEFAULT_CLASSIFICATION_TOL,
    StabilityClass,
    classify,
    expanding_minimum_constant,
    partial_sums,
)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples on the uniform grid; entry j is the value at j*h."""

    h: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=complex))
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("grid functions are nonempty 1-d sample arrays")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "h", float(self.h))
        if not self.h > 0.0:
            raise ValueError("grid functions need a positive step size")

    def __len__(self) -> int:
        return len(self.values)

    def times(self) -> np.ndarray:
        return np.arange(len(self.values)) * self.h

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)


Trajectory = GridFunction


def _require_same_h(cycle: CoefficientCycle, gf: GridFunction):
    if gf.h != cycle.h:
        raise StepSizeMismatchError(
            f"grid function has h = {gf.h!r}, cycle has h = {cycle.h!r}"
        )


def _tiled_factors(cycle: CoefficientCycle, count: int) -> np.ndarray:
    reps = -(-count // cycle.n) if count else 1
    return np.tile(np.asarray(cycle.factors, dtype=complex), reps)[:count]


@dataclass(frozen=True)
class PerturbationSpec:
    """Rule producing a forcing sequence q with |q| <= epsilon everywhere.

    Kinds: ``zero``, ``const`` (q = epsilon), ``phase`` (q aligned with the
    phase of e_p(t + h), the worst case for expanding cycles), ``random``
    (seeded uniform draws from the epsilon disk) and ``explicit``.
    """

    epsilon: float
    kind: str
    seed: int = 0
    explicit: GridFunction | None = None

    _KINDS = ("zero", "const", "phase", "random", "explicit")

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown perturbation kind {self.kind!r}")
        if (self.kind == "explicit") != (self.explicit is not None):
            raise ValueError("explicit samples go with kind='explicit' only")
        if self.explicit is not None:
            mags = self.explicit.magnitudes()
            if np.max(mags) > self.epsilon * (1.0 + 1e-12):
                raise ValueError(
                    f"explicit forcing exceeds epsilon: max |q| = {np.max(mags)!r}"
                )

    @classmethod
    def zero(cls, epsilon: float) -> "PerturbationSpec":
        return cls(epsilon, "zero")

    @classmethod
    def constant(cls, epsilon: float) -> "PerturbationSpec":
        return cls(epsilon, "const")

    @classmethod
    def phase_aligned(cls, epsilon: float) -> "PerturbationSpec":
        return cls(epsilon, "phase")

    @classmethod
    def random_bounded(cls, epsilon: float, seed: int) -> "PerturbationSpec":
        return cls(epsilon, "random", seed=seed)

    @classmethod
    def from_values(cls, epsilon: float, values: GridFunction) -> "PerturbationSpec":
        return cls(epsilon, "explicit", explicit=values)

    def realize(self, cycle: CoefficientCycle, steps: int) -> GridFunction:
        if steps < 1:
            raise ValueError("steps must be positive")
        if self.kind == "zero":
            vals = np.zeros(steps, dtype=complex)
        elif self.kind == "const":
            vals = np.full(steps, self.epsilon, dtype=complex)
        elif self.kind == "phase":
            _, phasors = ep_profile(cycle, steps)
            vals = self.epsilon * phasors[1:]
        elif self.kind == "random":
            rng = np.random.default_rng(self.seed)
            vals = random_disk(rng, steps, self.epsilon)
        else:
            _require_same_h(cycle, self.explicit)
            if len(self.explicit) < steps:
                raise LengthMismatchError(
                    f"explicit forcing has {len(self.explicit)} samples, need {steps}"
                )
            vals = self.explicit.values[:steps].copy()
        return GridFunction(cycle.h, vals)


def random_disk(rng: np.random.Generator, size: int, radius: float) -> np.ndarray:
    """Uniform complex samples from the closed disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size))
    theta = rng.uniform(0.0, 2.0 * np.pi, size)
    return r * np.exp(1j * theta)


def solve_homogeneous(cycle: CoefficientCycle, x0: complex, steps: int) -> Trajectory:
    """x(j*h) = x0 * e_p(j*h) for j = 0..steps."""
    if steps < 1:
        raise ValueError("steps must be positive")
    x0 = _require_finite_complex(x0, "initial value")
    if x0 == 0:
        return Trajectory(cycle.h, np.zeros(steps + 1, dtype=complex))
    vals = np.empty(steps + 1, dtype=complex)
    vals[0] = 1.0
    np.cumprod(_tiled_factors(cycle, steps), out=vals[1:])
    vals *= x0
    bad = ~np.isfinite(vals.real) | ~np.isfinite(vals.imag)
    if bad.any():
        raise TrajectoryOverflowError(int(np.argmax(bad)))
    return Trajectory(cycle.h, vals)


def solve_forced(
    cycle: CoefficientCycle,
    phi0: complex,
    q: GridFunction,
    steps: int | None = None,
) -> Trajectory:
    """Stepping solution of the forced equation from phi(0) = phi0."""
    _require_same_h(cycle, q)
    if steps is None:
        steps = len(q)
    if steps < 1:
        raise ValueError("steps must be positive")
    if len(q) < steps:
        raise LengthMismatchError(f"forcing has {len(q)} samples, need {steps}")
    phi0 = _require_finite_complex(phi0, "initial value")
    factors = cycle.factors
    n = cycle.n
    h = cycle.h
    qv = q.values
    out = np.empty(steps + 1, dtype=complex)
    cur = complex(phi0)
    out[0] = cur
    for j in range(steps):
        cur = factors[j % n] * cur + h * qv[j]
        out[j + 1] = cur
    return Trajectory(h, out)


def solve_forced_many(
    cycle: CoefficientCycle, phi0s: np.ndarray, q_matrix: np.ndarray
) -> np.ndarray:
    """Batched stepping over trials: phi0s (m,), q_matrix (m, steps) -> (m, steps+1)."""
    phi0s = np.asarray(phi0s, dtype=complex)
    q_matrix = np.asarray(q_matrix, dtype=complex)
    m, steps = q_matrix.shape
    factors = cycle.factors
    n = cycle.n
    h = cycle.h
    out = np.empty((m, steps + 1), dtype=complex)
    out[:, 0] = phi0s
    for j in range(steps):
        out[:, j + 1] = factors[j % n] * out[:, j] + h * q_matrix[:, j]
    return out


def solve_perturbed(
    cycle: CoefficientCycle,
    phi0: complex,
    f,
    steps: int,
) -> Trajectory:
    """Stepping solution of phi(t+h) = (1 + h*p(t))*phi(t) + h*f(t, phi(t)).

    ``f`` receives the physical time t = j*h and the current value; any
    exception it raises propagates unchanged. Non-finite outputs abort.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    phi0 = _require_finite_complex(phi0, "initial value")
    factors = cycle.factors
    n = cycle.n
    h = cycle.h
    out = np.empty(steps + 1, dtype=complex)
    cur = complex(phi0)
    out[0] = cur
    for j in range(steps):
        fv = complex(f(j * h, cur))
        if not (math.isfinite(fv.real) and math.isfinite(fv.imag)):
            raise NonFiniteValueError(
                f"perturbation produced a non-finite value at step {j}"
            )
        cur = factors[j % n] * cur + h * fv
        out[j + 1] = cur
    return Trajectory(h, out)


def residual(cycle: CoefficientCycle, phi: Trajectory) -> GridFunction:
    """Forcing recovered from a trajectory: q(jh) = difference quotient minus p*phi."""
    _require_same_h(cycle, phi)
    if len(phi) < 2:
        raise TooShortError("need at least two samples to form a residual")
    v = phi.values
    count = len(v) - 1
    reps = -(-count // cycle.n)
    p = np.tile(np.asarray(cycle.coefficients, dtype=complex), reps)[:count]
    q = (v[1:] - v[:-1]) / cycle.h - p * v[:-1]
    return GridFunction(cycle.h, q)


def forcing_limit_sum(
    cycle: CoefficientCycle, q: GridFunction, count: int | None = None
) -> complex:
    """Truncated series sum_k h*q(hk)/e_p(hk + h) over the first ``count`` samples.

    Terms are formed from log magnitudes and unit phasors so the partial
    e_p products can never overflow; accumulation runs smallest-first.
    """
    _require_same_h(cycle, q)
    if count is None:
        count = len(q)
    if count > len(q):
        raise LengthMismatchError(f"forcing has {len(q)} samples, need {count}")
    log_mags, phasors = ep_profile(cycle, count)
    qv = q.values[:count]
    terms = cycle.h * qv * np.exp(-log_mags[1:]) * np.conj(phasors[1:])
    return complex(terms[::-1].sum())


@dataclass(frozen=True)
class LimitEstimate:
    """Certified estimate of lim phi(t)/e_p(t) for an expanding cycle."""

    value: complex
    remainder_bound: float
    periods_used: int
    epsilon_estimate: float


def limit_estimate(
    cycle: CoefficientCycle,
    phi0: complex,
    q: GridFunction,
    tol: float | None = None,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> LimitEstimate:
    """Limit of the tracked solution with a guaranteed truncation remainder.

    The forcing bound is estimated as max |q| over the provided samples and
    never extrapolated: truncating after m full periods leaves a remainder
    of at most h*eps*max(S_k)*rho/(rho-1)*rho**(-m), and m is chosen from
    tol. Raises InsufficientSamplesError when q is shorter than m periods.
    """
    _require_same_h(cycle, q)
    phi0 = _require_finite_complex(phi0, "initial value")
    if classify(cycle, classification_tol) is not StabilityClass.EXPANDING:
        raise NotExpandingError("the limiting tracked solution needs rho > 1")
    eps = float(np.max(np.abs(q.values)))
    if eps == 0.0:
        return LimitEstimate(complex(phi0), 0.0, 0, 0.0)
    rho = multiplier(cycle).rho
    lead = cycle.h * eps * max(partial_sums(cycle)) * rho / (rho - 1.0)
    if tol is None:
        tol = 1e-9 * expanding_minimum_constant(cycle, classification_tol) * eps
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if lead <= tol:
        m = 1
    else:
        m = max(1, math.ceil(math.log(lead / tol) / math.log(rho)))
    needed = m * cycle.n
    if len(q) < needed:
        raise InsufficientSamplesError(needed, len(q))
    value = complex(phi0) + forcing_limit_sum(cycle, q, needed)
    return LimitEstimate(value, lead * rho ** (-m), m, eps)


def limit_solution(
    cycle: CoefficientCycle,
    phi0: complex,
    q: GridFunction,
    tol: float | None = None,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> complex:
    """Value of lim phi(t)/e_p(t); see :func:`limit_estimate` for the bound."""
    return limit_estimate(cycle, phi0, q, tol, classification_tol).value
