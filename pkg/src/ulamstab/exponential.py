"""Discrete exponential e_p of a periodic cycle.

e_p(t) is the running product of the factors 1 + h*p(jh) for j < t/h, with
e_p(0) = 1. Periodicity collapses the evaluation to

    e_p((m*n + k)*h) = e_p(n*h)**m * e_p(k*h),

so a single period of partial products plus the per-period value supports
O(1) evaluation at any grid time. Magnitudes are carried in the log domain
so asymptotics far past the double overflow horizon stay available through
:func:`log_ep`.

The phase of e_p(n*h)**m is reduced mod 2*pi in exact rational arithmetic
before conversion to float, which keeps consecutive evaluations consistent
with the one-step recurrence even for very large m.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cycle import CoefficientCycle
from .errors import ExponentialRangeError

TWO_PI = 2.0 * math.pi
_LOG_MAX = math.log(sys.float_info.max)  # ~709.78
_LOG_MIN = math.log(sys.float_info.min)  # ~-708.40


@dataclass(frozen=True)
class Multiplier:
    """Per-period growth data of a cycle.

    rho is |e_p(n*h)|, the per-period magnitude factor; rho == 1 marks the
    non-stable boundary. partial_values[k] = e_p(k*h) for k = 0..n-1, with
    partial_values[0] == 1 exactly.
    """

    rho: float
    log_rho: float
    partial_log_mags: tuple[float, ...]
    partial_values: tuple[complex, ...]
    period_value: complex
    partial_phases: tuple[float, ...]
    period_phase: float


@lru_cache(maxsize=512)
def multiplier(cycle: CoefficientCycle) -> Multiplier:
    """Precompute one period of e_p data; cached per cycle."""
    values = [1.0 + 0.0j]
    log_mags = [0.0]
    phases = [0.0]
    acc = 1.0 + 0.0j
    lm = 0.0
    ph = 0.0
    for f in cycle.factors:
        acc = acc * f
        lm += math.log(abs(f))
        ph += cmath.phase(f)
        values.append(acc)
        log_mags.append(lm)
        phases.append(ph)
    rho = 1.0
    for mag in cycle.factor_magnitudes:
        rho *= mag
    n = cycle.n
    return Multiplier(
        rho=rho,
        log_rho=log_mags[n],
        partial_log_mags=tuple(log_mags[:n]),
        partial_values=tuple(values[:n]),
        period_value=values[n],
        partial_phases=tuple(phases[:n]),
        period_phase=phases[n],
    )


def _check_step(step: int) -> int:
    step = int(step)
    if step < 0:
        raise ValueError("grid times are nonnegative")
    return step


def _phase_mod_two_pi(m: int, period_phase: float, extra: float) -> float:
    # exact reduction of m*period_phase mod 2*pi; doubles are exact rationals
    if m and period_phase:
        base = float((Fraction(m) * Fraction(period_phase)) % Fraction(TWO_PI))
    else:
        base = 0.0
    out = math.fmod(base + math.fmod(extra, TWO_PI), TWO_PI)
    return out + TWO_PI if out < 0.0 else out


def ep(cycle: CoefficientCycle, step: int) -> complex:
    """e_p at grid time step*h, O(1) after per-cycle precomputation.

    Raises ExponentialRangeError when the value leaves double range; callers
    needing asymptotics switch to :func:`log_ep`.
    """
    step = _check_step(step)
    mult = multiplier(cycle)
    m, k = divmod(step, cycle.n)
    if m == 0:
        return mult.partial_values[k]
    lm = m * mult.log_rho + mult.partial_log_mags[k]
    if lm > _LOG_MAX:
        raise ExponentialRangeError("overflow", step, lm)
    if lm < _LOG_MIN:
        raise ExponentialRangeError("underflow", step, lm)
    phase = _phase_mod_two_pi(m, mult.period_phase, mult.partial_phases[k])
    return cmath.rect(math.exp(lm), phase)


def log_ep(cycle: CoefficientCycle, step: int) -> tuple[float, float]:
    """(log|e_p|, phase mod 2*pi) at grid time step*h; never overflows."""
    step = _check_step(step)
    mult = multiplier(cycle)
    m, k = divmod(step, cycle.n)
    lm = m * mult.log_rho + mult.partial_log_mags[k]
    phase = _phase_mod_two_pi(m, mult.period_phase, mult.partial_phases[k])
    return lm, phase


def ep_profile(cycle: CoefficientCycle, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Overflow-safe e_p data on 0..count*h.

    Returns (log magnitudes, unit phasors), each of length count + 1, with
    entry j describing e_p(j*h). The phasors are renormalized cumulative
    products, so they stay on the unit circle for any horizon.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    n = cycle.n
    reps = -(-count // n) if count else 1
    factors = np.tile(np.asarray(cycle.factors, dtype=complex), reps)[:count]
    log_mags = np.empty(count + 1)
    log_mags[0] = 0.0
    np.cumsum(np.log(np.abs(factors)), out=log_mags[1:])
    phasors = np.empty(count + 1, dtype=complex)
    phasors[0] = 1.0
    if count:
        unit_steps = factors / np.abs(factors)
        np.cumprod(unit_steps, out=phasors[1:])
        phasors[1:] /= np.abs(phasors[1:])
    return log_mags, phasors


def ep_values(cycle: CoefficientCycle, count: int) -> np.ndarray:
    """e_p(j*h) for j = 0..count as plain complex values via direct products.

    Fast and exact for bounded horizons; overflows to inf/nan for expanding
    cycles past the double range (use :func:`ep_profile` there).
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    n = cycle.n
    out = np.empty(count + 1, dtype=complex)
    out[0] = 1.0
    if count:
        reps = -(-count // n)
        factors = np.tile(np.asarray(cycle.factors, dtype=complex), reps)[:count]
        np.cumprod(factors, out=out[1:])
    return out
