"""Extremal objects: boundary-instability and sharpness witnesses plus a
brute-force oracle.

On the rho == 1 boundary the witness phi(t) = eps*ell*t*e_p(t) with
ell = 1/max_k |e_p(k*h)| keeps its residual within eps yet drifts away from
every exact solution linearly in t.

For expanding cycles the sharpness forcing picks q(hk) aligned with the
phase of e_p(hk + h), which makes every term of the limit series a positive
real; the tracking error against the limiting solution is then exactly
h*eps*rho*S_k/(rho - 1) at residue k, approaching K*eps geometrically. The
brute-force oracle searches over |q| = eps forcings and measures the sup
tracking error by direct simulation, independent of those formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cycle import CoefficientCycle
from .errors import NotExpandingError, NotOnBoundaryError
from .exponential import ep_profile, ep_values, multiplier
from .simulate import GridFunction, Trajectory, solve_forced
from .stability import (
    DEFAULT_CLASSIFICATION_TOL,
    StabilityClass,
    classify,
    partial_sums,
)

# Relative slack for float comparisons against exact-equality constructions.
_REL_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class WitnessReport:
    """Constructed extremal trajectory with its measured tracking data.

    For sharpness witnesses ``target`` is K*eps, ``residue_profile`` holds
    the per-residue tracking limits (max equals target), ``tracking_error``
    the measured |phi - x| per sample and ``remainder_bound`` the analytic
    gap K*eps*rho**(-periods). For instability witnesses ``target`` is
    absent, ``residue_profile`` holds the per-residue residual magnitudes
    (max equals eps) and the growth table tracks min-over-probe sups.
    """

    kind: str
    phi: Trajectory
    q: GridFunction
    epsilon: float
    achieved_sup: float
    target: float | None
    residue_profile: tuple[float, ...]
    remainder_bound: float | None = None
    tracking_error: np.ndarray | None = None
    ell: float | None = None
    probe_constants: tuple[complex, ...] | None = None
    anchor_max_step: int | None = None
    growth_step_counts: tuple[int, ...] | None = None
    growth_min_sups: tuple[float, ...] | None = None
    periods: int | None = None

    def __post_init__(self):
        max_q = float(np.max(np.abs(self.q.values)))
        if max_q > self.epsilon * (1.0 + _REL_SLACK):
            raise ValueError(f"witness forcing exceeds epsilon: {max_q!r}")
        if self.target is not None:
            peak = max(self.residue_profile)
            if abs(peak - self.target) > _REL_SLACK * abs(self.target):
                raise ValueError("residue profile peak disagrees with target")


def _require_expanding(cycle, classification_tol):
    if classify(cycle, classification_tol) is not StabilityClass.EXPANDING:
        raise NotExpandingError("per-period multiplier must exceed 1 + tol")


def suffix_tracking_errors(cycle: CoefficientCycle, q_rows: np.ndarray) -> np.ndarray:
    """Tracking-error vectors U(jh) = e_p(jh) * sum_{k>=j} h*q(hk)/e_p(hk+h).

    q_rows has shape (rows, L); the result has shape (rows, L + 1) and
    equals x0*e_p - phi for the zero-extended forcing, where x0 is the
    exact limit of that forcing. Computed by the backward recurrence
    U(t) = (U(t+h) + h*q(t)) / (1 + h*p(t)), which stays bounded by K*eps
    for expanding cycles regardless of horizon.
    """
    q_rows = np.atleast_2d(np.asarray(q_rows, dtype=complex))
    rows, length = q_rows.shape
    factors = cycle.factors
    n = cycle.n
    h = cycle.h
    out = np.zeros((rows, length + 1), dtype=complex)
    for j in range(length - 1, -1, -1):
        out[:, j] = (out[:, j + 1] + h * q_rows[:, j]) / factors[j % n]
    return out


def tracking_error_profile(
    cycle: CoefficientCycle,
    epsilon: float,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> tuple[float, ...]:
    """Per-residue tracking limits h*eps*rho*S_k/(rho - 1) for rho > 1."""
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    _require_expanding(cycle, classification_tol)
    rho = multiplier(cycle).rho
    scale = cycle.h * epsilon * rho / (rho - 1.0)
    return tuple(scale * s for s in partial_sums(cycle))


def sharpness_witness(
    cycle: CoefficientCycle,
    epsilon: float,
    periods: int,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> WitnessReport:
    """Phase-aligned forcing whose tracking error attains K*eps in the limit.

    The forcing window runs one period past the requested horizon so the
    finite-sum limit estimate keeps the measured sup within the reported
    remainder K*eps*rho**(-periods); the sup is measured over the whole
    simulated window by direct evaluation.
    """
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if periods < 1:
        raise ValueError("periods must be positive")
    _require_expanding(cycle, classification_tol)
    n = cycle.n
    length = n * (periods + 1)
    _, phasors = ep_profile(cycle, length)
    q_vals = epsilon * phasors[1:]
    q = GridFunction(cycle.h, q_vals)
    phi = solve_forced(cycle, 0.0, q)
    errors = np.abs(suffix_tracking_errors(cycle, q_vals)[0])
    profile = tracking_error_profile(cycle, epsilon, classification_tol)
    target = max(profile)
    rho = multiplier(cycle).rho
    return WitnessReport(
        kind="sharpness",
        phi=phi,
        q=q,
        epsilon=epsilon,
        achieved_sup=float(errors.max()),
        target=target,
        residue_profile=profile,
        remainder_bound=target * rho ** (-periods),
        tracking_error=errors,
        periods=periods,
    )


def instability_witness(
    cycle: CoefficientCycle,
    epsilon: float,
    steps: int,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> WitnessReport:
    """Boundary witness phi(t) = eps*ell*t*e_p(t) with residual at most eps.

    The probe set holds the natural tracking candidates c = phi(t*)/e_p(t*)
    at a grid of anchor times plus 0; ``achieved_sup`` is the smallest sup
    of |phi - c*e_p| over the probe set, and the growth table shows that
    minimum rising with the horizon.
    """
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    mult = multiplier(cycle)
    if abs(mult.rho - 1.0) > classification_tol:
        raise NotOnBoundaryError(
            f"per-period multiplier {mult.rho!r} is not within tol of 1"
        )
    n = cycle.n
    h = cycle.h
    period_mags = [math.exp(m) for m in mult.partial_log_mags[1:]] + [mult.rho]
    ell = 1.0 / max(period_mags)

    ep_vals = ep_values(cycle, steps)
    times = np.arange(steps + 1) * h
    phi_vals = epsilon * ell * times * ep_vals
    q_vals = epsilon * ell * ep_vals[1:]
    max_resid = float(np.max(np.abs(q_vals)))
    if max_resid > epsilon * (1.0 + 1e-9):
        raise ArithmeticError("witness residual drifted above epsilon")

    anchors = sorted({0, steps // 16, steps // 8, steps // 4})
    anchor_max = max(anchors)
    probes = [0.0 + 0.0j]
    for a in anchors:
        if a > 0:
            probes.append(complex(phi_vals[a] / ep_vals[a]))
    diffs = np.abs(phi_vals[None, :] - np.outer(probes, ep_vals))
    running = np.maximum.accumulate(diffs, axis=1)
    checkpoints = sorted({int(c) for c in np.linspace(max(1, steps // 8), steps, 10)})
    growth = [float(running[:, c].min()) for c in checkpoints]

    profile = tuple(
        float(epsilon * ell * math.exp(lm))
        for lm in list(mult.partial_log_mags[1:]) + [mult.log_rho]
    )
    return WitnessReport(
        kind="instability",
        phi=Trajectory(h, phi_vals),
        q=GridFunction(h, q_vals),
        epsilon=epsilon,
        achieved_sup=float(running[:, -1].min()),
        target=None,
        residue_profile=profile,
        ell=ell,
        probe_constants=tuple(probes),
        anchor_max_step=anchor_max,
        growth_step_counts=tuple(checkpoints),
        growth_min_sups=tuple(growth),
    )


def brute_force_sup(
    cycle: CoefficientCycle,
    epsilon: float,
    periods: int,
    phase_samples: int = 64,
    seed: int = 0,
    restarts: int = 8,
    sweeps: int = 3,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> float:
    """Best sup tracking error found over forcings with |q(hk)| = eps.

    Candidates combine constant forcings at a grid of phase_samples phases,
    the phase-aligned forcing, and seeded random phase assignments refined
    by greedy realignment toward the current worst sample. Every candidate
    is scored by direct simulation against its own exact limit, so the
    result can never exceed K*eps; it converges to K*eps geometrically in
    the period count. Deterministic per seed.
    """
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if periods < 1:
        raise ValueError("periods must be positive")
    if phase_samples < 1:
        raise ValueError("phase_samples must be positive")
    _require_expanding(cycle, classification_tol)
    n = cycle.n
    length = n * (periods + 1)
    _, phasors = ep_profile(cycle, length)
    unit_next = phasors[1:]

    def score(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u = suffix_tracking_errors(cycle, rows)
        mags = np.abs(u)
        return mags.max(axis=1), u

    grid_phases = np.exp(2j * np.pi * np.arange(phase_samples) / phase_samples)
    candidates = np.empty((phase_samples + 1, length), dtype=complex)
    candidates[:phase_samples] = epsilon * grid_phases[:, None]
    candidates[phase_samples] = epsilon * unit_next
    sups, _ = score(candidates)
    best = float(sups.max())

    if restarts > 0:
        rng = np.random.default_rng(seed)
        theta = rng.integers(0, phase_samples, size=(restarts, length))
        rows = epsilon * np.exp(2j * np.pi * theta / phase_samples)
        row_best, u = score(rows)
        for _ in range(sweeps):
            worst = np.argmax(np.abs(u), axis=1)
            anchor = u[np.arange(len(rows)), worst] * np.conj(phasors[worst])
            mags = np.abs(anchor)
            safe = mags > 0.0
            direction = np.where(safe, anchor / np.where(safe, mags, 1.0), 1.0)
            proposal = epsilon * direction[:, None] * unit_next[None, :]
            new_sups, new_u = score(proposal)
            improved = new_sups > row_best
            if not improved.any():
                break
            rows[improved] = proposal[improved]
            row_best = np.maximum(row_best, new_sups)
            u[improved] = new_u[improved]
        best = max(best, float(row_best.max()))
    return best
