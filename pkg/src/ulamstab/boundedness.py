"""Uniform-ultimate boundedness certificates for perturbed two-cycles.

For a contracting two-cycle and any perturbation f with |f| <= L, every
solution of the perturbed equation eventually stays inside the ball of
radius B = L*K0 + delta, and a settle time

    T(alpha) = h * (2 * log_{rho2}(delta / ((L*K0 + alpha) * maxfac)) + 1)

is computable from the initial-condition radius alpha, where rho2 is the
per-period multiplier and maxfac = max(1, |1 + h*p0|). The certificate is
derived only for period-2 cycles; a general-n analogue would need its own
derivation and is deliberately not offered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cycle import CoefficientCycle
from .errors import (
    CertificateViolatedError,
    NonFiniteValueError,
    NotContractingError,
    PerturbationBoundViolatedError,
    UnsupportedPeriodError,
)
from .stability import (
    DEFAULT_CLASSIFICATION_TOL,
    StabilityClass,
    classify,
    two_cycle_constant,
)


@dataclass(frozen=True)
class BoundednessCertificate:
    L: float
    delta: float
    B: float
    alpha: float
    T_alpha: float
    maxfac: float
    K0: float


@dataclass(frozen=True)
class AlphaRow:
    alpha: float
    T_alpha: float
    B: float
    max_observed: float
    margin: float
    trials: int
    envelope_times: tuple[float, ...] | None = None
    envelope: tuple[float, ...] | None = None


@dataclass(frozen=True)
class BoundednessVerification:
    family: str
    L: float
    delta: float
    K0: float
    B: float
    rows: tuple[AlphaRow, ...]


def _two_cycle_data(cycle: CoefficientCycle, classification_tol: float):
    if cycle.n != 2:
        raise UnsupportedPeriodError(
            f"certificates are derived for two-cycles only, got n = {cycle.n}"
        )
    if classify(cycle, classification_tol) is not StabilityClass.CONTRACTING:
        raise NotContractingError("certificates need a contracting two-cycle")
    p0, p1 = cycle.coefficients
    k0 = two_cycle_constant(cycle.h, p0, p1, classification_tol)
    rho2 = cycle.factor_magnitudes[0] * cycle.factor_magnitudes[1]
    maxfac = max(1.0, cycle.factor_magnitudes[0])
    return k0, rho2, maxfac


def ultimate_bound(
    cycle: CoefficientCycle,
    L: float,
    delta: float,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> float:
    """Ultimate bound B = L*K0 + delta for |f| <= L perturbations."""
    if not L > 0.0:
        raise ValueError("L must be positive")
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    k0, _, _ = _two_cycle_data(cycle, classification_tol)
    return L * k0 + delta


def settle_time(
    cycle: CoefficientCycle,
    L: float,
    delta: float,
    alpha: float,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> float:
    """Time after which every |phi(0)| < alpha solution stays below B.

    Returns 0 when (L*K0 + alpha)*maxfac <= delta, where the bound already
    holds for all grid times.
    """
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if not L > 0.0:
        raise ValueError("L must be positive")
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    k0, rho2, maxfac = _two_cycle_data(cycle, classification_tol)
    level = (L * k0 + alpha) * maxfac
    if level <= delta:
        return 0.0
    return cycle.h * (2.0 * math.log(delta / level) / math.log(rho2) + 1.0)


def certificate(
    cycle: CoefficientCycle,
    L: float,
    delta: float,
    alpha: float,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> BoundednessCertificate:
    k0, _, maxfac = _two_cycle_data(cycle, classification_tol)
    return BoundednessCertificate(
        L=L,
        delta=delta,
        B=ultimate_bound(cycle, L, delta, classification_tol),
        alpha=alpha,
        T_alpha=settle_time(cycle, L, delta, alpha, classification_tol),
        maxfac=maxfac,
        K0=k0,
    )


def bounded_perturbation(name: str, L: float):
    """Built-in |f| <= L perturbation families used by the verifier and CLI."""
    if name == "zero":
        return lambda t, z: np.zeros_like(np.asarray(z, dtype=complex))
    if name == "constant":
        return lambda t, z: np.full_like(np.asarray(z, dtype=complex), L)
    if name == "saturating":
        def saturating(t, z):
            z = np.asarray(z, dtype=complex)
            return L * z / (1.0 + np.abs(z))

        return saturating
    raise ValueError(f"unknown perturbation family {name!r}")

BUILTIN_FAMILIES = ("zero", "constant", "saturating")


def _stratified_initials(alpha: float, trials: int, rng: np.random.Generator) -> np.ndarray:
    # radial shells x jittered angles; every point strictly inside |z| < alpha
    n_r = max(1, math.isqrt(trials))
    n_t = -(-trials // n_r)
    pts = np.empty(trials, dtype=complex)
    idx = 0
    for i in range(n_r):
        r = alpha * (i + 0.5) / n_r
        for j in range(n_t):
            if idx == trials:
                break
            ang = 2.0 * math.pi * (j + rng.uniform()) / n_t
            pts[idx] = r * complex(math.cos(ang), math.sin(ang))
            idx += 1
    return pts


def _eval_perturbation(f, t: float, phi: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(f(t, phi), dtype=complex)
    except Exception:
        return np.array([complex(f(t, z)) for z in phi])
    if out.shape == ():
        return np.full(phi.shape, complex(out))
    if out.shape != phi.shape:
        return np.array([complex(f(t, z)) for z in phi])
    return out


def verify_boundedness(
    cycle: CoefficientCycle,
    f,
    L: float,
    delta: float,
    alphas,
    trials_per_alpha: int,
    seed: int,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
    family: str = "custom",
    collect_envelopes: bool = False,
) -> BoundednessVerification:
    """Empirical check of the certificate: simulate seeded trials per alpha
    and assert |phi(t)| < B for every sampled t >= T(alpha).

    The perturbation bound |f| <= L is spot-checked along every trajectory;
    a violation aborts with diagnostics. A certificate violation raises
    CertificateViolatedError and indicates an implementation bug.
    """
    if trials_per_alpha < 1:
        raise ValueError("trials_per_alpha must be positive")
    k0, _, _ = _two_cycle_data(cycle, classification_tol)
    bound = ultimate_bound(cycle, L, delta, classification_tol)
    n = cycle.n
    h = cycle.h
    factors = cycle.factors
    rng = np.random.default_rng(seed)
    rows = []
    for alpha in alphas:
        t_alpha = settle_time(cycle, L, delta, alpha, classification_tol)
        horizon = max(t_alpha + 4.0 * n * h, 100.0 * n * h)
        steps = math.ceil(horizon / h - 1e-12)
        first_checked = math.ceil(t_alpha / h - 1e-12)
        phi = _stratified_initials(alpha, trials_per_alpha, rng)
        max_observed = 0.0
        env_times = [] if collect_envelopes else None
        env = [] if collect_envelopes else None
        for j in range(steps + 1):
            mags = np.abs(phi)
            if collect_envelopes:
                env_times.append(j * h)
                env.append(float(mags.max()))
            if j >= first_checked:
                peak = float(mags.max())
                if peak >= bound:
                    worst = int(np.argmax(mags))
                    raise CertificateViolatedError(
                        f"family {family!r}: |phi| = {peak!r} >= B = {bound!r} "
                        f"at t = {j * h!r} >= T({alpha}) = {t_alpha!r} "
                        f"(trial {worst}, alpha = {alpha})"
                    )
                max_observed = max(max_observed, peak)
            if j == steps:
                break
            fv = _eval_perturbation(f, j * h, phi)
            fmags = np.abs(fv)
            if not np.all(np.isfinite(fmags)):
                raise NonFiniteValueError(
                    f"perturbation produced non-finite values at t = {j * h!r}"
                )
            if fmags.max() > L * (1.0 + 1e-12):
                raise PerturbationBoundViolatedError(
                    f"family {family!r}: |f| = {float(fmags.max())!r} > L = {L!r} "
                    f"at t = {j * h!r}"
                )
            phi = factors[j % n] * phi + h * fv
        rows.append(
            AlphaRow(
                alpha=float(alpha),
                T_alpha=t_alpha,
                B=bound,
                max_observed=max_observed,
                margin=bound - max_observed,
                trials=trials_per_alpha,
                envelope_times=tuple(env_times) if collect_envelopes else None,
                envelope=tuple(env) if collect_envelopes else None,
            )
        )
    return BoundednessVerification(
        family=family, L=L, delta=delta, K0=k0, B=bound, rows=tuple(rows)
    )
