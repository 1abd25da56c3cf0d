"""Property suites behind the ``verify`` CLI command and the acceptance tests.

Each suite returns a plain report object with one record per case and an
overall pass flag; nothing is raised on a failed property so the caller can
serialize the margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cycle import CoefficientCycle
from .errors import NotContractingError, NotExpandingError
from .exponential import ep_values, multiplier
from .sampling import random_disk, random_expanding_cycle
from .simulate import GridFunction, forcing_limit_sum, solve_forced, solve_forced_many
from .stability import (
    DEFAULT_CLASSIFICATION_TOL,
    StabilityClass,
    classify,
    expanding_minimum_constant,
    initial_radius,
    partial_sums,
)
from .witness import brute_force_sup, sharpness_witness


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    passed: bool
    cases: tuple[dict, ...]
    summary: dict


def oracle_periods(rho: float, rel_gap: float = 1e-7, floor: int = 60) -> int:
    """Period count driving the brute-force gap to K*eps below rel_gap."""
    return max(floor, math.ceil(math.log(1.0 / rel_gap) / math.log(rho)))


def sharpness_suite(
    trials: int,
    seed: int,
    epsilon: float = 1.0,
    include: CoefficientCycle | None = None,
    witness_periods: int = 60,
    gap_target: float = 1e-6,
    phase_samples: int = 64,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> SuiteReport:
    """Sandwich check on random expanding cycles (n <= 5, rho in (1.05, 4)):

    witness sup >= K*eps*(1 - rho**(-periods)), witness sup <= oracle sup,
    oracle sup <= K*eps*(1 + 1e-9), and the oracle lands within gap_target
    of K*eps.
    """
    rng = np.random.default_rng(seed)
    cycles = []
    if include is not None and classify(include, classification_tol) is StabilityClass.EXPANDING:
        cycles.append(include)
    while len(cycles) < trials:
        cycles.append(random_expanding_cycle(rng))
    cases = []
    for i, cyc in enumerate(cycles[:trials]):
        rho = multiplier(cyc).rho
        target = expanding_minimum_constant(cyc, classification_tol) * epsilon
        wit = sharpness_witness(cyc, epsilon, witness_periods, classification_tol)
        oracle = brute_force_sup(
            cyc,
            epsilon,
            oracle_periods(rho, gap_target / 10.0, witness_periods),
            phase_samples=phase_samples,
            seed=seed + i,
            classification_tol=classification_tol,
        )
        lower = target * (1.0 - rho ** (-witness_periods))
        rel_gap = abs(target - oracle) / target
        ok = (
            wit.achieved_sup >= lower
            and wit.achieved_sup <= oracle * (1.0 + 1e-12)
            and oracle <= target * (1.0 + 1e-9)
            and rel_gap <= gap_target
        )
        cases.append(
            {
                "n": cyc.n,
                "h": cyc.h,
                "rho": rho,
                "target": target,
                "witness_sup": wit.achieved_sup,
                "oracle_sup": oracle,
                "rel_gap": rel_gap,
                "ok": ok,
            }
        )
    passed = all(c["ok"] for c in cases)
    return SuiteReport(
        suite="sharpness",
        passed=passed,
        cases=tuple(cases),
        summary={
            "trials": len(cases),
            "max_rel_gap": max(c["rel_gap"] for c in cases),
            "gap_target": gap_target,
        },
    )


def contracting_suite(
    cycle: CoefficientCycle,
    trials: int,
    seed: int,
    epsilon: float = 1.0,
    periods: int = 200,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> SuiteReport:
    """Strict tracking bound for a contracting cycle over random forcings.

    For each trial a random |q| <= eps forcing and an exact solution with
    x(0) inside the admissible radius are drawn; every sampled step must
    stay strictly below eps*h*rho*max(S_k)/(1 - rho).
    """
    if classify(cycle, classification_tol) is not StabilityClass.CONTRACTING:
        raise NotContractingError("contracting suite needs a contracting cycle")
    rho = multiplier(cycle).rho
    bound = epsilon * cycle.h * rho * max(partial_sums(cycle)) / (1.0 - rho)
    radius = initial_radius(cycle, epsilon, classification_tol)
    steps = periods * cycle.n
    rng = np.random.default_rng(seed)
    phi0 = random_disk(rng, trials, 1.0)
    offsets = random_disk(rng, trials, 0.999 * radius)
    q_rows = random_disk(rng, trials * steps, epsilon).reshape(trials, steps)
    traj = solve_forced_many(cycle, phi0, q_rows)
    exact = np.outer(phi0 + offsets, np.ones(steps + 1, dtype=complex))
    exact *= ep_values(cycle, steps)[None, :]
    diffs = np.abs(traj - exact)
    worst = float(diffs.max())
    violations = int(np.count_nonzero(diffs >= bound))
    cases = (
        {
            "trials": trials,
            "steps": steps,
            "bound": bound,
            "max_error": worst,
            "violations": violations,
            "ok": violations == 0,
        },
    )
    return SuiteReport(
        suite="contracting",
        passed=violations == 0,
        cases=cases,
        summary={"bound": bound, "max_error": worst, "violations": violations},
    )


def predicted_violation_periods(
    cycle: CoefficientCycle,
    epsilon: float,
    offset: float,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> int:
    """Periods after which a second solution offset from the limit by
    ``offset`` must leave the K*eps tube around any eps-approximate solution."""
    if not offset > 0.0:
        raise ValueError("offset must be positive")
    mult = multiplier(cycle)
    target = expanding_minimum_constant(cycle, classification_tol) * epsilon
    min_e = min(math.exp(m) for m in mult.partial_log_mags)
    return (
        math.ceil(math.log(2.0 * target / (offset * min_e)) / math.log(mult.rho)) + 1
    )


def uniqueness_suite(
    cycle: CoefficientCycle,
    trials: int,
    seed: int,
    epsilon: float = 1.0,
    offset_ratio: float = 1e-3,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> SuiteReport:
    """Second solutions offset by K*eps*offset_ratio leave the K*eps tube
    within the predicted period count on an expanding cycle."""
    if classify(cycle, classification_tol) is not StabilityClass.EXPANDING:
        raise NotExpandingError("uniqueness suite needs an expanding cycle")
    target = expanding_minimum_constant(cycle, classification_tol) * epsilon
    offset = target * offset_ratio
    predicted = predicted_violation_periods(cycle, epsilon, offset, classification_tol)
    steps = (predicted + 2) * cycle.n
    ep_vals = ep_values(cycle, steps)
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(trials):
        q = GridFunction(cycle.h, random_disk(rng, steps, epsilon))
        phi0 = complex(random_disk(rng, 1, 1.0)[0])
        phi = solve_forced(cycle, phi0, q)
        x0 = phi0 + forcing_limit_sum(cycle, q)
        c = x0 + offset * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        diffs = np.abs(phi.values - c * ep_vals)
        breaches = np.nonzero(diffs > target * (1.0 + 1e-12))[0]
        if len(breaches):
            observed = int(breaches[0]) // cycle.n + 1
            ok = observed <= predicted
        else:
            observed = None
            ok = False
        cases.append({"predicted": predicted, "observed": observed, "ok": ok})
    passed = all(c["ok"] for c in cases)
    return SuiteReport(
        suite="uniqueness",
        passed=passed,
        cases=tuple(cases),
        summary={"trials": trials, "predicted": predicted},
    )
