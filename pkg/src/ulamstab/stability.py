"""Stability classification and Ulam constants for periodic cycles.

The per-period multiplier rho = |e_p(n*h)| splits cycles into three
classes: rho == 1 admits no Ulam constant at all, while rho != 1 gives the
constant

    K = h * rho * max_k(S_k) / |1 - rho|,

where S_k is the n-term sum of reciprocal running factor magnitudes
starting at residue k. For rho > 1 this K is the minimum possible
constant; for rho < 1 it is an upper bound and minimality is left open.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .cycle import CoefficientCycle, _require_finite_complex, _require_step_size
from .errors import (
    BoundaryMultiplierError,
    NotContractingError,
    NotExpandingError,
    SingularCoefficientError,
)
from .exponential import multiplier

DEFAULT_CLASSIFICATION_TOL = 1e-9


class StabilityClass(enum.Enum):
    NOT_ULAM_STABLE = "NotUlamStable"
    EXPANDING = "StableExpanding"
    CONTRACTING = "StableContracting"


@dataclass(frozen=True)
class StabilityReport:
    """Classification plus constant data for one cycle.

    K is None exactly when the cycle sits on the rho == 1 boundary.
    argmax_residue is the smallest index attaining max_k(S_k).
    """

    stability_class: StabilityClass
    rho: float
    sums: tuple[float, ...]
    K: float | None
    argmax_residue: int
    is_minimum_constant: bool
    minimality_warning: bool
    near_singular_warning: bool
    classification_tol: float


def classify(
    cycle: CoefficientCycle, classification_tol: float = DEFAULT_CLASSIFICATION_TOL
) -> StabilityClass:
    """Stability class from the per-period multiplier."""
    rho = multiplier(cycle).rho
    if abs(rho - 1.0) <= classification_tol:
        return StabilityClass.NOT_ULAM_STABLE
    if rho > 1.0:
        return StabilityClass.EXPANDING
    return StabilityClass.CONTRACTING


def partial_sums(cycle: CoefficientCycle) -> tuple[float, ...]:
    """Per-residue sums S_0..S_{n-1}.

    S_k has exactly n terms; term j is the reciprocal magnitude of the
    running product of j consecutive factors starting at residue k, indices
    mod n. Terms are formed in the log domain and accumulated in descending
    magnitude so extreme factors neither overflow nor drown small terms.
    """
    logs = cycle.log_factor_magnitudes
    n = cycle.n
    out = []
    for k in range(n):
        acc = 0.0
        neg_logs = []
        for j in range(n):
            acc += logs[(k + j) % n]
            neg_logs.append(-acc)
        terms = sorted((math.exp(v) for v in neg_logs), reverse=True)
        total = 0.0
        for t in terms:
            total += t
        out.append(total)
    return tuple(out)


def ulam_constant(
    cycle: CoefficientCycle, classification_tol: float = DEFAULT_CLASSIFICATION_TOL
) -> StabilityReport:
    """Full stability report; K present iff the cycle is off the boundary."""
    rho = multiplier(cycle).rho
    sums = partial_sums(cycle)
    arg = max(range(cycle.n), key=sums.__getitem__)
    cls = classify(cycle, classification_tol)
    if cls is StabilityClass.NOT_ULAM_STABLE:
        constant = None
        is_minimum = False
    else:
        constant = cycle.h * rho * sums[arg] / abs(1.0 - rho)
        is_minimum = cls is StabilityClass.EXPANDING
    return StabilityReport(
        stability_class=cls,
        rho=rho,
        sums=sums,
        K=constant,
        argmax_residue=arg,
        is_minimum_constant=is_minimum,
        minimality_warning=not cycle.minimal,
        near_singular_warning=cycle.near_singular,
        classification_tol=classification_tol,
    )


def two_cycle_constant(
    h: float,
    p0: complex,
    p1: complex,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> float:
    """Closed two-cycle form h * max(1 + a, 1 + b) / |1 - a*b|.

    a and b are the factor magnitudes |1 + h*p0| and |1 + h*p1|. Agrees
    with :func:`ulam_constant` on the n = 2 cycle through the identities
    rho*S_0 = 1 + b and rho*S_1 = 1 + a.
    """
    h = _require_step_size(h)
    mags = []
    for k, p in enumerate((p0, p1)):
        p = _require_finite_complex(p, f"coefficient {k}")
        mag = abs(1.0 + h * p)
        if mag < 1e-300:
            raise SingularCoefficientError(k, mag)
        mags.append(mag)
    a, b = mags
    if abs(1.0 - a * b) <= classification_tol:
        raise BoundaryMultiplierError(
            f"|1 + h*p0||1 + h*p1| = {a * b!r} is within {classification_tol} of 1"
        )
    return h * max(1.0 + a, 1.0 + b) / abs(1.0 - a * b)


def expanding_minimum_constant(
    cycle: CoefficientCycle, classification_tol: float = DEFAULT_CLASSIFICATION_TOL
) -> float:
    """Minimum Ulam constant h*rho*max(S_k)/(rho - 1); expanding cycles only."""
    report = ulam_constant(cycle, classification_tol)
    if report.stability_class is not StabilityClass.EXPANDING:
        raise NotExpandingError(
            f"per-period multiplier {report.rho!r} is not above 1 + tol"
        )
    assert report.K is not None
    return report.K


def initial_radius(
    cycle: CoefficientCycle,
    epsilon: float,
    classification_tol: float = DEFAULT_CLASSIFICATION_TOL,
) -> float:
    """Admissible initial deviation eps*h*rho*S_0/(1 - rho) in the contracting case.

    Any exact solution started within this distance of an eps-approximate
    one stays inside the contracting tracking bound forever.
    """
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    report = ulam_constant(cycle, classification_tol)
    if report.stability_class is not StabilityClass.CONTRACTING:
        raise NotContractingError(
            f"per-period multiplier {report.rho!r} is not below 1 - tol"
        )
    return epsilon * cycle.h * report.rho * report.sums[0] / (1.0 - report.rho)
