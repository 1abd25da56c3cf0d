"""Exception types raised across the package."""


class UlamStabError(Exception):
    """Base class for every error this package raises deliberately."""


class NonPositiveStepError(UlamStabError):
    """Step size h must be a positive finite real."""


class EmptyCycleError(UlamStabError):
    """A coefficient cycle needs at least one coefficient."""


class NonFiniteValueError(UlamStabError):
    """NaN or infinity reached a public operation."""


class SingularCoefficientError(UlamStabError):
    """A coefficient hit the excluded value -1/h (factor 1 + h*p == 0)."""

    def __init__(self, index: int, magnitude: float):
        self.index = index
        self.magnitude = magnitude
        super().__init__(
            f"coefficient {index} makes |1 + h*p| = {magnitude:.3e}, "
            "too close to the excluded value -1/h"
        )


class ExponentialRangeError(UlamStabError):
    """The discrete exponential left double range; use the log form instead."""

    def __init__(self, direction: str, step: int, log_magnitude: float):
        self.direction = direction
        self.step = step
        self.log_magnitude = log_magnitude
        super().__init__(
            f"discrete exponential {direction} at step {step} "
            f"(log magnitude {log_magnitude:.1f}); use log_ep"
        )


class TrajectoryOverflowError(UlamStabError):
    """A simulated trajectory left double range."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"trajectory value not representable from step {step}")


class BoundaryMultiplierError(UlamStabError):
    """Per-period multiplier is too close to 1 for a stability constant."""


class NotExpandingError(UlamStabError):
    """Operation requires a per-period multiplier above 1."""


class NotContractingError(UlamStabError):
    """Operation requires a per-period multiplier below 1."""


class NotOnBoundaryError(UlamStabError):
    """Operation requires a per-period multiplier equal to 1."""


class LengthMismatchError(UlamStabError):
    """A grid function is shorter than the requested horizon."""


class TooShortError(UlamStabError):
    """At least two samples are needed to form a difference quotient."""


class StepSizeMismatchError(UlamStabError):
    """Grid function and cycle disagree on the step size h."""


class InsufficientSamplesError(UlamStabError):
    """Not enough forcing samples to certify the requested tolerance."""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"need {needed} forcing samples for the requested tolerance, "
            f"only {available} provided"
        )


class PerturbationBoundViolatedError(UlamStabError):
    """The perturbation callback exceeded its declared bound."""


class CertificateViolatedError(UlamStabError):
    """A trajectory escaped a boundedness certificate (implementation bug)."""


class UnsupportedPeriodError(UlamStabError):
    """Boundedness certificates are only derived for two-cycle coefficients."""


class ConfigError(UlamStabError):
    """Malformed configuration or input file."""
