"""Problem configuration files: JSON with a fixed key set.

Keys: h (number), coefficients (array of [re, im] pairs), and optional
epsilon, horizon_periods, classification_tol, seed. Unknown keys and
NaN/inf anywhere are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .cycle import CoefficientCycle, validate_cycle
from .errors import ConfigError

_ALLOWED_KEYS = {
    "h",
    "coefficients",
    "epsilon",
    "horizon_periods",
    "classification_tol",
    "seed",
}


@dataclass(frozen=True)
class ProblemConfig:
    h: float
    coefficients: tuple[complex, ...]
    epsilon: float = 1.0
    horizon_periods: int = 50
    classification_tol: float = 1e-9
    seed: int = 0

    def cycle(self) -> CoefficientCycle:
        return validate_cycle(self.h, self.coefficients)


def _reject_constant(token: str):
    raise ConfigError(f"non-finite constant {token!r} is not allowed")


def _finite_number(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite")
    return value


def load_config(path) -> ProblemConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    if "h" not in raw or "coefficients" not in raw:
        raise ConfigError(f"{path}: keys h and coefficients are required")

    h = _finite_number(raw["h"], "h")
    coeff_raw = raw["coefficients"]
    if not isinstance(coeff_raw, list) or not coeff_raw:
        raise ConfigError("coefficients must be a nonempty array of [re, im] pairs")
    coefficients = []
    for k, pair in enumerate(coeff_raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"coefficient {k} must be an [re, im] pair")
        re = _finite_number(pair[0], f"coefficient {k} real part")
        im = _finite_number(pair[1], f"coefficient {k} imaginary part")
        coefficients.append(complex(re, im))

    epsilon = _finite_number(raw.get("epsilon", 1.0), "epsilon")
    if not epsilon > 0.0:
        raise ConfigError("epsilon must be positive")
    tol = _finite_number(raw.get("classification_tol", 1e-9), "classification_tol")
    if not tol > 0.0:
        raise ConfigError("classification_tol must be positive")

    horizon = raw.get("horizon_periods", 50)
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 1:
        raise ConfigError("horizon_periods must be a positive integer")
    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError("seed must be a nonnegative integer")

    return ProblemConfig(
        h=h,
        coefficients=tuple(coefficients),
        epsilon=epsilon,
        horizon_periods=horizon,
        classification_tol=tol,
        seed=seed,
    )
