"""Report container and trajectory file formats.

All reports and configs share one JSON container; floats are written with
17 significant digits so every double round-trips losslessly. Trajectories
use flat delimited text with the fixed column order step,t,re,im,abs.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .simulate import GridFunction

TRAJECTORY_HEADER = "step,t,re,im,abs"


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("refusing to serialize NaN/inf")
    return format(float(x), ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return f"[{format_float(z.real)}, {format_float(z.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return _encode(asdict(obj), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{inner}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        scalars = all(
            isinstance(v, (int, float, complex, bool, np.integer, np.floating, np.complexfloating))
            for v in seq
        )
        parts = [_encode(v, indent, level + 1) for v in seq]
        if scalars:
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(inner + p for p in parts) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_container(obj, indent: int = 2) -> str:
    """Serialize a report object to the shared container text."""
    return _encode(obj, indent, 0) + "\n"


def write_container(path, obj) -> None:
    Path(path).write_text(dumps_container(obj), encoding="utf-8")


def write_trajectory_csv(path, traj: GridFunction) -> None:
    """One row per grid point: step, t, re, im, abs."""
    lines = [TRAJECTORY_HEADER]
    for j, z in enumerate(traj.values):
        z = complex(z)
        lines.append(
            f"{j},{format_float(j * traj.h)},{format_float(z.real)},"
            f"{format_float(z.imag)},{format_float(abs(z))}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_grid_function_csv(path, h: float) -> GridFunction:
    """Read samples back from the trajectory format; the abs column is ignored."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != TRAJECTORY_HEADER:
        raise ConfigError(f"{path}: expected header {TRAJECTORY_HEADER!r}")
    values = []
    for row, line in enumerate(lines[1:]):
        fields = line.split(",")
        if len(fields) != 5:
            raise ConfigError(f"{path}: row {row} has {len(fields)} columns, need 5")
        try:
            step = int(fields[0])
            t = float(fields[1])
            re = float(fields[2])
            im = float(fields[3])
        except ValueError as exc:
            raise ConfigError(f"{path}: row {row}: {exc}") from exc
        if step != row:
            raise ConfigError(f"{path}: row {row} has step index {step}")
        if abs(t - step * h) > 1e-9 * max(1.0, h):
            raise ConfigError(
                f"{path}: row {row} time {t!r} does not sit on the h = {h!r} grid"
            )
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ConfigError(f"{path}: row {row} has non-finite samples")
        values.append(complex(re, im))
    if not values:
        raise ConfigError(f"{path}: no samples")
    return GridFunction(h, np.asarray(values, dtype=complex))
