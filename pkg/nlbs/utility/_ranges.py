from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .._errors import ValidationError


class RangeSpec(NamedTuple):
    """Closed range start:stop sampled at `count` equally spaced points."""
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def __str__(self):
        return f"{self.start!r}:{self.stop!r}:{self.count}"


def parse_range(spec: str | Sequence) -> RangeSpec:
    """
    Parses "a:b:n" (or an [a, b, n] sequence, as found in JSON run files).

    Raises:
        ValidationError: malformed, non-finite, reversed or empty range.
    """
    parts = spec.split(":") if isinstance(spec, str) else list(spec)
    if len(parts) != 3:
        raise ValidationError(f"range must look like a:b:n, got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except (TypeError, ValueError):
        raise ValidationError(f"range must look like a:b:n, got {spec!r}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ValidationError(f"range bounds must be finite, got {spec!r}")
    if count < 1:
        raise ValidationError(f"range {spec!r} is empty")
    if stop < start or (count > 1 and stop == start):
        raise ValidationError(f"range {spec!r} must satisfy a < b (or a = b with n = 1)")
    return RangeSpec(start, stop, count)


def parse_values(spec: str | Sequence, cast=float) -> tuple:
    """Comma-separated values, e.g. "0.01,1,5"."""
    parts = spec.split(",") if isinstance(spec, str) else list(spec)
    try:
        values = tuple(cast(p) for p in parts if str(p).strip() != "")
    except (TypeError, ValueError):
        raise ValidationError(f"cannot read a list of {cast.__name__} from {spec!r}")
    if cast is float and not all(math.isfinite(v) for v in values):
        raise ValidationError(f"values must be finite, got {spec!r}")
    return values
