from __future__ import annotations

import math
from dataclasses import dataclass

from .._errors import ValidationError
from .._params import ModelParams


@dataclass(frozen=True)
class ReductionParams:
    """
    Parameters of the reduced ODE v_z + q W/(1 - b W)^2 = 0, W = v_zz + xi v_z.

    Args:
        q: reduced parameter sigma^2/(2a).
        b: omega * rho, nonzero.
        xi: (-1)^k, +1 or -1.
        a: similarity speed of the invariant coordinate, when known.
    """
    q: float
    b: float
    xi: int = 1
    a: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.q):
            raise ValidationError(f"q must be finite, got {self.q}")
        if not math.isfinite(self.b) or self.b == 0:
            raise ValidationError(f"b must be finite and nonzero, got {self.b}")
        if self.xi not in (1, -1):
            raise ValidationError(f"xi must be +1 or -1, got {self.xi}")
        if self.a is not None and (not math.isfinite(self.a) or self.a == 0):
            raise ValidationError(f"a must be finite and nonzero, got {self.a}")

    @classmethod
    def from_speed(cls, sigma: float, a: float, b: float, xi: int = 1) -> ReductionParams:
        if a == 0:
            raise ValidationError("the similarity speed a must be nonzero")
        return cls(q=sigma ** 2 / (2.0 * a), b=b, xi=xi, a=a)

    @classmethod
    def from_model(cls, params: ModelParams) -> ReductionParams:
        """The reduction along z = log S - sigma^2 t / 8, which gives q = -4."""
        return cls.from_speed(params.sigma, params.speed, params.b, xi=(-1) ** params.k)

    @property
    def branch_locus(self) -> float:
        """The discriminant line y = q/(4b)."""
        return self.q / (4.0 * self.b)


@dataclass(frozen=True)
class IntegrationControls:
    rtol: float = 1e-10
    atol: float = 1e-12
    margin: float = 1e-6
    method: str = "DOP853"
    max_step: float = math.inf

    def __post_init__(self):
        for name in ("rtol", "atol", "margin", "max_step"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive, got {getattr(self, name)}")
