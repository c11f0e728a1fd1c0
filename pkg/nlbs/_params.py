from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._errors import ValidationError


@dataclass(frozen=True)
class ModelParams:
    """
    Parameters of the illiquid-market pricing PDE.

    Args:
        sigma: volatility (> 0).
        rho: liquidity parameter (>= 0). rho = 0 is the linear Black-Scholes model.
        omega: scale of the liquidity profile lambda(S) = omega * S**k (> 0).
        k: exponent of the liquidity profile, 0 or 1.
    """
    sigma: float
    rho: float
    omega: float = 1.0
    k: int = 0

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma <= 0:
            raise ValidationError(f"sigma must be positive and finite, got {self.sigma}")
        if not math.isfinite(self.rho) or self.rho < 0:
            raise ValidationError(f"rho must be non-negative and finite, got {self.rho}")
        if not math.isfinite(self.omega) or self.omega <= 0:
            raise ValidationError(f"omega must be positive and finite, got {self.omega}")
        if self.k not in (0, 1):
            raise ValidationError(f"k must be 0 or 1, got {self.k}")

    @property
    def b(self) -> float:
        return self.omega * self.rho

    @property
    def speed(self) -> float:
        """Similarity speed a = -sigma^2/8 of the invariant coordinate."""
        return -self.sigma ** 2 / 8.0

    def with_rho(self, rho: float) -> ModelParams:
        return replace(self, rho=rho)

    @classmethod
    def from_b(cls, sigma: float, b: float, omega: float = 1.0) -> ModelParams:
        return cls(sigma=sigma, rho=b / omega, omega=omega)


@dataclass(frozen=True)
class Jet2:
    """
    Value and first/second partial derivatives of a candidate solution at (S, t).

    Entries may be floats or numpy arrays of a common shape.
    """
    S: float | np.ndarray
    t: float | np.ndarray
    u: float | np.ndarray
    u_t: float | np.ndarray
    u_S: float | np.ndarray
    u_SS: float | np.ndarray

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        if np.any(S <= 0):
            raise ValidationError(f"jet price must be positive, got {self.S}")
        for name in ("t", "u", "u_t", "u_S", "u_SS"):
            if not np.all(np.isfinite(np.asarray(getattr(self, name), dtype=float))):
                raise ValidationError(f"jet entry {name} is not finite")
