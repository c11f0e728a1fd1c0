from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .._errors import ValidationError
from .._model import DENOMINATOR_GUARD
from ._boundary import BoundaryCondition, LinearExtrapolation


class Damping(Enum):
    NONE = "none"
    BACKTRACKING = "backtracking"


class TimeScheme(Enum):
    BACKWARD_EULER = "backward_euler"
    TRAPEZOIDAL = "trapezoidal"

    @property
    def theta(self) -> float:
        return 1.0 if self is TimeScheme.BACKWARD_EULER else 0.5

    @property
    def nominal_order(self) -> int:
        return 1 if self is TimeScheme.BACKWARD_EULER else 2

    @classmethod
    def from_name(cls, name: str) -> TimeScheme:
        try:
            return cls(name.lower())
        except ValueError:
            raise ValidationError(f"unknown time scheme {name!r}; expected one of {[s.value for s in cls]}")


@dataclass(frozen=True)
class NewtonConfig:
    max_iters: int = 50
    tol: float = 1e-10
    damping: Damping = Damping.BACKTRACKING
    min_step: float = 1.0 / 64.0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValidationError(f"max_iters must be positive, got {self.max_iters}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if not 0 < self.min_step <= 1:
            raise ValidationError(f"min_step must lie in (0, 1], got {self.min_step}")


@dataclass(frozen=True)
class SolverConfig:
    """
    Args:
        scheme: theta scheme of the time march.
        newton: inner Newton controls.
        guard: |denominator| threshold below which the model is considered broken.
        boundary: edge closure strategy.
        startup_steps: backward Euler steps taken before a trapezoidal march.
        check_parabolicity: refuse data with d(v m)/dm <= 0 at an interior node.
        progress: show a tqdm bar over the time steps.
    """
    scheme: TimeScheme = TimeScheme.TRAPEZOIDAL
    newton: NewtonConfig = field(default_factory=NewtonConfig)
    guard: float = DENOMINATOR_GUARD
    boundary: BoundaryCondition = field(default_factory=LinearExtrapolation)
    startup_steps: int = 2
    check_parabolicity: bool = True
    progress: bool = False

    def __post_init__(self):
        if not self.guard >= 1e-12:
            raise ValidationError(f"guard must be at least 1e-12, got {self.guard}")
        if self.startup_steps < 0:
            raise ValidationError(f"startup_steps must be non-negative, got {self.startup_steps}")

    def theta_at(self, step: int) -> float:
        if self.scheme is TimeScheme.TRAPEZOIDAL and step < self.startup_steps:
            return 1.0
        return self.scheme.theta

    def describe(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "newton": {"max_iters": self.newton.max_iters, "tol": self.newton.tol,
                       "damping": self.newton.damping.value},
            "guard": self.guard,
            "boundary": self.boundary.name,
            "startup_steps": self.startup_steps,
        }
