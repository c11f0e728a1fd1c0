from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._errors import ValidationError, ZeroC


class FamilyTag(Enum):
    R = "r"
    U1 = "u1"
    U2 = "u2"
    U3 = "u3"
    TRIVIAL_LINEAR = "trivial"
    LOG_PLUS = "log_plus"
    LOG_MINUS = "log_minus"
    LINEAR = "linear"  # b = 0: v = d + c exp(-3z/4)

    @property
    def is_nonlinear(self) -> bool:
        return self not in (FamilyTag.TRIVIAL_LINEAR, FamilyTag.LINEAR)

    @property
    def needs_root(self) -> bool:
        return self in (FamilyTag.R, FamilyTag.U1, FamilyTag.U2, FamilyTag.U3)

    @property
    def is_bounded_below(self) -> bool:
        """Families living on S >= boundary curve only."""
        return self in (FamilyTag.U1, FamilyTag.U2)

    @classmethod
    def from_name(cls, name: str) -> FamilyTag:
        try:
            return cls(name.lower())
        except ValueError:
            raise ValidationError(f"unknown family {name!r}; expected one of {[t.value for t in cls]}")


@dataclass(frozen=True)
class SolutionFamily:
    """
    One invariant solution u = S v(z) + d2, where v already contains the d term.

    Args:
        tag: family identity.
        c: integration constant. R needs c > 0, U1/U2/U3 need c < 0. For the
            b = 0 LINEAR family it is the coefficient of exp(-3z/4).
        d: coefficient of the linear term d S.
        d2: additive constant.
        chart: for U3 only, 1 (below the boundary curve), 2 (above) or None for both.
    """
    tag: FamilyTag
    c: float = 0.0
    d: float = 0.0
    d2: float = 0.0
    chart: int | None = None

    def __post_init__(self):
        for name in ("c", "d", "d2"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        match self.tag:
            case FamilyTag.R:
                if self.c == 0:
                    raise ZeroC("c = 0 is excluded")
                if self.c < 0:
                    raise ValidationError(f"family R needs c > 0, got {self.c}")
            case FamilyTag.U1 | FamilyTag.U2 | FamilyTag.U3:
                if self.c == 0:
                    raise ZeroC("c = 0 is excluded")
                if self.c > 0:
                    raise ValidationError(f"family {self.tag.name} needs c < 0, got {self.c}")
        if self.chart is not None:
            if self.tag is not FamilyTag.U3:
                raise ValidationError("only U3 has charts")
            if self.chart not in (1, 2):
                raise ValidationError(f"chart must be 1 or 2, got {self.chart}")

    @property
    def abs_c(self) -> float:
        return abs(self.c)

    @property
    def label(self) -> str:
        if self.chart is not None:
            return f"{self.tag.value}.{self.chart}"
        return self.tag.value

    def z_star(self) -> float:
        """Boundary of the three-root region, z* = -(2/3) log(2/|c|)."""
        return -2.0 / 3.0 * math.log(2.0 / self.abs_c)


@dataclass(frozen=True)
class PriceInterval:
    lower: float
    upper: float = math.inf
    lower_closed: bool = False
    upper_closed: bool = False

    def contains(self, S):
        S = np.asarray(S, dtype=float)
        above = S >= self.lower if self.lower_closed else S > self.lower
        below = S <= self.upper if self.upper_closed else S < self.upper
        return above & below

    def __str__(self):
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f"{left}{self.lower}, {self.upper}{right}"


@dataclass(frozen=True)
class InvariantPoint:
    """
    (S, t) with the invariant coordinate z = log S - sigma^2 t / 8 and, when a
    family has been resolved, its uniformizing root p.
    """
    S: float
    t: float
    z: float
    p: float | None = None

    def cubic_residual(self, c: float, branch: str = "+") -> float:
        if self.p is None:
            raise ValidationError("no uniformizing root attached to this point")
        rhs = 2.0 * c * math.exp(-1.5 * self.z)
        if branch == "+":
            return (self.p + 1) ** 2 * (self.p - 2) - rhs
        return (self.p - 1) ** 2 * (self.p + 2) - rhs
