from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, NamedTuple

from .._evaluator import SolutionEvaluator

if TYPE_CHECKING:
    from ._grid import Grid


class EdgeClosure(NamedTuple):
    """u_edge = value + near * u_(first interior) + next * u_(second interior)."""
    value: float
    near: float = 0.0
    next: float = 0.0


class BoundaryCondition(ABC):
    """
    Closes the spatial system at the two edge nodes. Edge values are affine in
    the two nearest interior values, which keeps the Newton Jacobian tridiagonal.
    """

    name = "abstract"

    @abstractmethod
    def closure(self, grid: Grid, t: float) -> tuple[EdgeClosure, EdgeClosure]:
        """
        Args:
            grid: the solver grid.
            t: time of the level being solved.
        Returns:
            (left, right) closures.
        """
        raise NotImplementedError("Subclasses must implement this method.")

    @property
    def has_reference(self) -> bool:
        return False


class DirichletFromReference(BoundaryCondition):
    """Edge values sampled from a reference solution, for benchmark runs."""

    name = "dirichlet_from_reference"

    def __init__(self, reference: SolutionEvaluator):
        self.reference = reference

    def closure(self, grid: Grid, t: float) -> tuple[EdgeClosure, EdgeClosure]:
        return (EdgeClosure(float(self.reference.value(grid.S[0], t))),
                EdgeClosure(float(self.reference.value(grid.S[-1], t))))

    @property
    def has_reference(self) -> bool:
        return True


class LinearExtrapolation(BoundaryCondition):
    """u_SS = 0 at both edges: u is extended linearly in S from the two nearest interior nodes."""

    name = "linear_extrapolation"

    def closure(self, grid: Grid, t: float) -> tuple[EdgeClosure, EdgeClosure]:
        S = grid.S
        r_left = (S[0] - S[1]) / (S[1] - S[2])
        r_right = (S[-1] - S[-2]) / (S[-2] - S[-3])
        return (EdgeClosure(0.0, 1.0 + r_left, -r_left),
                EdgeClosure(0.0, 1.0 + r_right, -r_right))
