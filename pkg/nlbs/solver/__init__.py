from ._grid import Grid
from ._boundary import BoundaryCondition, DirichletFromReference, LinearExtrapolation, EdgeClosure
from ._config import Damping, NewtonConfig, SolverConfig, TimeScheme
from ._surface import SolutionSurface
from ._solver import (
    SpatialOperator,
    solve_terminal_value,
    discrete_delta,
    consistency_check,
)
from ._study import ConvergenceTable, convergence_study, time_order_study


__all__ = [
    "Grid",
    "BoundaryCondition",
    "DirichletFromReference",
    "LinearExtrapolation",
    "EdgeClosure",
    "Damping",
    "NewtonConfig",
    "SolverConfig",
    "TimeScheme",
    "SolutionSurface",
    "SpatialOperator",
    "solve_terminal_value",
    "discrete_delta",
    "consistency_check",
    "ConvergenceTable",
    "convergence_study",
    "time_order_study",
]
