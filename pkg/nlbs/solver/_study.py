from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from tqdm import tqdm

from .._evaluator import SolutionEvaluator
from .._model import ModelKind
from .._params import ModelParams
from ._config import SolverConfig
from ._grid import Grid
from ._solver import Payoff, solve_terminal_value


logger = logging.getLogger(__name__)


@dataclass
class ConvergenceTable:
    """
    One row per refinement level. orders[k] compares level k with level k - 1
    and is None for the first level or when it is flagged.
    """
    levels: list[int] = field(default_factory=list)
    spacings: list[float] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)
    orders: list[float | None] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def add(self, level: int, spacing: float, error: float, floor: float) -> None:
        order = None
        flag = ""
        if error <= floor:
            flag = "at_tolerance"
        elif self.errors:
            previous = self.errors[-1]
            if previous <= floor:
                flag = "at_tolerance"
            else:
                order = math.log(previous / error) / math.log(self.spacings[-1] / spacing)
        self.levels.append(level)
        self.spacings.append(spacing)
        self.errors.append(error)
        self.orders.append(order)
        self.flags.append(flag)

    @property
    def observed_orders(self) -> list[float]:
        return [o for o in self.orders if o is not None]

    def as_rows(self) -> list[dict]:
        return [{"level": level, "spacing": h, "error": e, "order": o, "flag": f}
                for level, h, e, o, f in zip(self.levels, self.spacings, self.errors, self.orders, self.flags)]


def _error_floor(config: SolverConfig) -> float:
    return 10.0 * config.newton.tol


def convergence_study(kind: ModelKind, params: ModelParams, reference: SolutionEvaluator,
                      grids: list[Grid], config: SolverConfig | None = None,
                      payoff: Payoff | None = None, progress: bool = True) -> ConvergenceTable:
    """
    Solves on each grid of the ladder and tabulates max-norm errors at t = 0
    against the reference, with observed orders in the x spacing.

    The payoff defaults to the reference at the terminal time.
    """
    config = config or SolverConfig()
    table = ConvergenceTable()
    for grid in tqdm(grids, desc="ladder", disable=not progress):
        terminal = payoff or (lambda S, g=grid: reference.value(S, g.T))
        surface = solve_terminal_value(kind, params, terminal, grid, config)
        error = float(np.max(np.abs(surface.initial - reference.value(grid.S, 0.0))))
        table.add(grid.n_nodes, grid.dx, error, _error_floor(config))
        logger.info("level %d nodes, %d steps: error %.3e, order %s", grid.n_nodes, grid.n_steps,
                    error, table.orders[-1])
    return table


def time_order_study(kind: ModelKind, params: ModelParams, payoff: Payoff, grid: Grid,
                     refinements: int = 3, config: SolverConfig | None = None,
                     progress: bool = True) -> ConvergenceTable:
    """
    Refines dt at the fixed x-nodes of `grid` and measures self-convergence:
    the error of level k is max |u_k - u_(k+1)| at t = 0, so the spatial error
    cancels.
    """
    config = config or SolverConfig()
    ladder = [grid]
    for _ in range(refinements):
        ladder.append(ladder[-1].refined(space_factor=1, time_factor=2))
    solutions = [solve_terminal_value(kind, params, payoff, g, config).initial
                 for g in tqdm(ladder, desc="dt ladder", disable=not progress)]
    table = ConvergenceTable()
    for g, coarse, fine in zip(ladder, solutions, solutions[1:]):
        dt = g.T / g.n_steps
        table.add(g.n_steps, dt, float(np.max(np.abs(coarse - fine))), _error_floor(config))
    return table
