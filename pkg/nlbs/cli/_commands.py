"""The sub-commands. Each takes a validated RunSpec and returns a Table."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any, NamedTuple

import numpy as np
from tqdm import tqdm

from .._conformance import conformance_report, default_families
from .._errors import ValidationError
from .._evaluator import ExactSolution
from .._exact import check_family_params, eval_delta, eval_u, in_domain, to_invariant
from .._family import SolutionFamily
from .._params import ModelParams
from ..solver import (
    DirichletFromReference,
    Grid,
    LinearExtrapolation,
    SolverConfig,
    convergence_study,
    solve_terminal_value,
)
from ._runspec import RunSpec


logger = logging.getLogger(__name__)

SURFACE_COLUMNS = ("S", "t", "z", "u", "delta", "in_domain")
FD_STEP = 1e-5


class Table(NamedTuple):
    columns: tuple[str, ...]
    rows: list[list[Any]]
    ok: bool = True


def _floats(values) -> list:
    return [None if v is None or not np.isfinite(v) else float(v) for v in values]


def _family_rows(family: SolutionFamily, params: ModelParams, S: np.ndarray, times: np.ndarray,
                 finite_difference: bool = False) -> list[list[Any]]:
    """Rows t-major, then S; out-of-domain cells stay empty."""
    check_family_params(family, params)
    rows = []
    for t in times:
        mask = np.asarray(in_domain(family, S, t, params), dtype=bool)
        u = np.full(S.shape, np.nan)
        delta = np.full(S.shape, np.nan)
        if mask.any():
            u[mask] = eval_u(family, S[mask], t, params)
            delta[mask] = eval_delta(family, S[mask], t, params)
        z = to_invariant(S, t, params)
        columns = [S.tolist(), [float(t)] * S.size, np.asarray(z).tolist(), _floats(u), _floats(delta)]
        if finite_difference:
            h = FD_STEP * S
            both = mask & np.asarray(in_domain(family, S - h, t, params), dtype=bool) \
                & np.asarray(in_domain(family, S + h, t, params), dtype=bool)
            fd = np.full(S.shape, np.nan)
            if both.any():
                fd[both] = (eval_u(family, S[both] + h[both], t, params)
                            - eval_u(family, S[both] - h[both], t, params)) / (2.0 * h[both])
            columns.append(_floats(fd))
        columns.append(mask.tolist())
        rows.extend([list(r) for r in zip(*columns)])
    return rows


def cmd_eval(spec: RunSpec) -> Table:
    rows = _family_rows(spec.solution_family(), spec.model_params(),
                        spec.s_range.values(), spec.t_range.values())
    return Table(SURFACE_COLUMNS, rows)


def cmd_greeks(spec: RunSpec) -> Table:
    """Analytic Delta next to central differences of u (step 1e-5 S)."""
    rows = _family_rows(spec.solution_family(), spec.model_params(),
                        spec.s_range.values(), spec.t_range.values(), finite_difference=True)
    return Table(("S", "t", "z", "u", "delta", "delta_fd", "in_domain"), rows)


def cmd_residual(spec: RunSpec) -> Table:
    params = spec.model_params()
    families = [spec.solution_family()] if spec.family is not None else default_families()
    s, t = spec.s_range, spec.t_range
    report = conformance_report(params, families, n_S=s.count, n_t=t.count,
                                S_range=(s.start, s.stop), t_range=(t.start, t.stop))
    columns = ("kind", "subject", "value", "tolerance", "checked", "skipped", "status",
               "printed", "verified", "difference", "note")
    rows = [[row.get(c) for c in columns] for row in report.as_rows()]
    return Table(columns, rows, ok=report.passed)


def _solver_grid(spec: RunSpec, n_nodes: int | None = None, n_steps: int | None = None) -> Grid:
    s, t = spec.s_range, spec.t_range
    if t.start != 0:
        raise ValidationError(f"the solver marches to t = 0, the t-range must start at 0, got {t}")
    return Grid.uniform(s.start, s.stop, n_nodes or s.count, t.stop, n_steps or max(t.count - 1, 1))


def _payoff_and_boundary(spec: RunSpec, params: ModelParams, T: float):
    match spec.payoff:
        case "family":
            reference = ExactSolution(spec.solution_family(), params)
            return (lambda S: reference.value(S, T)), DirichletFromReference(reference)
        case "call":
            return (lambda S: np.maximum(S - spec.strike, 0.0)), LinearExtrapolation()
        case _:
            return (lambda S: spec.d * S + spec.d2), LinearExtrapolation()


def cmd_solve(spec: RunSpec) -> Table:
    params = spec.model_params()
    grid = _solver_grid(spec)
    payoff, boundary = _payoff_and_boundary(spec, params, grid.T)
    config = SolverConfig(scheme=spec.time_scheme(), boundary=boundary)
    surface = solve_terminal_value(spec.model_kind(), params, payoff, grid, config)
    S = grid.S
    rows = []
    for index in range(grid.t.size - 1, -1, -1):
        t = float(grid.t[index])
        z = to_invariant(S, t, params)
        rows.extend([[float(Si), t, float(zi), float(ui), float(di), True]
                     for Si, zi, ui, di in zip(S, z, surface.u[index], surface.delta[index])])
    return Table(SURFACE_COLUMNS, rows)


def cmd_converge(spec: RunSpec, progress: bool = True) -> Table:
    params = spec.model_params()
    reference = ExactSolution(spec.solution_family(), params)
    base_steps = max(spec.t_range.count - 1, 1)
    first = spec.levels[0]
    grids = [_solver_grid(spec, n, max(1, round(base_steps * (n - 1) / (first - 1)))) for n in spec.levels]
    config = SolverConfig(scheme=spec.time_scheme(), boundary=DirichletFromReference(reference))
    table = convergence_study(spec.model_kind(), params, reference, grids, config, progress=progress)
    columns = ("level", "spacing", "error", "order", "flag")
    return Table(columns, [[r[c] for c in columns] for r in table.as_rows()])


def cmd_sweep(spec: RunSpec, progress: bool = True) -> Table:
    """eval over --c-values, fanned out over a thread pool; rows keep the order of the values."""
    params = spec.model_params()
    S, times = spec.s_range.values(), spec.t_range.values()

    def one(c: float) -> list[list[Any]]:
        return [[c, *row] for row in _family_rows(spec.solution_family(c), params, S, times)]

    workers = min(len(spec.c_values), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        chunks = list(tqdm(executor.map(one, spec.c_values), total=len(spec.c_values), desc="sweep",
                           disable=not progress))
    return Table(("c", *SURFACE_COLUMNS), [row for chunk in chunks for row in chunk])


# commands that draw a tqdm bar and take a progress flag
PROGRESS_COMMANDS = ("converge", "sweep")

COMMAND_TABLE = {
    "eval": cmd_eval,
    "residual": cmd_residual,
    "solve": cmd_solve,
    "converge": cmd_converge,
    "greeks": cmd_greeks,
    "sweep": cmd_sweep,
}
