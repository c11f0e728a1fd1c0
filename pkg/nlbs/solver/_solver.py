"""Implicit theta-scheme march for u_t + 1/2 sigma^2 v(S, u_S, S u_SS) S^2 u_SS = 0.

The march runs in tau = T - t. Each step solves

    u - u_old - dtau [theta L(u) + (1 - theta) L(u_old)] = 0,   L(u) = 1/2 sigma^2 v S^2 u_SS

at the interior nodes by Newton's method. The Jacobian is tridiagonal and is
solved with scipy.linalg.solve_banded.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import time
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import solve_banded
from tqdm import tqdm

from .._errors import (
    DenominatorBreach,
    ModelValidityError,
    NewtonDivergence,
    ParabolicityLoss,
    ValidationError,
)
from .._evaluator import SolutionEvaluator
from .._model import ModelKind, denominator, parabolicity, volatility_factor_jacobian
from .._params import ModelParams
from ._boundary import EdgeClosure
from ._config import Damping, SolverConfig, TimeScheme
from ._grid import Grid
from ._surface import SolutionSurface


logger = logging.getLogger(__name__)

Payoff = Callable[[np.ndarray], np.ndarray]


class _Derivatives(NamedTuple):
    a: np.ndarray      # u_S
    m: np.ndarray      # S u_SS
    G: np.ndarray      # S^2 u_SS


def _derivatives(grid: Grid, u: np.ndarray) -> _Derivatives:
    first, second = grid.stencils
    S = grid.S[1:-1]
    a = first[0] * u[:-2] + first[1] * u[1:-1] + first[2] * u[2:]
    u_ss = second[0] * u[:-2] + second[1] * u[1:-1] + second[2] * u[2:]
    return _Derivatives(a, S * u_ss, S * S * u_ss)


class SpatialOperator:
    """L(u) at the interior nodes and its three Jacobian bands."""

    def __init__(self, kind: ModelKind, params: ModelParams, grid: Grid, guard: float):
        self.kind = kind
        self.params = params
        self.grid = grid
        self.guard = guard
        self.coeff = 0.5 * params.sigma ** 2

    def apply(self, u: np.ndarray) -> np.ndarray:
        d = _derivatives(self.grid, u)
        v, _, _ = volatility_factor_jacobian(self.kind, self.params, self.grid.S[1:-1], d.a, d.m, self.guard)
        return self.coeff * v * d.G

    def apply_with_bands(self, u: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """L(u) and dL_i/du_j for j = i-1, i, i+1."""
        grid = self.grid
        S = grid.S[1:-1]
        first, second = grid.stencils
        d = _derivatives(grid, u)
        v, dv_da, dv_dm = volatility_factor_jacobian(self.kind, self.params, S, d.a, d.m, self.guard)
        bands = [self.coeff * ((dv_da * first[j] + dv_dm * S * second[j]) * d.G + v * S * S * second[j])
                 for j in range(3)]
        return self.coeff * v * d.G, bands


def _assemble(interior: np.ndarray, left: EdgeClosure, right: EdgeClosure) -> np.ndarray:
    u = np.empty(interior.size + 2)
    u[1:-1] = interior
    u[0] = left.value + left.near * interior[0] + left.next * interior[1]
    u[-1] = right.value + right.near * interior[-1] + right.next * interior[-2]
    return u


class _StepProblem:
    """
    Residual and banded Jacobian of one implicit step in the interior unknowns.
    `sign` holds the denominator signs of the terminal data, None for kinds
    without a denominator.
    """

    def __init__(self, op: SpatialOperator, u_old: np.ndarray, L_old: np.ndarray,
                 dtau: float, theta: float, left: EdgeClosure, right: EdgeClosure,
                 sign: np.ndarray | None = None):
        self.op = op
        self.sign = sign
        self.u_old = u_old[1:-1]
        self.explicit = dtau * (1.0 - theta) * L_old
        self.weight = dtau * theta
        self.left = left
        self.right = right

    def off_branch(self, interior: np.ndarray) -> np.ndarray | None:
        """Mask of interior nodes whose denominator sign differs from the terminal data."""
        if self.sign is None:
            return None
        op = self.op
        d = _derivatives(op.grid, _assemble(interior, self.left, self.right))
        den = denominator(op.kind, op.params, op.grid.S[1:-1], d.a, d.m)
        return np.sign(den) != self.sign

    def residual(self, interior: np.ndarray) -> np.ndarray:
        u = _assemble(interior, self.left, self.right)
        return interior - self.u_old - self.weight * self.op.apply(u) - self.explicit

    def residual_and_jacobian(self, interior: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u = _assemble(interior, self.left, self.right)
        L, (dl, dd, du) = self.op.apply_with_bands(u)
        R = interior - self.u_old - self.weight * L - self.explicit
        w = self.weight
        lower = -w * dl[1:]
        diag = 1.0 - w * dd
        upper = -w * du[:-1]
        # fold the affine edge closures into the first and last rows
        diag[0] -= w * dl[0] * self.left.near
        upper[0] -= w * dl[0] * self.left.next
        diag[-1] -= w * du[-1] * self.right.near
        lower[-1] -= w * du[-1] * self.right.next
        ab = np.zeros((3, interior.size))
        ab[0, 1:] = upper
        ab[1] = diag
        ab[2, :-1] = lower
        return R, ab


def _predictor(problem: _StepProblem, candidates: list[np.ndarray]) -> np.ndarray:
    """
    Starting iterate: the candidate on the branch of the terminal data with the
    smallest step residual. A fresh Dirichlet value next to the previous level
    can put the plain previous level on the far side of the 1 - b m pole.
    """
    best, best_norm = candidates[-1], math.inf
    for guess in candidates:
        try:
            off = problem.off_branch(guess)
            if off is not None and np.any(off):
                continue
            norm = float(np.max(np.abs(problem.residual(guess))))
        except ModelValidityError:
            continue
        if np.isfinite(norm) and norm < best_norm:
            best, best_norm = guess, norm
    return best


def _newton(problem: _StepProblem, guess: np.ndarray, config: SolverConfig,
            step: int, t: float) -> tuple[np.ndarray, int, float]:
    newton = config.newton
    u = guess.copy()
    history: list[float] = []
    for iteration in range(newton.max_iters + 1):
        try:
            R, ab = problem.residual_and_jacobian(u)
        except ModelValidityError as exc:
            raise DenominatorBreach(f"step {step}: {exc}", step=step) from exc
        norm = float(np.max(np.abs(R)))
        history.append(norm)
        logger.debug("step %d Newton iteration %d: |R| = %.3e", step, iteration, norm)
        if norm <= newton.tol:
            return u, iteration, norm
        if iteration == newton.max_iters:
            break
        direction = solve_banded((1, 1), ab, -R)
        off = problem.off_branch(u)
        lam = 1.0
        while True:
            trial = u + lam * direction
            try:
                trial_norm = float(np.max(np.abs(problem.residual(trial))))
                # no node may leave the branch of the terminal data
                crossed = off is not None and bool(np.any(problem.off_branch(trial) & ~off))
                if crossed and newton.damping is Damping.NONE:
                    raise NewtonDivergence(f"step {step}: full Newton step crossed the pole of the model",
                                           step, t, history)
                accepted = not crossed and (newton.damping is Damping.NONE
                                            or trial_norm < (1.0 - 1e-4 * lam) * norm)
            except ModelValidityError:
                if newton.damping is Damping.NONE:
                    raise NewtonDivergence(f"step {step}: full Newton step left the model domain",
                                           step, t, history) from None
                accepted = False
            if accepted and np.all(np.isfinite(trial)):
                break
            lam *= 0.5
            if lam < newton.min_step:
                raise NewtonDivergence(f"step {step}: line search stalled at |R| = {norm:.3e}",
                                       step, t, history)
        u = trial
    raise NewtonDivergence(f"step {step}: no convergence in {newton.max_iters} iterations",
                           step, t, history)


def _check_validity(kind: ModelKind, params: ModelParams, grid: Grid, u: np.ndarray,
                    config: SolverConfig, step: int, reference_sign: np.ndarray | None) -> np.ndarray | None:
    d = _derivatives(grid, u)
    S = grid.S[1:-1]
    den = denominator(kind, params, S, d.a, d.m)
    sign = None
    if den is not None:
        sign = np.sign(den)
        bad = np.abs(den) < config.guard
        if reference_sign is not None:
            bad |= sign != reference_sign
        if np.any(bad):
            nodes = (np.flatnonzero(bad) + 1).tolist()
            raise DenominatorBreach(
                f"step {step}: denominator crossed the guard or changed sign at {len(nodes)} node(s)",
                step=step, nodes=nodes)
    if config.check_parabolicity:
        try:
            diffusion = parabolicity(kind, params, S, d.a, d.m, config.guard)
        except ModelValidityError as exc:
            raise DenominatorBreach(f"step {step}: {exc}", step=step) from exc
        bad = diffusion <= 0
        if np.any(bad):
            nodes = (np.flatnonzero(bad) + 1).tolist()
            raise ParabolicityLoss(
                f"step {step}: d(v m)/dm <= 0 at {len(nodes)} node(s), the terminal value problem is ill-posed",
                step=step, nodes=nodes)
    return sign


def solve_terminal_value(kind: ModelKind, params: ModelParams, payoff: Payoff, grid: Grid,
                         config: SolverConfig | None = None) -> SolutionSurface:
    """
    Marches u from u(S, T) = payoff(S) back to t = 0.

    Raises:
        ValidationError: payoff not finite on the grid.
        DenominatorBreach: the denominator of the kind crossed the guard or changed sign.
        ParabolicityLoss: terminal data or an accepted step is backward-parabolic.
        NewtonDivergence: an implicit step did not converge.
    """
    config = config or SolverConfig()
    started = time.perf_counter()
    u0 = np.asarray(payoff(grid.S), dtype=float)
    if u0.shape != grid.S.shape or not np.all(np.isfinite(u0)):
        raise ValidationError("payoff must be finite on every grid node")
    op = SpatialOperator(kind, params, grid, config.guard)

    u = np.empty((grid.t.size, grid.n_nodes))
    residual = np.zeros_like(u)
    u[0] = u0
    reference_sign = _check_validity(kind, params, grid, u0, config, 0, None)
    try:
        L_old = op.apply(u0)
    except ModelValidityError as exc:
        raise DenominatorBreach(f"terminal data: {exc}", step=0) from exc

    iterations: list[int] = []
    norms: list[float] = []
    steps = tqdm(range(grid.n_steps), desc="time steps", leave=False, disable=not config.progress)
    for n in steps:
        t_new = float(grid.t[n + 1])
        dtau = float(grid.t[n] - grid.t[n + 1])
        theta = config.theta_at(n)
        left, right = config.boundary.closure(grid, t_new)
        problem = _StepProblem(op, u[n], L_old, dtau, theta, left, right, reference_sign)
        previous = u[n, 1:-1]
        candidates = [previous + dtau * L_old]
        if n > 0:
            ratio = dtau / float(grid.t[n - 1] - grid.t[n])
            candidates.append(previous + ratio * (previous - u[n - 1, 1:-1]))
        candidates.append(previous)
        guess = _predictor(problem, candidates)
        interior, count, norm = _newton(problem, guess, config, n + 1, t_new)
        u[n + 1] = _assemble(interior, left, right)
        residual[n + 1, 1:-1] = problem.residual(interior)
        _check_validity(kind, params, grid, u[n + 1], config, n + 1, reference_sign)
        L_old = op.apply(u[n + 1])
        iterations.append(count)
        norms.append(norm)

    claim = config.boundary.has_reference
    if not claim:
        logger.warning("no reference boundary data: the surface carries no convergence claim")
    wall = time.perf_counter() - started
    logger.info("solved %d steps on %d nodes in %.3fs with %d Newton iterations",
                grid.n_steps, grid.n_nodes, wall, sum(iterations))
    surface = SolutionSurface(grid, u, residual=residual, metadata={
        "kind": kind.name,
        "params": dataclasses.asdict(params),
        "config": config.describe(),
        "wall_time": wall,
        "newton_iterations": iterations,
        "residual_norms": norms,
        "convergence_claim": claim,
    })
    surface.delta = discrete_delta(surface)
    return surface


def discrete_delta(surface: SolutionSurface) -> np.ndarray:
    """du/dS by centered differences on the (non-uniform) S nodes, one-sided at the edges."""
    return np.gradient(surface.u, surface.S, axis=1, edge_order=2)


def consistency_check(kind: ModelKind, params: ModelParams, reference: SolutionEvaluator,
                      grid: Grid, scheme: TimeScheme = TimeScheme.TRAPEZOIDAL) -> float:
    """
    Max truncation residual (u_new - u_old)/dtau - theta L(u_new) - (1 - theta) L(u_old)
    of the discrete operator applied to the reference solution.
    """
    op = SpatialOperator(kind, params, grid, SolverConfig().guard)
    theta = scheme.theta
    worst = 0.0
    u_old = np.asarray(reference.value(grid.S, grid.t[0]), dtype=float)
    L_old = op.apply(u_old)
    for n in range(grid.n_steps):
        dtau = float(grid.t[n] - grid.t[n + 1])
        u_new = np.asarray(reference.value(grid.S, grid.t[n + 1]), dtype=float)
        L_new = op.apply(u_new)
        tau_res = (u_new[1:-1] - u_old[1:-1]) / dtau - theta * L_new - (1.0 - theta) * L_old
        worst = max(worst, float(np.max(np.abs(tau_res))))
        u_old, L_old = u_new, L_new
    return worst
