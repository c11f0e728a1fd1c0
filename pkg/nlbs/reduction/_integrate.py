from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .._cubic import Branch
from .._errors import SingularEncounter, ValidationError
from ._params import IntegrationControls, ReductionParams


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class YTrajectory:
    """
    Samples of y = v_z along monotone z.

    Args:
        z: ordered z samples, starting at z0.
        y: y at each z.
        branch: the branch of y_z = f(y) that was followed.
        event: None when z1 was reached, otherwise "zero" or "branch_point"
            for the singular line the trajectory stopped in front of.
    """
    z: np.ndarray
    y: np.ndarray
    branch: Branch
    event: str | None = None
    n_evaluations: int = field(default=0, compare=False)

    @property
    def completed(self) -> bool:
        return self.event is None

    def __len__(self):
        return len(self.z)


def _vector_field(params: ReductionParams, branch: Branch):
    q, b, xi = params.q, params.b, params.xi
    sign = 1.0 if branch is Branch.PLUS else -1.0
    scale = q / b ** 3
    locus = params.branch_locus

    def f(_z, state):
        y = state[0]
        # Runge-Kutta stages may overshoot the branch line before the event fires
        root = np.sqrt(max(scale * (locus - y), 0.0))
        return [(-xi * y * y + y / b - q / (2.0 * b * b) + sign * root) / y]

    return f


def _stop_at(distance_fn):
    def event(_z, state):
        return distance_fn(state[0])
    event.terminal = True
    return event


def integrate_y(y0: float, z0: float, z1: float, params: ReductionParams,
                branch: Branch = Branch.PLUS,
                controls: IntegrationControls | None = None,
                t_eval=None) -> YTrajectory:
    """
    Integrates y_z = f(y) on the chosen branch from (z0, y0) towards z1.

    The march stops `controls.margin` in front of y = 0 or y = q/(4b); the stop is
    reported in YTrajectory.event. A constant solution of the branch, f(y0) = 0,
    stays constant.

    Raises:
        SingularEncounter: y0 already lies within the margin of a singular line,
            or the integrator failed.
    """
    controls = controls or IntegrationControls()
    if not (np.isfinite(z0) and np.isfinite(z1)):
        raise ValidationError(f"z interval must be finite, got [{z0}, {z1}]")
    locus = params.branch_locus
    if abs(y0) <= controls.margin:
        raise SingularEncounter(f"y0 = {y0} lies on the singular line y = 0", z=z0, y=y0)
    if abs(y0 - locus) <= controls.margin:
        raise SingularEncounter(f"y0 = {y0} lies on the branch line y = {locus}", z=z0, y=y0)

    z_samples = np.linspace(z0, z1, 101) if t_eval is None else np.asarray(t_eval, dtype=float)
    events = [
        _stop_at(lambda y: abs(y) - controls.margin),
        _stop_at(lambda y: abs(y - locus) - controls.margin),
    ]
    sol = integrate.solve_ivp(
        _vector_field(params, branch), (z0, z1), [y0],
        method=controls.method, rtol=controls.rtol, atol=controls.atol,
        max_step=controls.max_step, events=events, t_eval=z_samples,
    )
    if sol.status == -1:
        last = (float(sol.t[-1]), float(sol.y[0, -1])) if len(sol.t) else (z0, y0)
        raise SingularEncounter(f"integration failed: {sol.message}", z=last[0], y=last[1])

    z, y = sol.t, sol.y[0]
    event = None
    if sol.status == 1:
        names = ("zero", "branch_point")
        hit = next(i for i, t in enumerate(sol.t_events) if len(t) > 0)
        event = names[hit]
        z_hit, y_hit = sol.t_events[hit][0], sol.y_events[hit][0][0]
        z, y = np.append(z, z_hit), np.append(y, y_hit)
        logger.info("trajectory from y0=%g stopped at z=%g in front of the %s line", y0, z_hit, event)
    return YTrajectory(z=z, y=y, branch=branch, event=event, n_evaluations=sol.nfev)
