"""Closed-form invariant solutions of the reduced-form SDE pricing equation.

With z = log S - sigma^2 t / 8 every solution has the form u = S v(z) + d2. For
the families carried by a uniformizing root p of (p+1)^2 (p-2) = 2c exp(-3z/2):

    v_z  = (p^2 - 1) / b
    v_zz = -p (p+1) (p-2) / (b (p-1))

and v is evaluated from the closed forms in u-space (divided by S).
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ._cubic import RootState, root_r, root_u1, root_u2, root_u3_lower, root_u3_upper
from ._errors import NonPositivePrice, OutOfDomain, ValidationError, ZeroB
from ._family import FamilyTag, InvariantPoint, PriceInterval, SolutionFamily
from ._params import Jet2, ModelParams


logger = logging.getLogger(__name__)


def _is_scalar(*values) -> bool:
    return all(np.ndim(v) == 0 for v in values)


def _out(value, scalar: bool):
    return float(value) if scalar else value


def to_invariant(S, t, params: ModelParams):
    """
    Invariant coordinate z = log S - (sigma^2/8) t.

    Raises:
        NonPositivePrice: S <= 0.
    """
    S_arr = np.asarray(S, dtype=float)
    if np.any(S_arr <= 0):
        raise NonPositivePrice(f"price must be positive, got {S}")
    z = np.log(S_arr) + params.speed * np.asarray(t, dtype=float)
    return _out(z, _is_scalar(S, t))


def boundary_price(family: SolutionFamily, params: ModelParams, t):
    """S on the curve where the cubic has a double root, (|c|/2)^(2/3) exp(sigma^2 t / 8)."""
    return (family.abs_c / 2.0) ** (2.0 / 3.0) * np.exp(params.sigma ** 2 * np.asarray(t, dtype=float) / 8.0)


def domain_of(family: SolutionFamily, params: ModelParams, t: float) -> PriceInterval:
    match family.tag:
        case FamilyTag.U1 | FamilyTag.U2:
            return PriceInterval(float(boundary_price(family, params, t)), math.inf, lower_closed=True)
        case FamilyTag.U3 if family.chart == 2:
            return PriceInterval(float(boundary_price(family, params, t)), math.inf, lower_closed=True)
        case FamilyTag.U3 if family.chart == 1:
            return PriceInterval(0.0, float(boundary_price(family, params, t)))
        case _:
            return PriceInterval(0.0, math.inf)


def in_domain(family: SolutionFamily, S, t, params: ModelParams):
    """Boolean mask of the (S, t) points inside the family's domain."""
    S = np.asarray(S, dtype=float)
    t = np.asarray(t, dtype=float)
    positive = S > 0
    if not (family.tag.is_bounded_below or (family.tag is FamilyTag.U3 and family.chart is not None)):
        return positive
    bound = boundary_price(family, params, t)
    if family.tag is FamilyTag.U3 and family.chart == 1:
        return positive & (S < bound)
    return positive & (S >= bound * (1.0 - 1e-13))


def check_family_params(family: SolutionFamily, params: ModelParams) -> None:
    if family.tag is FamilyTag.LINEAR:
        if params.b != 0:
            raise ValidationError(f"the LINEAR family solves the b = 0 equation, got b = {params.b}")
    elif family.tag.is_nonlinear and params.b == 0:
        raise ZeroB(f"family {family.label} needs b = omega*rho != 0")


def _three_root_load(family: SolutionFamily, z):
    """x = |c| exp(-3z/2); the three-root region is x <= 2."""
    return family.abs_c * np.exp(-1.5 * np.asarray(z, dtype=float))


def family_root(family: SolutionFamily, z) -> RootState:
    """
    Uniformizing root selected by the family (and chart).

    Raises:
        OutOfDomain: z on the wrong side of z* for a chart-restricted family.
    """
    z = np.asarray(z, dtype=float)
    match family.tag:
        case FamilyTag.R:
            return root_r(family.c * np.exp(-1.5 * z))
        case FamilyTag.U1:
            return root_u1(_three_root_load(family, z), boundary=family.z_star())
        case FamilyTag.U2:
            return root_u2(_three_root_load(family, z), boundary=family.z_star())
        case FamilyTag.U3:
            x = _three_root_load(family, z)
            if family.chart == 1:
                return root_u3_lower(x, boundary=family.z_star())
            if family.chart == 2:
                return root_u3_upper(x, boundary=family.z_star())
            lower = x > 2.0
            upper_state = root_u3_upper(np.where(lower, 2.0, x))
            lower_state = root_u3_lower(np.where(lower, x, 2.0))
            return RootState(*(np.where(lower, lo, up) for lo, up in zip(lower_state, upper_state)))
    raise ValidationError(f"family {family.label} is not carried by a uniformizing root")


def _core_v(family: SolutionFamily, z, root: RootState | None, b: float):
    """v without the d term."""
    match family.tag:
        case FamilyTag.R:
            return (-(root.p ** 2 - 2.0) - 2.0 * np.log(root.p_minus_2)) / b
        case FamilyTag.U1 | FamilyTag.U2 | FamilyTag.U3:
            return (-z - (root.p ** 2 - 2.0)
                    - 4.0 / 3.0 * np.log(np.abs(root.p_plus_1))
                    - 8.0 / 3.0 * np.log(np.abs(root.p_minus_2) / 4.0)) / b
        case FamilyTag.TRIVIAL_LINEAR:
            return np.zeros_like(z)
        case FamilyTag.LOG_PLUS:
            return 3.0 * z / b
        case FamilyTag.LOG_MINUS:
            return -z / b
        case FamilyTag.LINEAR:
            return family.c * np.exp(-0.75 * z)


def _slopes(family: SolutionFamily, z, root: RootState | None, b: float):
    """(v_z, v_zz, v_z + v_zz)."""
    if root is not None:
        p_minus_1 = root.p_minus_2 + 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            v_z = root.p_plus_1 * (root.p - 1.0) / b
            v_zz = -root.p * root.p_plus_1 * root.p_minus_2 / (b * p_minus_1)
            w = root.p_plus_1 / (b * p_minus_1)
        return v_z, v_zz, w
    zero = np.zeros_like(z)
    match family.tag:
        case FamilyTag.TRIVIAL_LINEAR:
            return zero, zero, zero
        case FamilyTag.LOG_PLUS:
            return zero + 3.0 / b, zero, zero + 3.0 / b
        case FamilyTag.LOG_MINUS:
            return zero - 1.0 / b, zero, zero - 1.0 / b
        case FamilyTag.LINEAR:
            e = family.c * np.exp(-0.75 * z)
            return -0.75 * e, 0.5625 * e, -0.1875 * e


def reduced_jet(family: SolutionFamily, z, params: ModelParams):
    """
    (v, v_z, v_zz) of the family at z, v including the d term.

    Raises:
        OutOfDomain, ZeroB
    """
    check_family_params(family, params)
    scalar = _is_scalar(z)
    z = np.asarray(z, dtype=float)
    root = family_root(family, z) if family.tag.needs_root else None
    v = _core_v(family, z, root, params.b) + family.d
    v_z, v_zz, _ = _slopes(family, z, root, params.b)
    return _out(v, scalar), _out(v_z, scalar), _out(v_zz, scalar)


def eval_v(family: SolutionFamily, z, params: ModelParams):
    return reduced_jet(family, z, params)[0]


def eval_vz(family: SolutionFamily, z, params: ModelParams):
    return reduced_jet(family, z, params)[1]


def eval_vzz(family: SolutionFamily, z, params: ModelParams):
    return reduced_jet(family, z, params)[2]


def eval_w(family: SolutionFamily, z, params: ModelParams):
    """
    W = v_z + v_zz = S u_SS, straight from the root. Far out on the U3 chart-1
    side v_z and v_zz nearly cancel, so the sum must not be formed from them.
    """
    check_family_params(family, params)
    scalar = _is_scalar(z)
    z = np.asarray(z, dtype=float)
    root = family_root(family, z) if family.tag.needs_root else None
    return _out(_slopes(family, z, root, params.b)[2], scalar)


def _require_domain(family: SolutionFamily, S, t, params: ModelParams) -> None:
    mask = in_domain(family, S, t, params)
    if not np.all(mask):
        bound = boundary_price(family, params, t)
        raise OutOfDomain(f"(S, t) outside the domain of family {family.label}",
                          boundary=float(np.min(bound)))


def eval_u(family: SolutionFamily, S, t, params: ModelParams):
    """
    u(S, t) = S v(z) + d2.

    Raises:
        NonPositivePrice, OutOfDomain, ZeroB
    """
    scalar = _is_scalar(S, t)
    z = to_invariant(S, t, params)
    _require_domain(family, S, t, params)
    v = eval_v(family, z, params)
    return _out(np.asarray(S, dtype=float) * v + family.d2, scalar)


def eval_delta(family: SolutionFamily, S, t, params: ModelParams):
    """Delta = du/dS = v + v_z, d included in v."""
    scalar = _is_scalar(S, t)
    z = to_invariant(S, t, params)
    _require_domain(family, S, t, params)
    v, v_z, _ = reduced_jet(family, z, params)
    return _out(np.asarray(v) + np.asarray(v_z), scalar)


def eval_jet(family: SolutionFamily, S, t, params: ModelParams) -> Jet2:
    """Analytic 2-jet (u, u_t, u_S, u_SS) of the family at (S, t)."""
    check_family_params(family, params)
    z = to_invariant(S, t, params)
    _require_domain(family, S, t, params)
    z_arr = np.asarray(z, dtype=float)
    S_arr = np.asarray(S, dtype=float)
    root = family_root(family, z_arr) if family.tag.needs_root else None
    v = _core_v(family, z_arr, root, params.b) + family.d
    v_z, _, w = _slopes(family, z_arr, root, params.b)
    scalar = _is_scalar(S, t)
    return Jet2(
        S=_out(S_arr, scalar),
        t=_out(np.asarray(t, dtype=float), scalar),
        u=_out(S_arr * v + family.d2, scalar),
        u_t=_out(params.speed * S_arr * v_z, scalar),
        u_S=_out(v + v_z, scalar),
        u_SS=_out(w / S_arr, scalar),
    )


def invariant_point(S: float, t: float, params: ModelParams,
                    family: SolutionFamily | None = None) -> InvariantPoint:
    z = to_invariant(S, t, params)
    p = None
    if family is not None and family.tag.needs_root:
        p = float(family_root(family, z).p)
    return InvariantPoint(S=float(S), t=float(t), z=z, p=p)


def delta_limit(family: SolutionFamily, params: ModelParams) -> float:
    """
    Large-S limit of Delta for U2 and the upper U3 chart: the slope of the
    leading linear term. It depends on |c|.
    """
    if family.tag not in (FamilyTag.U2, FamilyTag.U3):
        raise ValidationError(f"the Delta limit is defined for U2 and U3, not {family.label}")
    limit = (1.0 + 2.0 / 3.0 * math.log(2.0 ** 7 / (3.0 ** 3 * family.abs_c))) / params.b + family.d
    logger.debug("Delta limit %.12g for |c| = %g depends on c", limit, family.abs_c)
    return limit
