"""The reduced ODE, its polynomial form F(y, y_z) = 0 with y = v_z, and the two
explicit branches y_z = f(y) obtained by solving F for y_z."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .._cubic import Branch
from .._errors import DegenerateDenominator, NegativeRadicand, SingularY, ValidationError
from .._model import DENOMINATOR_GUARD
from ._params import ReductionParams


logger = logging.getLogger(__name__)

RADICAND_TOL = 1e-14


def reduced_residual(v, v_z, v_zz, params: ReductionParams, guard: float = DENOMINATOR_GUARD, w=None):
    """
    v_z + q W/(1 - b W)^2 with W = v_zz + xi v_z. v itself does not enter.
    A W known in closed form can be passed as `w`; v_zz is then ignored.

    Raises:
        DegenerateDenominator: |1 - b W| below the guard.
    """
    if w is None:
        w = np.asarray(v_zz, dtype=float) + params.xi * np.asarray(v_z, dtype=float)
    w = np.asarray(w, dtype=float)
    den = 1.0 - params.b * w
    if np.any(np.abs(den) < guard):
        raise DegenerateDenominator(f"1 - bW = {np.min(np.abs(den)):.3e} is below the guard {guard:.1e}")
    res = v_z + params.q * w / den ** 2
    return float(res) if np.ndim(res) == 0 else res


def polynomial_form_residual(y, y_z, params: ReductionParams):
    """F(y, y_z) = y y_z^2 + 2 xi (y^2 - xi y/b + xi q/(2b^2)) y_z + (y^2 - 2 xi y/b + (1 + xi q)/b^2) y."""
    q, b, xi = params.q, params.b, params.xi
    return (y * y_z ** 2
            + 2.0 * xi * (y ** 2 - xi * y / b + xi * q / (2.0 * b ** 2)) * y_z
            + (y ** 2 - 2.0 * xi * y / b + (1.0 + xi * q) / b ** 2) * y)


def discriminant_derivative(y, y_z, params: ReductionParams):
    """dF/dy_z, which vanishes together with F on the discriminant curve."""
    q, b, xi = params.q, params.b, params.xi
    return 2.0 * y * y_z + 2.0 * xi * (y ** 2 - xi * y / b + xi * q / (2.0 * b ** 2))


class SingularLine(NamedTuple):
    locus: float
    kind: str
    note: str


def singular_lines(params: ReductionParams) -> list[SingularLine]:
    """Loci where f(y) fails to be Lipschitz."""
    return [
        SingularLine(0.0, "simple_pole", "w ~ -q/(b^2 y) on the principal sheet, w ~ -(xi + 1/q) y on the second"),
        SingularLine(params.branch_locus, "branch_point", "square-root branch point, the two sheets meet"),
        SingularLine(math.inf, "second_order_pole", "w ~ -xi y at infinity"),
    ]


@dataclass(frozen=True)
class ConstantSolutions:
    values: tuple[float, ...]
    exceptional: float | None = None

    @property
    def has_exceptional(self) -> bool:
        return self.exceptional is not None


def constant_solutions(params: ReductionParams) -> ConstantSolutions:
    """
    Real roots of F(y, 0) = 0, i.e. y = 0 and y = (xi +- sqrt(-xi q))/b, plus the
    exceptional solution y = -xi/b that exists exactly when q = -4 xi.
    """
    q, b, xi = params.q, params.b, params.xi
    values = [0.0]
    radicand = -xi * q
    if radicand >= 0:
        root = math.sqrt(radicand)
        values.extend(sorted({(xi + root) / b, (xi - root) / b}))
    exceptional = -xi / b if math.isclose(q, -4.0 * xi, rel_tol=0.0, abs_tol=1e-14) else None
    return ConstantSolutions(tuple(values), exceptional)


def _radicand(y, params: ReductionParams):
    return params.q / params.b ** 3 * (params.branch_locus - y)


def rhs_f(y, params: ReductionParams, branch: Branch = Branch.PLUS):
    """
    y_z = (-xi y^2 + y/b - q/(2b^2) +- sqrt((q/b^3)(q/(4b) - y))) / y,
    the sign being that of the branch.

    Raises:
        SingularY: y = 0.
        NegativeRadicand: y beyond the branch point.
    """
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr == 0):
        raise SingularY("y = 0 is a singular line of the reduced equation")
    radicand = _radicand(y_arr, params)
    scale = max(1.0, abs(params.q / params.b ** 3) * max(1.0, float(np.max(np.abs(y_arr)))))
    if np.any(radicand < -RADICAND_TOL * scale):
        raise NegativeRadicand(f"radicand {np.min(radicand):.3e} < 0 at y = {y}")
    root = np.sqrt(np.maximum(radicand, 0.0))
    sign = 1.0 if branch is Branch.PLUS else -1.0
    q, b, xi = params.q, params.b, params.xi
    y_z = (-xi * y_arr ** 2 + y_arr / b - q / (2.0 * b ** 2) + sign * root) / y_arr
    return float(y_z) if np.ndim(y) == 0 else y_z


def branch_point_value(params: ReductionParams) -> float:
    """w at the branch point, -(1/b)(1 + xi q/4)."""
    if params.q == 0:
        raise ValidationError("q = 0 puts the branch point on the pole y = 0")
    return rhs_f(params.branch_locus, params, Branch.PLUS)


def local_exponent(params: ReductionParams, locus: str, branch: Branch = Branch.PLUS,
                   offsets=(1e-3, 1e-4, 1e-5)) -> float:
    """
    Log-log slope of the local behavior of f near a singular line.

    locus "branch": |f(y) - w(branch point)| against |y - q/(4b)|, expected 1/2.
    locus "zero": |f(y)| against |y|, expected -1 on the sheet carrying the
    pole and +1 on the other one.
    """
    offsets = np.asarray(offsets, dtype=float)
    match locus:
        case "branch":
            # step into the side where the radicand is non-negative
            side = -np.sign(params.q / params.b ** 3)
            y = params.branch_locus + side * offsets
            values = np.abs(rhs_f(y, params, branch) - branch_point_value(params))
        case "zero":
            side = 1.0 if params.branch_locus < 0 else -1.0
            y = side * offsets
            values = np.abs(rhs_f(y, params, branch))
        case _:
            raise ValidationError(f"locus must be 'branch' or 'zero', got {locus!r}")
    slope, _ = np.polyfit(np.log(offsets), np.log(values), 1)
    logger.debug("local exponent at %s on branch %s: %.4f", locus, branch.value, slope)
    return float(slope)


def p_from_vz(v_z, params: ReductionParams):
    """
    Uniformizing parameter p = sqrt(1 - (4b/q) v_z) >= 0.

    Raises:
        NegativeRadicand: 1 - (4b/q) v_z < 0.
    """
    if params.q == 0:
        raise ValidationError("p is undefined for q = 0")
    radicand = 1.0 - 4.0 * params.b / params.q * np.asarray(v_z, dtype=float)
    if np.any(radicand < -RADICAND_TOL):
        raise NegativeRadicand(f"1 - (4b/q) v_z = {np.min(radicand):.3e} < 0")
    p = np.sqrt(np.maximum(radicand, 0.0))
    return float(p) if np.ndim(v_z) == 0 else p


def zeta_of_p(p, params: ReductionParams):
    """y = v_z as a function of the uniformizing parameter, q (1 - p^2)/(4b)."""
    return params.q * (1.0 - np.asarray(p, dtype=float) ** 2) / (4.0 * params.b)
