from ._params import ReductionParams, IntegrationControls
from ._equations import (
    reduced_residual,
    polynomial_form_residual,
    discriminant_derivative,
    singular_lines,
    SingularLine,
    constant_solutions,
    ConstantSolutions,
    rhs_f,
    branch_point_value,
    local_exponent,
    p_from_vz,
    zeta_of_p,
)
from ._integrate import YTrajectory, integrate_y
from ._quadrature import uniformized_quadrature, quadrature_closed_form, quadrature_poles


__all__ = [
    "ReductionParams",
    "IntegrationControls",
    "reduced_residual",
    "polynomial_form_residual",
    "discriminant_derivative",
    "singular_lines",
    "SingularLine",
    "constant_solutions",
    "ConstantSolutions",
    "rhs_f",
    "branch_point_value",
    "local_exponent",
    "p_from_vz",
    "zeta_of_p",
    "YTrajectory",
    "integrate_y",
    "uniformized_quadrature",
    "quadrature_closed_form",
    "quadrature_poles",
]
