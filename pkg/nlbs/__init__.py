from ._errors import (
    NlbsError,
    ValidationError,
    ZeroB,
    ZeroC,
    Unsupported,
    DomainError,
    NonPositivePrice,
    OutOfDomain,
    NegativeRadicand,
    SingularY,
    PoleOnPath,
    SingularEncounter,
    ModelValidityError,
    DegenerateDenominator,
    DenominatorBreach,
    ParabolicityLoss,
    SingularAction,
    NewtonDivergence,
)
from ._params import ModelParams, Jet2
from ._model import (
    KindTag,
    ModelKind,
    adjusted_volatility_factor,
    pde_residual,
    black_scholes_residual,
    parabolicity,
    linearize,
    check_reaction_derivative,
)
from ._family import FamilyTag, SolutionFamily, PriceInterval, InvariantPoint
from ._cubic import Branch, solve_p
from ._exact import (
    to_invariant,
    boundary_price,
    domain_of,
    in_domain,
    check_family_params,
    eval_v,
    eval_vz,
    eval_vzz,
    eval_w,
    eval_u,
    eval_delta,
    eval_jet,
    invariant_point,
    delta_limit,
)
from ._evaluator import SolutionEvaluator, ExactSolution
from ._symmetry import SymmetryAction, TransformedSolution, apply_symmetry
from ._asymptotic import (
    ExpansionSource,
    asymptotic_terms,
    eval_asymptotic,
    richardson_leading_coefficient,
    remainder_slope,
)
from ._printed import printed_v
from ._conformance import (
    oracle_v,
    quadrature_check,
    pde_gate,
    ode_gate,
    GateResult,
    Discrepancy,
    ConformanceReport,
    conformance_report,
    default_families,
)


__all__ = [
    "NlbsError",
    "ValidationError",
    "ZeroB",
    "ZeroC",
    "Unsupported",
    "DomainError",
    "NonPositivePrice",
    "OutOfDomain",
    "NegativeRadicand",
    "SingularY",
    "PoleOnPath",
    "SingularEncounter",
    "ModelValidityError",
    "DegenerateDenominator",
    "DenominatorBreach",
    "ParabolicityLoss",
    "SingularAction",
    "NewtonDivergence",
    "ModelParams",
    "Jet2",
    "KindTag",
    "ModelKind",
    "adjusted_volatility_factor",
    "pde_residual",
    "black_scholes_residual",
    "parabolicity",
    "linearize",
    "check_reaction_derivative",
    "FamilyTag",
    "SolutionFamily",
    "PriceInterval",
    "InvariantPoint",
    "Branch",
    "solve_p",
    "to_invariant",
    "boundary_price",
    "domain_of",
    "in_domain",
    "check_family_params",
    "eval_v",
    "eval_vz",
    "eval_vzz",
    "eval_w",
    "eval_u",
    "eval_delta",
    "eval_jet",
    "invariant_point",
    "delta_limit",
    "SolutionEvaluator",
    "ExactSolution",
    "SymmetryAction",
    "TransformedSolution",
    "apply_symmetry",
    "ExpansionSource",
    "asymptotic_terms",
    "eval_asymptotic",
    "richardson_leading_coefficient",
    "remainder_slope",
    "printed_v",
    "oracle_v",
    "quadrature_check",
    "pde_gate",
    "ode_gate",
    "GateResult",
    "Discrepancy",
    "ConformanceReport",
    "conformance_report",
    "default_families",
]
