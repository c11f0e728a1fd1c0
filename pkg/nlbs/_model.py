"""Pointwise evaluation of the illiquid-market PDE catalogue.

Every kind has the form u_t + 1/2 sigma^2 v(S, rho u_S, rho u_SS) S^2 u_SS = 0 and
differs only in the adjusted volatility factor v. The functions here accept
floats or numpy arrays and never differentiate the candidate solution.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from ._errors import DegenerateDenominator, Unsupported, ValidationError
from ._params import Jet2, ModelParams


logger = logging.getLogger(__name__)

DENOMINATOR_GUARD = 1e-10


class KindTag(Enum):
    CJP = "cjp"
    FREY_SDE = "frey"
    REACTION_GENERAL = "reaction"
    SIRCAR = "sircar"


@dataclass(frozen=True)
class ModelKind:
    """
    Selector of the nonlinearity v. For REACTION_GENERAL, g and g_alpha are the
    reaction-function factor and its derivative, both scalar functions of alpha.
    """
    tag: KindTag
    g: Callable[[float], float] | None = None
    g_alpha: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.tag is KindTag.REACTION_GENERAL and (self.g is None or self.g_alpha is None):
            raise ValidationError("REACTION_GENERAL needs both g and g_alpha")

    @classmethod
    def cjp(cls) -> ModelKind:
        return cls(KindTag.CJP)

    @classmethod
    def frey(cls) -> ModelKind:
        return cls(KindTag.FREY_SDE)

    @classmethod
    def sircar(cls) -> ModelKind:
        return cls(KindTag.SIRCAR)

    @classmethod
    def reaction(cls, g: Callable[[float], float], g_alpha: Callable[[float], float]) -> ModelKind:
        return cls(KindTag.REACTION_GENERAL, g, g_alpha)

    @classmethod
    def from_name(cls, name: str) -> ModelKind:
        try:
            tag = KindTag(name.lower())
        except ValueError:
            raise ValidationError(f"unknown model kind {name!r}; expected one of {[t.value for t in KindTag]}")
        if tag is KindTag.REACTION_GENERAL:
            raise ValidationError("the reaction kind needs caller-supplied g and g_alpha")
        return cls(tag)

    @property
    def name(self) -> str:
        return self.tag.value


def _apply(fn: Callable[[float], float], alpha):
    if np.ndim(alpha) == 0:
        return float(fn(float(alpha)))
    return np.vectorize(fn, otypes=[float])(alpha)


def _reaction_ratio(kind: ModelKind, alpha):
    g = _apply(kind.g, alpha)
    if np.any(np.asarray(g) <= 0):
        raise ValidationError(f"reaction factor g must be positive, got {g}")
    return _apply(kind.g_alpha, alpha) / g


def _reaction_ratio_derivative(kind: ModelKind, alpha):
    h = 1e-6 * np.maximum(1.0, np.abs(alpha))
    return (_reaction_ratio(kind, alpha + h) - _reaction_ratio(kind, alpha - h)) / (2 * h)


def denominator(kind: ModelKind, params: ModelParams, S, a, m):
    """
    Denominator of the nonlinearity, with a = u_S and m = S u_SS.
    Returns None for CJP, which has none.
    """
    rho = params.rho
    match kind.tag:
        case KindTag.CJP:
            return None
        case KindTag.FREY_SDE:
            return 1.0 - rho * params.omega * np.power(S, params.k) * m
        case KindTag.SIRCAR:
            return 1.0 - rho * a - rho * m
        case KindTag.REACTION_GENERAL:
            return 1.0 - rho * _reaction_ratio(kind, rho * a) * m


def _guard(den, guard: float = DENOMINATOR_GUARD):
    if den is not None and np.any(np.abs(den) < guard):
        raise DegenerateDenominator(f"denominator {np.min(np.abs(den)):.3e} is below the guard {guard:.1e}")


def volatility_factor(kind: ModelKind, params: ModelParams, S, a, m, guard: float = DENOMINATOR_GUARD):
    den = denominator(kind, params, S, a, m)
    _guard(den, guard)
    match kind.tag:
        case KindTag.CJP:
            return 1.0 + 2.0 * params.rho * m
        case KindTag.SIRCAR:
            return (1.0 - params.rho * a) ** 2 / den ** 2
        case _:
            return 1.0 / den ** 2


def volatility_factor_jacobian(kind: ModelKind, params: ModelParams, S, a, m, guard: float = DENOMINATOR_GUARD):
    """
    Returns (v, dv/da, dv/dm) at a = u_S, m = S u_SS.
    """
    rho = params.rho
    den = denominator(kind, params, S, a, m)
    _guard(den, guard)
    zero = np.zeros_like(np.asarray(m, dtype=float))
    match kind.tag:
        case KindTag.CJP:
            v = 1.0 + 2.0 * rho * m
            return v, zero, zero + 2.0 * rho
        case KindTag.FREY_SDE:
            scale = rho * params.omega * np.power(S, params.k)
            return 1.0 / den ** 2, zero, 2.0 * scale / den ** 3
        case KindTag.SIRCAR:
            num = (1.0 - rho * a) ** 2
            v = num / den ** 2
            dv_da = -2.0 * rho * (1.0 - rho * a) / den ** 2 + 2.0 * rho * num / den ** 3
            dv_dm = 2.0 * rho * num / den ** 3
            return v, dv_da, dv_dm
        case KindTag.REACTION_GENERAL:
            alpha = rho * a
            ratio = _reaction_ratio(kind, alpha)
            dratio = _reaction_ratio_derivative(kind, alpha)
            v = 1.0 / den ** 2
            return v, 2.0 * rho * rho * dratio * m / den ** 3, 2.0 * rho * ratio / den ** 3


def parabolicity(kind: ModelKind, params: ModelParams, S, a, m, guard: float = DENOMINATOR_GUARD):
    """
    d(v m)/dm, the effective diffusion of the nonlinear flux. The terminal-value
    problem is well posed only where it is positive.
    """
    v, _, dv_dm = volatility_factor_jacobian(kind, params, S, a, m, guard)
    return v + m * dv_dm


def adjusted_volatility_factor(kind: ModelKind, params: ModelParams, jet: Jet2):
    """
    Multiplicative factor v such that the PDE reads u_t + 1/2 sigma^2 v S^2 u_SS = 0.

    Raises:
        DegenerateDenominator: the denominator of the kind is below the guard.
    """
    return volatility_factor(kind, params, jet.S, jet.u_S, jet.S * jet.u_SS)


def pde_residual(kind: ModelKind, params: ModelParams, jet: Jet2):
    v = adjusted_volatility_factor(kind, params, jet)
    return jet.u_t + 0.5 * params.sigma ** 2 * v * jet.S ** 2 * jet.u_SS


def black_scholes_residual(params: ModelParams, jet: Jet2):
    return jet.u_t + 0.5 * params.sigma ** 2 * jet.S ** 2 * jet.u_SS


def linearize(kind: ModelKind) -> ModelKind:
    """First order expansion in rho of FreySDE and Sircar, both give CJP."""
    if kind.tag in (KindTag.FREY_SDE, KindTag.SIRCAR):
        return ModelKind.cjp()
    raise Unsupported(f"no first-order linearization is defined for {kind.name}")


def check_reaction_derivative(g: Callable[[float], float], g_alpha: Callable[[float], float],
                              alpha: float, h: float = 1e-6) -> float:
    """Diagnostic: |central difference of g - g_alpha| at alpha."""
    return abs((g(alpha + h) - g(alpha - h)) / (2 * h) - g_alpha(alpha))
