"""Large-S (and, for the lower U3 chart, small-S) expansions of the exact families."""

from __future__ import annotations

import logging
import math
from enum import Enum
from typing import Callable

import numpy as np

from ._errors import Unsupported, ValidationError
from ._family import FamilyTag, SolutionFamily
from ._params import ModelParams


logger = logging.getLogger(__name__)


class ExpansionSource(Enum):
    DERIVED = "derived"  # re-derived from the cubic; consistent with eval_u
    PRINTED = "printed"  # coefficients as published


def _linear_coefficient_u2(abs_c: float) -> float:
    return 1.0 + 2.0 / 3.0 * math.log(2.0 ** 7 / (3.0 ** 3 * abs_c))


def asymptotic_terms(family: SolutionFamily, S, t, params: ModelParams,
                     source: ExpansionSource = ExpansionSource.DERIVED) -> list:
    """
    Ordered terms of the expansion of u - d S - d2.

    Raises:
        Unsupported: no expansion is available for the family/chart/source.
    """
    S = np.asarray(S, dtype=float)
    b = params.b
    s2t = params.sigma ** 2 * t
    c = family.c
    abs_c = family.abs_c
    log_term = (3.0 / b) * S * np.log(S)
    match family.tag, family.chart:
        case FamilyTag.R, _:
            if source is ExpansionSource.PRINTED:
                return [log_term]
            return [
                log_term,
                S / b * (4.0 * math.log(3.0) - 2.0 - 2.0 * math.log(2.0 * c) - 3.0 * s2t / 8.0),
                -16.0 / (27.0 * b) * c * math.exp(3.0 * s2t / 16.0) * S ** -0.5,
            ]
        case FamilyTag.U1, _:
            sign = -1.0 if source is ExpansionSource.PRINTED else 1.0
            return [
                log_term,
                S / b * (4.0 * math.log(3.0) - 2.0 + sign * 8.0 / 3.0 * math.log(2.0 / abs_c) - 3.0 * s2t / 8.0),
                16.0 / (27.0 * b) * abs_c * math.exp(3.0 * s2t / 16.0) * S ** -0.5,
            ]
        case (FamilyTag.U2, _) | (FamilyTag.U3, 2):
            sign = 1.0 if family.tag is FamilyTag.U2 else -1.0
            return [
                _linear_coefficient_u2(abs_c) / b * S,
                sign * 8.0 / (3.0 * b) * math.sqrt(2.0 * abs_c / 3.0) * math.exp(3.0 * s2t / 32.0) * S ** 0.25,
                -8.0 / (27.0 * b) * abs_c * math.exp(3.0 * s2t / 16.0) * S ** -0.5,
            ]
        case FamilyTag.U3, 1:
            if source is ExpansionSource.PRINTED:
                return [-14.0 / b * S * np.log(S)]
            return [
                np.full_like(S, -(2.0 * abs_c) ** (2.0 / 3.0) * math.exp(s2t / 8.0) / b),
                S / b * (np.log(S) - s2t / 8.0 + 4.0 * math.log(2.0) - 4.0 / 3.0 * math.log(abs_c)),
                -8.0 / (3.0 * b) * (2.0 * abs_c) ** (-1.0 / 3.0) * math.exp(-s2t / 16.0) * S ** 1.5,
            ]
    raise Unsupported(f"no asymptotic expansion for family {family.label}")


def eval_asymptotic(family: SolutionFamily, S, t, params: ModelParams, order: int = 3,
                    source: ExpansionSource = ExpansionSource.DERIVED):
    """
    Partial sum of the expansion through `order` terms, plus d S + d2.

    R and U1 expand as S -> infinity with leading term (3/b) S log S, U2 and the
    upper U3 chart with a linear leading term, the lower U3 chart as S -> 0.
    """
    terms = asymptotic_terms(family, S, t, params, source)
    if not 1 <= order <= len(terms):
        raise ValidationError(f"order must be between 1 and {len(terms)}, got {order}")
    total = sum(terms[:order]) + family.d * np.asarray(S, dtype=float) + family.d2
    return float(total) if np.ndim(S) == 0 else total


def richardson_leading_coefficient(fn: Callable[[float], float], S: float,
                                   ratio: float = 16.0, exponent: float = 0.75) -> float:
    """
    Extracts C from fn(S)/S = C + k S^(-exponent) + ... using fn at S and ratio*S.
    """
    f0 = fn(S) / S
    f1 = fn(ratio * S) / (ratio * S)
    weight = ratio ** exponent
    return (weight * f1 - f0) / (weight - 1.0)


def remainder_slope(family: SolutionFamily, prices, t: float, params: ModelParams, order: int,
                    exact: Callable[[np.ndarray], np.ndarray]) -> float:
    """Log-log slope of |u - partial sum| across the given prices."""
    prices = np.asarray(prices, dtype=float)
    remainder = np.abs(exact(prices) - eval_asymptotic(family, prices, t, params, order))
    slope, _ = np.polyfit(np.log(prices), np.log(remainder), 1)
    return float(slope)
