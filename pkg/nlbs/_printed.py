"""
The published v-space closed forms, evaluated verbatim.

They are never used for pricing: the conformance report compares them with the
cubic-root oracle. Values outside the real range of a printed expression come
back as nan. The d term is not included.
"""

from __future__ import annotations

import numpy as np

from ._errors import Unsupported, ZeroB
from ._family import FamilyTag, SolutionFamily
from ._params import ModelParams


def _printed_r(z, c, b):
    e = c * np.exp(-1.5 * z)
    A = 1.0 + e + np.sqrt(2.0 * e + e * e)
    return (-A ** (-2.0 / 3.0) / b - A ** (2.0 / 3.0) / b
            - 2.0 / b * np.log(A ** (-1.0 / 3.0) + A ** (1.0 / 3.0) - 2.0))


def _printed_u1(z, X, b):
    ac = np.arccos(X)
    return (-z / b - 2.0 / b * np.cos(2.0 / 3.0 * ac)
            - 4.0 / (3.0 * b) * np.log(1.0 + 2.0 * np.cos(ac / 3.0))
            - 16.0 / (3.0 * b) * np.log(np.sin(ac / 6.0)))


def _printed_u2(z, X, b):
    ac = np.arccos(X)
    return (-z / b - 2.0 / b * np.cos(2.0 * np.pi / 3.0 - 2.0 / 3.0 * ac)
            - 4.0 / (3.0 * b) * np.log(-1.0 + 2.0 * np.cos(np.pi / 3.0 - ac / 3.0))
            - 16.0 / (3.0 * b) * np.log(np.sin(np.pi / 6.0 - ac / 6.0)))


def _printed_u3_upper(z, X, b):
    ac = np.arccos(X)
    ac_neg = np.arccos(-X)
    return (-z / b - 2.0 / b * np.cos(2.0 * np.pi / 3.0 + 2.0 / 3.0 * ac)
            - 4.0 / (3.0 * b) * np.log(-1.0 + 2.0 * np.cos(np.pi / 3.0 + ac_neg / 3.0))
            - 16.0 / (3.0 * b) * np.log(np.cos(np.pi / 6.0 + ac_neg / 6.0)))


def _printed_u3_lower(z, W, b):
    ach = np.arccosh(W)
    return (-z / b - 2.0 / b * np.cosh(2.0 / 3.0 * ach)
            - 16.0 / (3.0 * b) * np.log(np.cosh(ach / 6.0))
            - 4.0 / (3.0 * b) * np.log(-1.0 + 2.0 * np.cosh(ach / 3.0)))


def printed_v(family: SolutionFamily, z, params: ModelParams):
    """
    Printed v(z) of R, U1, U2 and the two U3 charts.

    Raises:
        ZeroB: b = 0.
        Unsupported: the family has no printed nonlinear closed form, or U3 without a chart.
    """
    b = params.b
    if b == 0:
        raise ZeroB("printed forms need b != 0")
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)
    load = family.abs_c * np.exp(-1.5 * z)
    with np.errstate(all="ignore"):
        match family.tag, family.chart:
            case FamilyTag.R, _:
                v = _printed_r(z, family.c, b)
            case FamilyTag.U1, _:
                v = _printed_u1(z, 1.0 - load, b)
            case FamilyTag.U2, _:
                v = _printed_u2(z, 1.0 - load, b)
            case FamilyTag.U3, 2:
                v = _printed_u3_upper(z, 1.0 - load, b)
            case FamilyTag.U3, 1:
                v = _printed_u3_lower(z, -1.0 + load, b)
            case _:
                raise Unsupported(f"no printed v-form for family {family.label}")
    return float(v) if scalar else v
