"""z as a quadrature in the uniformizing parameter p.

With y = q(1 - p^2)/(4b) the relation dz = dy / y_z becomes

    branch "-":  dz = -2 q xi p (p + 1) / ((p - 1) (q (p + 1)^2 + 4 xi)) dp
    branch "+":  dz = -2 q xi p (p - 1) / ((p + 1) (q (p - 1)^2 + 4 xi)) dp
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import integrate

from .._cubic import Branch
from .._errors import PoleOnPath
from ._params import ReductionParams


logger = logging.getLogger(__name__)

POLE_TOL = 1e-12


def _integrand(params: ReductionParams, branch: Branch):
    q, xi = params.q, params.xi
    s = 1.0 if branch is Branch.PLUS else -1.0
    constant = q + 4.0 * xi
    if constant == 0:
        # q (p -+ 1)^2 + 4 xi = p (q p -+ 2q): the factor p cancels
        return lambda p: -2.0 * q * xi * (p - s) / ((p + s) * (q * p - s * 2.0 * q))
    return lambda p: -2.0 * q * xi * p * (p - s) / ((p + s) * (p * (q * p - s * 2.0 * q) + constant))


def quadrature_poles(params: ReductionParams, branch: Branch) -> list[float]:
    """Real poles of the integrand of the given branch."""
    q, xi = params.q, params.xi
    s = 1.0 if branch is Branch.PLUS else -1.0
    poles = [-s]
    if q != 0 and -4.0 * xi / q >= 0:
        root = math.sqrt(-4.0 * xi / q)
        for p in (s + root, s - root):
            # the p = 0 root cancels against the numerator
            if not (q + 4.0 * xi == 0 and p == 0):
                poles.append(p)
    return sorted(set(poles))


def uniformized_quadrature(p0: float, p1: float, params: ReductionParams,
                           branch: Branch = Branch.PLUS) -> float:
    """
    z(p1) - z(p0) along the real segment [p0, p1].

    Raises:
        PoleOnPath: a pole of the integrand lies on the segment.
    """
    if p0 == p1:
        return 0.0
    lo, hi = min(p0, p1), max(p0, p1)
    for pole in quadrature_poles(params, branch):
        if lo - POLE_TOL <= pole <= hi + POLE_TOL:
            raise PoleOnPath(f"pole p = {pole} lies on [{lo}, {hi}]", pole=pole)
    value, abserr = integrate.quad(_integrand(params, branch), p0, p1,
                                   epsabs=1e-14, epsrel=1e-13, limit=200)
    logger.debug("quadrature on [%g, %g] branch %s: %.15g (err %.1e)", p0, p1, branch.value, value, abserr)
    return float(value)


def quadrature_closed_form(p0: float, p1: float) -> float:
    """
    The q = -4, xi = 1 increment on branch "+": -(2/3) log of the ratio of
    (p + 1)^2 (p - 2) at the two ends.
    """
    def rhs(p):
        return (p + 1.0) ** 2 * (p - 2.0)

    ratio = rhs(p1) / rhs(p0)
    if ratio <= 0:
        raise PoleOnPath(f"segment [{p0}, {p1}] crosses a zero of (p+1)^2 (p-2)")
    return -2.0 / 3.0 * float(np.log(ratio))
