"""Real roots of the uniformizing cubics

    branch "+":  (p + 1)^2 (p - 2) = 2 c exp(-3z/2)
    branch "-":  (p - 1)^2 (p + 2) = 2 c exp(-3z/2)

Both are the depressed cubic p^3 - 3p = 2s and are solved with the
trigonometric/hyperbolic (Viete) forms. The family charts at the bottom return
p together with p - 2 and p + 1 computed without cancellation.
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from typing import NamedTuple

import numpy as np

from ._errors import OutOfDomain, ZeroC


logger = logging.getLogger(__name__)

ROOT_TOL = 1e-12
CLAMP_TOL = 1e-12


class Branch(Enum):
    PLUS = "+"
    MINUS = "-"

    def mirror(self) -> Branch:
        return Branch.MINUS if self is Branch.PLUS else Branch.PLUS


def cubic_rhs(z, c):
    return 2.0 * c * np.exp(-1.5 * np.asarray(z, dtype=float))


def cubic_value(p, z, c, branch: Branch = Branch.PLUS):
    if branch is Branch.PLUS:
        return (p + 1.0) ** 2 * (p - 2.0) - cubic_rhs(z, c)
    return (p - 1.0) ** 2 * (p + 2.0) - cubic_rhs(z, c)


def _depressed_roots(s: float) -> list[float]:
    """Real roots of p^3 - 3p = 2s, with multiplicity."""
    if abs(abs(s) - 1.0) <= CLAMP_TOL:
        return [-1.0, -1.0, 2.0] if s > 0 else [-2.0, 1.0, 1.0]
    if abs(s) < 1.0:
        theta = math.acos(s)
        return sorted(2.0 * math.cos((theta + 2.0 * math.pi * k) / 3.0) for k in range(3))
    if s > 1.0:
        return [2.0 * math.cosh(math.acosh(s) / 3.0)]
    return [-2.0 * math.cosh(math.acosh(-s) / 3.0)]


def _polish(p: float, s: float, iters: int = 3) -> float:
    for _ in range(iters):
        slope = 3.0 * p * p - 3.0
        if abs(slope) < 1e-8:
            break
        step = (p ** 3 - 3.0 * p - 2.0 * s) / slope
        p -= step
        if abs(step) <= 1e-17 * max(1.0, abs(p)):
            break
    return p


def solve_p(z: float, c: float, branch: Branch = Branch.PLUS) -> list[float]:
    """
    All real roots of the uniformizing cubic at (z, c), sorted, repeated
    according to multiplicity.

    Raises:
        ZeroC: c = 0.
    """
    if c == 0:
        raise ZeroC("c = 0 is excluded")
    rhs = 2.0 * c * math.exp(-1.5 * z)
    # (p+1)^2 (p-2) = p^3 - 3p - 2 and (p-1)^2 (p+2) = p^3 - 3p + 2
    s = (rhs + 2.0) / 2.0 if branch is Branch.PLUS else (rhs - 2.0) / 2.0
    roots = [_polish(p, s) for p in _depressed_roots(s)]
    scale = max(1.0, abs(rhs))
    for p in roots:
        residual = abs(float(cubic_value(p, z, c, branch)))
        if residual > ROOT_TOL * scale:
            logger.warning("cubic root %r at z=%r, c=%r leaves residual %.3e", p, z, c, residual)
    return roots


class RootState(NamedTuple):
    """Uniformizing root p with p - 2 and p + 1 evaluated stably."""
    p: np.ndarray
    p_minus_2: np.ndarray
    p_plus_1: np.ndarray


def _angle_three_root(x, boundary):
    """arccos(1 - x) for x in [0, 2], clamped within CLAMP_TOL of the ends."""
    if np.any(x > 2.0 + CLAMP_TOL):
        raise OutOfDomain("point lies below the three-root region", boundary=boundary)
    return 2.0 * np.arcsin(np.sqrt(np.clip(x, 0.0, 2.0) / 2.0))


def _angle_single_root(x, boundary):
    """arccosh(x - 1) for x >= 2, clamped within CLAMP_TOL of the boundary."""
    if np.any(x < 2.0 - CLAMP_TOL):
        raise OutOfDomain("point lies above the single-root region", boundary=boundary)
    return 2.0 * np.arcsinh(np.sqrt(np.maximum(x - 2.0, 0.0) / 2.0))


def root_r(y) -> RootState:
    """c > 0, y = c exp(-3z/2) > 0: the unique root, p > 2."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise OutOfDomain("family R needs c exp(-3z/2) > 0")
    # log of 1 + y + sqrt(2y + y^2), the real positive radicand
    log_a = np.log1p(y + np.sqrt(y) * np.sqrt(2.0 + y))
    p = 2.0 * np.cosh(log_a / 3.0)
    return RootState(p, 4.0 * np.sinh(log_a / 6.0) ** 2, p + 1.0)


def root_u1(x, boundary=None) -> RootState:
    B = _angle_three_root(x, boundary)
    p = 2.0 * np.cos(B / 3.0)
    return RootState(p, -4.0 * np.sin(B / 6.0) ** 2, 1.0 + p)


def root_u2(x, boundary=None) -> RootState:
    B = _angle_three_root(x, boundary)
    theta = (2.0 * np.pi - B) / 3.0
    p = 2.0 * np.cos(theta)
    return RootState(p, -4.0 * np.sin(theta / 2.0) ** 2,
                     4.0 * np.sin((4.0 * np.pi - B) / 6.0) * np.sin(B / 6.0))


def root_u3_upper(x, boundary=None) -> RootState:
    B = _angle_three_root(x, boundary)
    theta = (2.0 * np.pi + B) / 3.0
    p = 2.0 * np.cos(theta)
    return RootState(p, -4.0 * np.sin(theta / 2.0) ** 2,
                     -4.0 * np.sin((4.0 * np.pi + B) / 6.0) * np.sin(B / 6.0))


def root_u3_lower(x, boundary=None) -> RootState:
    A = _angle_single_root(x, boundary)
    p = -2.0 * np.cosh(A / 3.0)
    return RootState(p, -4.0 * np.cosh(A / 6.0) ** 2, 1.0 + p)
