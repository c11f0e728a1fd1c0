"""Point symmetries of the pricing PDE with liquidity profile lambda(S) = omega S^k.

Forms implemented (lam = exp(a1 eps)):

    general:  S~ = S,        t~ = t + a2 eps,  u~ = u + a3 S eps + a4 eps
    k = 0:    S~ = lam S,    t~ = t + a2 eps,  u~ = lam u + a3 S eps lam + (a4/a1)(lam - 1)
    k = 1:    S~ = lam S,    t~ = t + a2 eps,  u~ = u + (a3/a1) S (lam - 1) + a4 eps
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import SingularAction, ValidationError
from ._evaluator import SolutionEvaluator
from ._params import Jet2


@dataclass(frozen=True)
class SymmetryAction:
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0
    a4: float = 0.0
    epsilon: float = 0.0
    k: int = 0
    general: bool = False

    def __post_init__(self):
        if self.k not in (0, 1):
            raise ValidationError(f"k must be 0 or 1, got {self.k}")
        if not self.general and self.a1 == 0:
            raise SingularAction(
                f"the k = {self.k} action divides by a1; use general=True for a1 = 0")

    @property
    def scale(self) -> float:
        return 1.0 if self.general else math.exp(self.a1 * self.epsilon)

    def forward(self, S, t, u):
        """Image (S~, t~, u~) of a point of the graph of u."""
        lam = self.scale
        eps = self.epsilon
        t_new = t + self.a2 * eps
        if self.general:
            return S, t_new, u + self.a3 * S * eps + self.a4 * eps
        if self.k == 0:
            return lam * S, t_new, lam * u + self.a3 * S * eps * lam + self.a4 / self.a1 * (lam - 1.0)
        return lam * S, t_new, u + self.a3 / self.a1 * S * (lam - 1.0) + self.a4 * eps

    def preimage(self, S_new, t_new):
        return np.asarray(S_new, dtype=float) / self.scale, np.asarray(t_new, dtype=float) - self.a2 * self.epsilon


class TransformedSolution(SolutionEvaluator):
    """The image of a solution evaluator under a SymmetryAction."""

    def __init__(self, base: SolutionEvaluator, action: SymmetryAction):
        super().__init__(base.params)
        self.base = base
        self.action = action

    def value(self, S, t):
        S0, t0 = self.action.preimage(S, t)
        _, _, u = self.action.forward(S0, t0, self.base.value(S0, t0))
        return u

    def jet(self, S, t) -> Jet2:
        action = self.action
        S0, t0 = action.preimage(S, t)
        base = self.base.jet(S0, t0)
        lam = action.scale
        eps = action.epsilon
        _, _, u = action.forward(S0, t0, base.u)
        if action.general:
            u_t, u_S, u_SS = base.u_t, base.u_S + action.a3 * eps, base.u_SS
        elif action.k == 0:
            u_t = lam * base.u_t
            u_S = base.u_S + action.a3 * eps
            u_SS = base.u_SS / lam
        else:
            u_t = base.u_t
            u_S = base.u_S / lam + action.a3 / action.a1 * (lam - 1.0) / lam
            u_SS = base.u_SS / lam ** 2
        return Jet2(S=S, t=t, u=u, u_t=u_t, u_S=u_S, u_SS=u_SS)

    def contains(self, S, t):
        return self.base.contains(*self.action.preimage(S, t))


def apply_symmetry(u: SolutionEvaluator, action: SymmetryAction) -> TransformedSolution:
    return TransformedSolution(u, action)
