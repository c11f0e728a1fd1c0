from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from ._exact import eval_jet, eval_u, in_domain
from ._family import SolutionFamily
from ._params import Jet2, ModelParams


class SolutionEvaluator(ABC):
    """
    A solution u(S, t) of the pricing PDE that can be sampled together with
    its analytic 2-jet. Used as reference data by the solver and as input of
    the symmetry group actions.
    """

    def __init__(self, params: ModelParams):
        self.params = params

    @abstractmethod
    def value(self, S, t):
        """
        Value u(S, t).
        Args:
            S: price(s), > 0.
            t: time(s).
        Returns:
            float or ndarray broadcast from S and t.
        """
        raise NotImplementedError("Subclasses must implement this method.")

    @abstractmethod
    def jet(self, S, t) -> Jet2:
        raise NotImplementedError("Subclasses must implement this method.")

    def contains(self, S, t):
        return np.asarray(S, dtype=float) > 0

    def delta(self, S, t):
        return self.jet(S, t).u_S

    def __call__(self, S, t):
        return self.value(S, t)


class ExactSolution(SolutionEvaluator):

    def __init__(self, family: SolutionFamily, params: ModelParams):
        super().__init__(params)
        self.family = family

    def value(self, S, t):
        return eval_u(self.family, S, t, self.params)

    def jet(self, S, t) -> Jet2:
        return eval_jet(self.family, S, t, self.params)

    def contains(self, S, t):
        return in_domain(self.family, S, t, self.params)

    def __repr__(self):
        return f"ExactSolution({self.family.label}, c={self.family.c}, d={self.family.d}, d2={self.family.d2})"
