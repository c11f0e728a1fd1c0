from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .._errors import ValidationError


@dataclass(frozen=True, eq=False)
class Grid:
    """
    Log-price grid x = log S, uniform in x, with time nodes marching from the
    terminal time T down to 0.
    """
    x: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        t = np.asarray(self.t, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)
        if x.ndim != 1 or x.size < 5:
            raise ValidationError(f"grid needs at least 3 interior nodes, got {x.size} nodes")
        if np.any(np.diff(x) <= 0):
            raise ValidationError("x nodes must be strictly increasing")
        if not np.allclose(np.diff(x), x[1] - x[0], rtol=1e-9, atol=0.0):
            raise ValidationError("x nodes must be uniformly spaced")
        if t.ndim != 1 or t.size < 2:
            raise ValidationError("grid needs at least one time step")
        if not t[0] > 0 or t[-1] != 0 or np.any(np.diff(t) >= 0):
            raise ValidationError("t nodes must decrease strictly from T > 0 to 0")

    @classmethod
    def uniform(cls, s_min: float, s_max: float, n_nodes: int, T: float, n_steps: int) -> Grid:
        if not 0 < s_min < s_max:
            raise ValidationError(f"need 0 < s_min < s_max, got {s_min}, {s_max}")
        if n_steps < 1:
            raise ValidationError(f"n_steps must be positive, got {n_steps}")
        if not T > 0:
            raise ValidationError(f"T must be positive, got {T}")
        x = np.linspace(np.log(s_min), np.log(s_max), n_nodes)
        t = T * np.linspace(1.0, 0.0, n_steps + 1)
        t[-1] = 0.0
        return cls(x, t)

    def refined(self, space_factor: int = 2, time_factor: int = 2) -> Grid:
        """Same extent with node spacings divided by the given factors."""
        n_nodes = (self.n_nodes - 1) * space_factor + 1
        n_steps = self.n_steps * time_factor
        return Grid(np.linspace(self.x[0], self.x[-1], n_nodes), self.T * np.linspace(1.0, 0.0, n_steps + 1))

    @cached_property
    def S(self) -> np.ndarray:
        return np.exp(self.x)

    @property
    def T(self) -> float:
        return float(self.t[0])

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def n_nodes(self) -> int:
        return self.x.size

    @property
    def n_steps(self) -> int:
        return self.t.size - 1

    @cached_property
    def stencils(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Three-point weights (first derivative, second derivative) in S at the
        interior nodes, each of shape (3, n_nodes - 2) for the nodes i-1, i, i+1.
        Both are exact on quadratics in S.
        """
        S = self.S
        hm = S[1:-1] - S[:-2]
        hp = S[2:] - S[1:-1]
        first = np.stack([-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))])
        second = np.stack([2.0 / (hm * (hm + hp)), -2.0 / (hm * hp), 2.0 / (hp * (hm + hp))])
        return first, second
