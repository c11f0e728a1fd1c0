from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._errors import ValidationError
from ._grid import Grid


@dataclass(eq=False)
class SolutionSurface:
    """
    u on a Grid, one row per time node in march order (row 0 is t = T, the
    last row is t = 0), one column per price node.
    """
    grid: Grid
    u: np.ndarray
    delta: np.ndarray | None = None
    residual: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = (self.grid.t.size, self.grid.n_nodes)
        for name in ("u", "delta", "residual"):
            layer = getattr(self, name)
            if layer is None:
                continue
            if layer.shape != shape:
                raise ValidationError(f"{name} layer has shape {layer.shape}, grid needs {shape}")
            if not np.all(np.isfinite(layer)):
                raise ValidationError(f"{name} layer has non-finite entries")

    @property
    def S(self) -> np.ndarray:
        return self.grid.S

    @property
    def t(self) -> np.ndarray:
        return self.grid.t

    @property
    def initial(self) -> np.ndarray:
        """u at t = 0."""
        return self.u[-1]

    def at(self, t: float) -> np.ndarray:
        index = int(np.argmin(np.abs(self.grid.t - t)))
        if not np.isclose(self.grid.t[index], t, rtol=0.0, atol=1e-12):
            raise ValidationError(f"t = {t} is not a time node of the grid")
        return self.u[index]
