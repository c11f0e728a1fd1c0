from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .._errors import ValidationError
from .._family import FamilyTag, SolutionFamily
from .._model import ModelKind
from .._params import ModelParams
from ..solver import TimeScheme
from ..utility import RangeSpec, parse_range, parse_values


COMMANDS = ("eval", "residual", "solve", "converge", "greeks", "sweep")
FORMATS = ("csv", "json")
PAYOFFS = ("family", "call", "linear")


@dataclass(frozen=True)
class RunSpec:
    """
    Everything a command needs, validated before dispatch. It is embedded in
    every artifact, so two runs with equal RunSpecs produce equal bytes.
    """
    command: str
    family: str | None = None
    model: str = "frey"
    sigma: float = 0.4
    rho: float = 1.0
    omega: float = 1.0
    c: float = 0.0
    d: float = 0.0
    d2: float = 0.0
    chart: int | None = None
    s_range: RangeSpec = field(default_factory=lambda: parse_range("0.01:5:200"))
    t_range: RangeSpec = field(default_factory=lambda: parse_range("0:0.5:50"))
    format: str = "csv"
    out: str | None = None
    payoff: str = "family"
    strike: float = 1.0
    scheme: str = "trapezoidal"
    levels: tuple[int, ...] = (201, 401, 801)
    c_values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.payoff not in PAYOFFS:
            raise ValidationError(f"payoff must be one of {PAYOFFS}, got {self.payoff!r}")
        for name in ("sigma", "rho", "omega", "c", "d", "d2", "strike"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite, got {getattr(self, name)}")
        if self.s_range.start <= 0:
            raise ValidationError(f"prices must be positive, got s-range {self.s_range}")
        if self.family is not None:
            FamilyTag.from_name(self.family)
        ModelKind.from_name(self.model)
        TimeScheme.from_name(self.scheme)
        if any(n < 5 for n in self.levels) or not self.levels:
            raise ValidationError(f"levels need at least 5 nodes each, got {self.levels}")
        if self.command == "sweep" and not self.c_values:
            raise ValidationError("sweep needs --c-values")
        if self.command in ("eval", "greeks", "sweep", "converge") and self.family is None:
            raise ValidationError(f"{self.command} needs --family")
        if self.command == "solve" and self.payoff == "family" and self.family is None:
            raise ValidationError("solve with the family payoff needs --family")

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> RunSpec:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValidationError(f"unknown run specification keys: {sorted(unknown)}")
        data = dict(values)
        for key in ("s_range", "t_range"):
            if key in data and not isinstance(data[key], RangeSpec):
                data[key] = parse_range(data[key])
        if "levels" in data:
            data["levels"] = parse_values(data["levels"], int)
        if "c_values" in data:
            data["c_values"] = parse_values(data["c_values"], float)
        for key in ("sigma", "rho", "omega", "c", "d", "d2", "strike"):
            if key in data:
                try:
                    data[key] = float(data[key])
                except (TypeError, ValueError):
                    raise ValidationError(f"{key} must be a number, got {data[key]!r}")
        if data.get("chart") is not None:
            data["chart"] = int(data["chart"])
        if "command" not in data:
            raise ValidationError("run specification needs a command")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path, overrides: Mapping[str, Any] | None = None) -> RunSpec:
        try:
            with Path(path).open("r", encoding="utf-8") as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read run file {path}: {exc}")
        if not isinstance(values, dict):
            raise ValidationError(f"run file {path} must hold a JSON object")
        values.update(overrides or {})
        return cls.from_mapping(values)

    def to_dict(self) -> dict:
        data = dataclasses.asdict(self)
        data["s_range"] = str(self.s_range)
        data["t_range"] = str(self.t_range)
        data["levels"] = list(self.levels)
        data["c_values"] = list(self.c_values)
        return data

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def model_params(self) -> ModelParams:
        return ModelParams(sigma=self.sigma, rho=self.rho, omega=self.omega)

    def model_kind(self) -> ModelKind:
        return ModelKind.from_name(self.model)

    def time_scheme(self) -> TimeScheme:
        return TimeScheme.from_name(self.scheme)

    def solution_family(self, c: float | None = None) -> SolutionFamily:
        if self.family is None:
            raise ValidationError("no family selected")
        return SolutionFamily(FamilyTag.from_name(self.family), c=self.c if c is None else c,
                              d=self.d, d2=self.d2, chart=self.chart)
