"""Exception hierarchy shared by every nlbs module."""

from __future__ import annotations


class NlbsError(Exception):
    """Base class for all library errors."""


class ValidationError(NlbsError, ValueError):
    """Invalid parameters or run specification."""


class ZeroB(ValidationError):
    """A nonlinear family was requested with b = ωρ = 0."""


class ZeroC(ValidationError):
    """The integration constant c = 0 is excluded."""


class Unsupported(NlbsError, NotImplementedError):
    """The requested kind/family/limit combination has no implementation."""


class DomainError(NlbsError, ValueError):
    """An argument lies outside the domain of the evaluated object."""


class NonPositivePrice(DomainError):
    pass


class OutOfDomain(DomainError):
    def __init__(self, message: str, boundary: float | None = None):
        super().__init__(message)
        self.boundary = boundary


class NegativeRadicand(DomainError):
    pass


class SingularY(DomainError):
    pass


class PoleOnPath(DomainError):
    def __init__(self, message: str, pole: float | None = None):
        super().__init__(message)
        self.pole = pole


class SingularEncounter(DomainError):
    def __init__(self, message: str, z: float | None = None, y: float | None = None):
        super().__init__(message)
        self.z = z
        self.y = y


class ModelValidityError(NlbsError):
    """The candidate solution left the region where the pricing model is valid."""


class DegenerateDenominator(ModelValidityError):
    pass


class DenominatorBreach(ModelValidityError):
    def __init__(self, message: str, step: int | None = None, nodes: list[int] | None = None):
        super().__init__(message)
        self.step = step
        self.nodes = nodes or []


class ParabolicityLoss(ModelValidityError):
    def __init__(self, message: str, step: int | None = None, nodes: list[int] | None = None):
        super().__init__(message)
        self.step = step
        self.nodes = nodes or []


class SingularAction(NlbsError):
    pass


class NewtonDivergence(NlbsError):
    def __init__(self, message: str, step: int, time: float, history: list[float]):
        super().__init__(message)
        self.step = step
        self.time = time
        self.history = history

    def dump(self) -> dict:
        return {"step": self.step, "time": self.time, "residual_history": list(self.history)}
