import pytest

from nlbs import FamilyTag, ModelParams, SolutionFamily
from nlbs.reduction import ReductionParams


@pytest.fixture
def params():
    """sigma = 0.4, b = 1."""
    return ModelParams(sigma=0.4, rho=1.0)


@pytest.fixture
def reduction(params):
    return ReductionParams.from_model(params)


@pytest.fixture
def u1():
    return SolutionFamily(FamilyTag.U1, c=-1.0)


@pytest.fixture
def u2():
    return SolutionFamily(FamilyTag.U2, c=-1.0)
