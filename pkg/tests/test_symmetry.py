import numpy as np
import pytest

from nlbs import (
    ExactSolution,
    FamilyTag,
    ModelKind,
    ModelParams,
    SingularAction,
    SolutionFamily,
    SymmetryAction,
    ValidationError,
    apply_symmetry,
    pde_residual,
)


def test__verify_scaling_action_maps_solutions_to_solutions(params):
    base = ExactSolution(SolutionFamily(FamilyTag.R, c=0.5), params)
    action = SymmetryAction(a1=0.3, a2=0.1, a3=0.2, a4=0.5, epsilon=0.7, k=0)
    image = apply_symmetry(base, action)
    S = np.linspace(0.2, 4.0, 11)
    jet = image.jet(S, 0.3)
    assert np.max(np.abs(pde_residual(ModelKind.frey(), params, jet))) < 1e-10


@pytest.mark.parametrize("action", [
    SymmetryAction(a1=0.4, a2=-0.2, a3=0.3, a4=1.0, epsilon=0.5, k=1),
    SymmetryAction(a2=0.2, a3=-0.5, a4=2.0, epsilon=1.0, general=True),
])
def test__verify_actions_on_black_scholes_data(action):
    params = ModelParams(sigma=0.3, rho=0.0, k=action.k)
    base = ExactSolution(SolutionFamily(FamilyTag.LINEAR, c=0.6, d=0.1), params)
    image = apply_symmetry(base, action)
    S = np.linspace(0.3, 3.0, 9)
    jet = image.jet(S, 0.4)
    assert np.max(np.abs(pde_residual(ModelKind.frey(), params, jet))) < 1e-12


def test__image_jet_matches_image_values(params):
    base = ExactSolution(SolutionFamily(FamilyTag.R, c=0.5), params)
    image = apply_symmetry(base, SymmetryAction(a1=-0.2, a2=0.05, a3=0.1, a4=0.3, epsilon=1.0))
    S, t, h = 1.7, 0.2, 1e-6
    jet = image.jet(S, t)
    assert jet.u == pytest.approx(image.value(S, t))
    assert jet.u_S == pytest.approx((image.value(S + h, t) - image.value(S - h, t)) / (2 * h), rel=1e-6)
    assert jet.u_t == pytest.approx((image.value(S, t + h) - image.value(S, t - h)) / (2 * h), rel=1e-5, abs=1e-8)


def test__identity_action(params):
    base = ExactSolution(SolutionFamily(FamilyTag.U1, c=-1.0), params)
    image = apply_symmetry(base, SymmetryAction(a1=1.0, epsilon=0.0))
    assert image.value(2.0, 0.1) == pytest.approx(base.value(2.0, 0.1))


def test__scaling_moves_the_domain(params):
    base = ExactSolution(SolutionFamily(FamilyTag.U1, c=-1.0), params)
    image = apply_symmetry(base, SymmetryAction(a1=1.0, epsilon=np.log(2.0)))
    assert base.contains(1.0, 0.0)
    assert not image.contains(1.0, 0.0)
    assert image.contains(1.5, 0.0)


def test__actions_dividing_by_zero_are_refused():
    with pytest.raises(SingularAction):
        SymmetryAction(a1=0.0, a3=1.0, epsilon=1.0, k=0)
    with pytest.raises(SingularAction):
        SymmetryAction(a1=0.0, a3=1.0, epsilon=1.0, k=1)
    with pytest.raises(ValidationError):
        SymmetryAction(a1=1.0, k=2)


@pytest.mark.parametrize("action", [
    SymmetryAction(a1=1.0, epsilon=0.3),
    SymmetryAction(a2=1.0, epsilon=0.3, general=True),
    SymmetryAction(a3=1.0, epsilon=0.3, general=True),
    SymmetryAction(a4=1.0, epsilon=0.3, general=True),
], ids=["scaling", "time", "linear", "constant"])
def test__verify_each_generator_keeps_r_a_solution(params, action):
    image = apply_symmetry(ExactSolution(SolutionFamily(FamilyTag.R, c=0.5), params), action)
    S, t = np.meshgrid(np.linspace(0.05, 5.0, 200), np.linspace(0.0, 0.5, 50))
    jet = image.jet(S, t)
    assert np.max(np.abs(pde_residual(ModelKind.frey(), params, jet))) <= 1e-7
