import numpy as np
import pytest

from nlbs import (
    DenominatorBreach,
    ExactSolution,
    FamilyTag,
    ModelKind,
    ModelParams,
    ModelValidityError,
    NewtonDivergence,
    ParabolicityLoss,
    SolutionFamily,
    ValidationError,
    eval_delta,
    eval_u,
)
from nlbs.solver import (
    DirichletFromReference,
    Grid,
    LinearExtrapolation,
    NewtonConfig,
    SolutionSurface,
    SolverConfig,
    SpatialOperator,
    TimeScheme,
    consistency_check,
    convergence_study,
    discrete_delta,
    solve_terminal_value,
    time_order_study,
)
from nlbs.solver._solver import _newton, _predictor, _StepProblem


T = 0.5


@pytest.fixture
def u3():
    return SolutionFamily(FamilyTag.U3, c=-0.5)


@pytest.fixture
def reference(params, u3):
    return ExactSolution(u3, params)


@pytest.fixture
def dirichlet(reference):
    return SolverConfig(boundary=DirichletFromReference(reference))


def _terminal(reference):
    return lambda S: reference.value(S, T)


def _call(S):
    return np.maximum(S - 1.0, 0.0)


def test__grid_layout():
    grid = Grid.uniform(0.2, 5.0, 201, T, 50)
    assert grid.n_nodes == 201
    assert grid.n_steps == 50
    assert grid.T == T
    assert grid.t[-1] == 0.0
    assert grid.S[0] == pytest.approx(0.2)
    assert grid.S[-1] == pytest.approx(5.0)
    finer = grid.refined()
    assert (finer.n_nodes, finer.n_steps) == (401, 100)
    assert finer.dx == pytest.approx(grid.dx / 2)


@pytest.mark.parametrize("args", [(0.2, 5.0, 4, T, 10), (0.0, 5.0, 11, T, 10), (0.2, 5.0, 11, 0.0, 10),
                                  (0.2, 5.0, 11, T, 0), (5.0, 0.2, 11, T, 10)])
def test__invalid_grids(args):
    with pytest.raises(ValidationError):
        Grid.uniform(*args)


def test__stencils_are_exact_on_quadratics():
    grid = Grid.uniform(0.2, 5.0, 21, T, 1)
    first, second = grid.stencils
    u = 3.0 * grid.S ** 2 - grid.S + 1.0
    np.testing.assert_allclose(first[0] * u[:-2] + first[1] * u[1:-1] + first[2] * u[2:],
                               6.0 * grid.S[1:-1] - 1.0, rtol=1e-9)
    np.testing.assert_allclose(second[0] * u[:-2] + second[1] * u[1:-1] + second[2] * u[2:], 6.0, rtol=1e-8)


def test__linear_data_is_stationary(params):
    grid = Grid.uniform(0.2, 5.0, 101, T, 10)
    surface = solve_terminal_value(ModelKind.frey(), params, lambda S: 0.3 * S + 0.1, grid)
    np.testing.assert_allclose(surface.u, np.broadcast_to(0.3 * grid.S + 0.1, surface.u.shape), atol=1e-9)
    np.testing.assert_allclose(surface.delta, 0.3, atol=1e-7)
    assert surface.metadata["convergence_claim"] is False


def test__verify_one_step_consistency(params, reference):
    kind = ModelKind.frey()
    coarse = consistency_check(kind, params, reference, Grid.uniform(0.2, 5.0, 101, T, 20))
    fine = consistency_check(kind, params, reference, Grid.uniform(0.2, 5.0, 201, T, 40))
    assert fine < coarse / 3.0


def test__solution_against_the_exact_family(params, reference, dirichlet):
    grid = Grid.uniform(0.2, 5.0, 201, T, 50)
    surface = solve_terminal_value(ModelKind.frey(), params, _terminal(reference), grid, dirichlet)
    assert np.max(np.abs(surface.initial - reference.value(grid.S, 0.0))) < 5e-3
    np.testing.assert_allclose(surface.at(T), reference.value(grid.S, T))
    assert surface.metadata["convergence_claim"] is True
    assert len(surface.metadata["newton_iterations"]) == grid.n_steps
    assert surface.metadata["config"]["boundary"] == "dirichlet_from_reference"
    interior = slice(1, -1)
    np.testing.assert_allclose(discrete_delta(surface)[-1, interior],
                               reference.delta(grid.S, 0.0)[interior], atol=1e-2)


@pytest.mark.slow
def test__verify_spatial_convergence_order(params, reference, dirichlet):
    grids = [Grid.uniform(0.2, 5.0, n, T, m) for n, m in ((201, 50), (401, 100), (801, 200))]
    table = convergence_study(ModelKind.frey(), params, reference, grids, dirichlet, progress=False)
    assert table.errors[0] > table.errors[1] > table.errors[2]
    assert len(table.observed_orders) == 2
    assert all(1.7 <= order <= 2.3 for order in table.observed_orders)
    scale = np.max(np.abs(reference.value(grids[-1].S, 0.0)))
    assert table.errors[-1] / scale <= 5e-4
    assert table.as_rows()[0]["order"] is None


@pytest.mark.slow
@pytest.mark.parametrize("scheme, low, high", [(TimeScheme.BACKWARD_EULER, 0.8, 1.2),
                                               (TimeScheme.TRAPEZOIDAL, 1.7, 2.5)])
def test__verify_time_order(params, reference, scheme, low, high):
    config = SolverConfig(scheme=scheme, boundary=DirichletFromReference(reference))
    grid = Grid.uniform(0.2, 5.0, 101, T, 10)
    table = time_order_study(ModelKind.frey(), params, _terminal(reference), grid, 3, config, progress=False)
    assert table.levels == [10, 20, 40]
    assert all(low < order < high for order in table.observed_orders)


def test__backward_parabolic_data_is_refused(params):
    family = SolutionFamily(FamilyTag.R, c=0.5)
    grid = Grid.uniform(0.2, 5.0, 101, T, 10)
    with pytest.raises(ParabolicityLoss) as info:
        solve_terminal_value(ModelKind.frey(), params, lambda S: eval_u(family, S, T, params), grid)
    assert info.value.step == 0
    assert info.value.nodes


def test__frey_call_leaves_the_model_domain(params):
    grid = Grid.uniform(0.2, 5.0, 201, T, 50)
    with pytest.raises(ModelValidityError):
        solve_terminal_value(ModelKind.frey(), params, _call, grid)


def test__cjp_call_price_grows_with_liquidity_cost():
    grid = Grid.uniform(0.2, 5.0, 201, T, 50)
    prices = [solve_terminal_value(ModelKind.cjp(), ModelParams(sigma=0.4, rho=rho), _call, grid).initial
              for rho in (0.0, 0.05)]
    assert np.all(prices[1] >= prices[0] - 1e-6)
    assert np.max(prices[1] - prices[0]) > 0.0


def test__newton_divergence_carries_its_history(params, reference, dirichlet):
    grid = Grid.uniform(0.2, 5.0, 101, T, 5)
    config = SolverConfig(newton=NewtonConfig(max_iters=1, tol=1e-300), boundary=dirichlet.boundary)
    with pytest.raises(NewtonDivergence) as info:
        solve_terminal_value(ModelKind.frey(), params, _terminal(reference), grid, config)
    dump = info.value.dump()
    assert dump["step"] == 1
    # the residual after the single update is checked too
    history = dump["residual_history"]
    assert len(history) == 2
    assert history[1] < history[0]


def test__denominator_breach_is_a_model_validity_error():
    assert issubclass(DenominatorBreach, ModelValidityError)
    assert issubclass(ParabolicityLoss, ModelValidityError)


def test__boundary_closures(reference):
    grid = Grid.uniform(0.2, 5.0, 11, T, 2)
    left, right = DirichletFromReference(reference).closure(grid, 0.0)
    assert left.value == pytest.approx(reference.value(grid.S[0], 0.0))
    assert (left.near, left.next) == (0.0, 0.0)
    left, right = LinearExtrapolation().closure(grid, 0.0)
    u = 2.0 * grid.S - 1.0
    assert left.near * u[1] + left.next * u[2] == pytest.approx(u[0])
    assert right.near * u[-2] + right.next * u[-3] == pytest.approx(u[-1])


def test__solver_config():
    config = SolverConfig(startup_steps=2)
    assert [config.theta_at(n) for n in range(4)] == [1.0, 1.0, 0.5, 0.5]
    assert SolverConfig(scheme=TimeScheme.BACKWARD_EULER).theta_at(5) == 1.0
    assert TimeScheme.from_name("Trapezoidal") is TimeScheme.TRAPEZOIDAL
    with pytest.raises(ValidationError):
        TimeScheme.from_name("crank")
    with pytest.raises(ValidationError):
        SolverConfig(guard=1e-13)
    with pytest.raises(ValidationError):
        NewtonConfig(max_iters=0)


def test__surface_layers_are_validated():
    grid = Grid.uniform(0.2, 5.0, 11, T, 2)
    with pytest.raises(ValidationError):
        SolutionSurface(grid, np.zeros((2, 11)))
    u = np.zeros((3, 11))
    u[1, 4] = np.nan
    with pytest.raises(ValidationError):
        SolutionSurface(grid, u)
    surface = SolutionSurface(grid, np.arange(33.0).reshape(3, 11))
    np.testing.assert_array_equal(surface.initial, surface.at(0.0))
    with pytest.raises(ValidationError):
        surface.at(0.1)


def test__payoff_must_be_finite(params):
    grid = Grid.uniform(0.2, 5.0, 11, T, 2)
    with pytest.raises(ValidationError):
        solve_terminal_value(ModelKind.frey(), params, lambda S: np.log(S - 1.0), grid)


def test__exact_delta_reference(params, u3):
    # the reference Delta used above is the analytic one
    assert ExactSolution(u3, params).delta(1.0, 0.0) == pytest.approx(eval_delta(u3, 1.0, 0.0, params))


def _first_step(params, reference, dirichlet, grid):
    op = SpatialOperator(ModelKind.frey(), params, grid, dirichlet.guard)
    u0 = reference.value(grid.S, T)
    L0 = op.apply(u0)
    left, right = dirichlet.boundary.closure(grid, float(grid.t[1]))
    sign = np.ones(grid.n_nodes - 2)
    dtau = float(grid.t[0] - grid.t[1])
    return _StepProblem(op, u0, L0, dtau, 1.0, left, right, sign), u0[1:-1], dtau * L0


def test__predictor_starts_on_the_branch_of_the_terminal_data(params, reference, dirichlet):
    grid = Grid.uniform(0.2, 5.0, 201, T, 50)
    problem, previous, explicit = _first_step(params, reference, dirichlet, grid)
    # next to the new edge value the previous level sits beyond the pole
    assert problem.off_branch(previous)[0]
    guess = _predictor(problem, [previous + explicit, previous])
    assert not np.any(problem.off_branch(guess))
    interior, _, norm = _newton(problem, guess, dirichlet, 1, float(grid.t[1]))
    assert norm <= dirichlet.newton.tol
    assert not np.any(problem.off_branch(interior))
    exact = reference.value(grid.S[1:-1], float(grid.t[1]))
    assert np.max(np.abs(interior - exact)) < 1e-4


@pytest.mark.parametrize("n_nodes, n_steps", [(101, 20), (201, 50)])
def test__march_keeps_the_denominator_positive(params, reference, dirichlet, n_nodes, n_steps):
    grid = Grid.uniform(0.2, 5.0, n_nodes, T, n_steps)
    surface = solve_terminal_value(ModelKind.frey(), params, _terminal(reference), grid, dirichlet)
    assert np.max(np.abs(surface.initial - reference.value(grid.S, 0.0))) < 1e-2
    assert max(surface.metadata["newton_iterations"]) < dirichlet.newton.max_iters


class _ShiftProblem:
    """R(u) = u - target: one Newton update lands on the root."""

    def __init__(self, target):
        self.target = target

    def residual(self, u):
        return u - self.target

    def residual_and_jacobian(self, u):
        ab = np.zeros((3, u.size))
        ab[1] = 1.0
        return self.residual(u), ab

    def off_branch(self, u):
        return None


def test__newton_accepts_convergence_on_the_last_iteration():
    target = np.linspace(0.0, 1.0, 7)
    config = SolverConfig(newton=NewtonConfig(max_iters=1))
    u, iterations, norm = _newton(_ShiftProblem(target), np.zeros(7), config, 1, 0.0)
    np.testing.assert_allclose(u, target)
    assert iterations == 1
    assert norm <= config.newton.tol
