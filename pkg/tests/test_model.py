import numpy as np
import pytest

from nlbs import (
    DegenerateDenominator,
    Jet2,
    KindTag,
    ModelKind,
    ModelParams,
    Unsupported,
    ValidationError,
    black_scholes_residual,
    check_reaction_derivative,
    linearize,
    parabolicity,
    pde_residual,
)
from nlbs._model import denominator, volatility_factor, volatility_factor_jacobian


def test__volatility_factor_values(params):
    S, a, m = 2.0, 0.3, 0.5
    assert volatility_factor(ModelKind.frey(), params, S, a, m) == pytest.approx(4.0)
    assert volatility_factor(ModelKind.cjp(), params, S, a, m) == pytest.approx(2.0)
    assert volatility_factor(ModelKind.sircar(), params, S, a, m) == pytest.approx(12.25)
    assert denominator(ModelKind.cjp(), params, S, a, m) is None


def test__liquidity_profile_exponent_scales_frey_denominator():
    params = ModelParams(sigma=0.4, rho=0.5, omega=2.0, k=1)
    assert denominator(ModelKind.frey(), params, 3.0, 0.0, 0.1) == pytest.approx(1.0 - 0.5 * 2.0 * 3.0 * 0.1)


@pytest.mark.parametrize("kind", [ModelKind.frey(), ModelKind.sircar(), ModelKind.cjp(),
                                  ModelKind.reaction(lambda x: 1.0 + x * x, lambda x: 2.0 * x)])
def test__jacobian_matches_central_differences(params, kind):
    S, a, m, h = 1.5, 0.2, 0.3, 1e-6
    _, dv_da, dv_dm = volatility_factor_jacobian(kind, params, S, a, m)
    fd_a = (volatility_factor(kind, params, S, a + h, m) - volatility_factor(kind, params, S, a - h, m)) / (2 * h)
    fd_m = (volatility_factor(kind, params, S, a, m + h) - volatility_factor(kind, params, S, a, m - h)) / (2 * h)
    assert dv_da == pytest.approx(fd_a, rel=1e-5, abs=1e-8)
    assert dv_dm == pytest.approx(fd_m, rel=1e-5, abs=1e-8)


def test__degenerate_denominator_is_refused(params):
    with pytest.raises(DegenerateDenominator):
        volatility_factor(ModelKind.frey(), params, 1.0, 0.0, 1.0)


def test__parabolicity_sign(params):
    # Frey: d(v m)/dm = (1 + b m)/(1 - b m)^3
    assert parabolicity(ModelKind.frey(), params, 1.0, 0.0, 0.5) == pytest.approx(1.5 / 0.125)
    assert parabolicity(ModelKind.frey(), params, 1.0, 0.0, 3.0) < 0


def test__rho_zero_reduces_to_black_scholes():
    params = ModelParams(sigma=0.3, rho=0.0)
    S = np.array([0.5, 1.0, 2.0])
    jet = Jet2(S=S, t=0.0, u=S ** 2, u_t=np.zeros(3), u_S=2.0 * S, u_SS=np.full(3, 2.0))
    for kind in (ModelKind.frey(), ModelKind.cjp(), ModelKind.sircar()):
        np.testing.assert_allclose(pde_residual(kind, params, jet), black_scholes_residual(params, jet))


def test__linearization():
    assert linearize(ModelKind.frey()).tag is KindTag.CJP
    assert linearize(ModelKind.sircar()).tag is KindTag.CJP
    with pytest.raises(Unsupported):
        linearize(ModelKind.cjp())


def test__kind_names():
    assert ModelKind.from_name("FREY").tag is KindTag.FREY_SDE
    with pytest.raises(ValidationError):
        ModelKind.from_name("reaction")
    with pytest.raises(ValidationError):
        ModelKind.from_name("heston")
    with pytest.raises(ValidationError):
        ModelKind(KindTag.REACTION_GENERAL)


def test__reaction_derivative_diagnostic():
    assert check_reaction_derivative(np.exp, np.exp, 0.3) < 1e-8
    assert check_reaction_derivative(np.exp, np.cos, 0.3) > 1e-2


@pytest.mark.parametrize("kwargs", [
    {"sigma": 0.0, "rho": 1.0},
    {"sigma": 0.4, "rho": -1.0},
    {"sigma": 0.4, "rho": 1.0, "omega": 0.0},
    {"sigma": 0.4, "rho": 1.0, "k": 2},
    {"sigma": float("nan"), "rho": 1.0},
])
def test__invalid_model_params(kwargs):
    with pytest.raises(ValidationError):
        ModelParams(**kwargs)


def test__jet_needs_positive_price():
    with pytest.raises(ValidationError):
        Jet2(S=0.0, t=0.0, u=0.0, u_t=0.0, u_S=0.0, u_SS=0.0)


def test__linearized_residual_gap_is_second_order_in_rho():
    jet = Jet2(S=1.0, t=0.0, u=0.5, u_t=-0.1, u_S=0.4, u_SS=0.5)
    gaps = []
    for rho in (0.1, 0.05, 0.025):
        params = ModelParams(sigma=0.4, rho=rho)
        gaps.append(abs(pde_residual(ModelKind.frey(), params, jet) - pde_residual(ModelKind.cjp(), params, jet)))
    for coarse, fine in zip(gaps, gaps[1:]):
        assert coarse / fine == pytest.approx(4.0, abs=0.5)


@pytest.mark.parametrize("reaction, named", [
    (ModelKind.reaction(np.exp, np.exp), ModelKind.frey()),
    (ModelKind.reaction(lambda x: 1.0 / (1.0 - x), lambda x: 1.0 / (1.0 - x) ** 2), ModelKind.sircar()),
])
def test__reaction_kind_reduces_to_the_named_kinds(params, reaction, named):
    S = np.linspace(0.5, 3.0, 11)
    a = np.linspace(-0.3, 0.4, 11)
    m = np.linspace(-0.2, 0.3, 11)
    np.testing.assert_allclose(volatility_factor(reaction, params, S, a, m),
                               volatility_factor(named, params, S, a, m), rtol=1e-12)
    jet = Jet2(S=S, t=0.0, u=S * a, u_t=-0.05 * S, u_S=a, u_SS=m / S)
    np.testing.assert_allclose(pde_residual(reaction, params, jet),
                               pde_residual(named, params, jet), rtol=1e-12, atol=1e-15)
