import math

import numpy as np
import pytest

from nlbs import (
    ExpansionSource,
    FamilyTag,
    SolutionFamily,
    Unsupported,
    ValidationError,
    delta_limit,
    eval_asymptotic,
    eval_delta,
    eval_u,
    remainder_slope,
    richardson_leading_coefficient,
)
from nlbs._asymptotic import asymptotic_terms


def _exact(family, params, t=0.0):
    return lambda S: eval_u(family, S, t, params)


def test__verify_u1_remainder_order(params):
    family = SolutionFamily(FamilyTag.U1, c=-20.0)
    prices = np.geomspace(1e2, 1e4, 9)
    slope = remainder_slope(family, prices, 0.0, params, 3, _exact(family, params))
    assert slope == pytest.approx(-2.0, abs=0.3)


@pytest.mark.parametrize("order, expected", [(2, -0.5), (3, -1.25)])
def test__verify_u2_remainder_order(params, u2, order, expected):
    prices = np.geomspace(1e2, 1e4, 9)
    slope = remainder_slope(u2, prices, 0.0, params, order, _exact(u2, params))
    assert slope == pytest.approx(expected, abs=0.2)


def test__verify_lower_u3_chart_remainder_order(params):
    family = SolutionFamily(FamilyTag.U3, c=-1.0, chart=1)
    prices = np.geomspace(1e-4, 1e-2, 9)
    slope = remainder_slope(family, prices, 0.0, params, 3, _exact(family, params))
    assert slope == pytest.approx(2.0, abs=0.3)


def test__r_expansion_tracks_the_solution(params):
    family = SolutionFamily(FamilyTag.R, c=0.5)
    S = 1e4
    errors = [abs(eval_u(family, S, 0.2, params) - eval_asymptotic(family, S, 0.2, params, order))
              for order in (1, 2, 3)]
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-5


def test__printed_u1_linear_term_has_the_wrong_sign(params):
    family = SolutionFamily(FamilyTag.U1, c=-20.0)
    S = 1e3
    exact = eval_u(family, S, 0.0, params)
    derived = eval_asymptotic(family, S, 0.0, params, 2)
    printed = eval_asymptotic(family, S, 0.0, params, 2, ExpansionSource.PRINTED)
    assert abs(exact - eval_asymptotic(family, S, 0.0, params, 3)) < 1e-2
    # the two differ by (16/3) log(2/|c|) S / b
    assert printed - derived == pytest.approx(-16.0 / 3.0 * math.log(0.1) * S, rel=1e-9)


def test__printed_lower_u3_leading_term_misses(params):
    family = SolutionFamily(FamilyTag.U3, c=-1.0, chart=1)
    exact = eval_u(family, 1e-3, 0.0, params)
    derived = eval_asymptotic(family, 1e-3, 0.0, params, 1)
    printed = eval_asymptotic(family, 1e-3, 0.0, params, 1, ExpansionSource.PRINTED)
    assert abs(exact - derived) < abs(exact - printed)


def test__linear_terms_are_added(params):
    bare = SolutionFamily(FamilyTag.U2, c=-1.0)
    shifted = SolutionFamily(FamilyTag.U2, c=-1.0, d=0.5, d2=2.0)
    S = np.array([10.0, 100.0])
    np.testing.assert_allclose(eval_asymptotic(shifted, S, 0.0, params) - eval_asymptotic(bare, S, 0.0, params),
                               0.5 * S + 2.0)


def test__richardson_recovers_the_delta_limit(params, u2):
    estimate = richardson_leading_coefficient(_exact(u2, params), 1e4)
    assert estimate == pytest.approx(delta_limit(u2, params), abs=1e-5)


def test__expansion_errors(params):
    with pytest.raises(Unsupported):
        asymptotic_terms(SolutionFamily(FamilyTag.U3, c=-1.0), 10.0, 0.0, params)
    with pytest.raises(Unsupported):
        eval_asymptotic(SolutionFamily(FamilyTag.LOG_PLUS), 10.0, 0.0, params)
    with pytest.raises(ValidationError):
        eval_asymptotic(SolutionFamily(FamilyTag.R, c=1.0), 10.0, 0.0, params, order=4)
    with pytest.raises(ValidationError):
        eval_asymptotic(SolutionFamily(FamilyTag.R, c=1.0), 10.0, 0.0, params, order=2,
                        source=ExpansionSource.PRINTED)


def test__richardson_recovers_the_upper_u3_delta_limit(params):
    family = SolutionFamily(FamilyTag.U3, c=-1.0, chart=2)
    estimate = richardson_leading_coefficient(_exact(family, params), 1e6)
    assert estimate == pytest.approx(delta_limit(family, params), abs=1e-9)


def test__upper_u3_delta_still_drifts_between_1e3_and_1e4(params):
    family = SolutionFamily(FamilyTag.U3, c=-1.0, chart=2)
    drift = abs(eval_delta(family, 1e3, 0.0, params) - eval_delta(family, 1e4, 0.0, params))
    assert 1e-4 < drift < 1e-2
