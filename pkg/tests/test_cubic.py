import math

import numpy as np
import pytest

from nlbs import Branch, ZeroC, solve_p
from nlbs._cubic import cubic_value, root_r, root_u1, root_u2, root_u3_lower, root_u3_upper
from nlbs._errors import OutOfDomain


@pytest.mark.parametrize("z, c", [(-2.0, -0.5), (0.0, -1.0), (1.3, -0.3), (0.4, 0.5), (-3.0, 2.0), (-1.0, -5.0)])
@pytest.mark.parametrize("branch", [Branch.PLUS, Branch.MINUS])
def test__roots_solve_the_cubic(z, c, branch):
    roots = solve_p(z, c, branch)
    assert roots == sorted(roots)
    for p in roots:
        assert abs(cubic_value(p, z, c, branch)) < 1e-11 * max(1.0, abs(2 * c * math.exp(-1.5 * z)))


def test__three_real_roots_only_inside_the_region():
    # (p+1)^2 (p-2) = 2c exp(-3z/2) has three real roots iff -4 <= 2c exp(-3z/2) <= 0
    assert len(solve_p(0.0, -1.0)) == 3
    assert len(solve_p(0.0, -3.0)) == 1
    assert len(solve_p(0.0, 0.5)) == 1


def test__double_root_at_the_boundary():
    # 2c exp(-3z/2) = -4 gives roots -2 and the double root 1
    assert solve_p(0.0, -2.0) == pytest.approx([-2.0, 1.0, 1.0])


def test__zero_c_is_refused():
    with pytest.raises(ZeroC):
        solve_p(0.0, 0.0)


def test__charts_match_the_sorted_roots():
    z, c = 0.3, -1.0
    x = abs(c) * math.exp(-1.5 * z)
    low, middle, high = solve_p(z, c)
    assert float(root_u1(x).p) == pytest.approx(high, abs=1e-13)
    assert float(root_u2(x).p) == pytest.approx(middle, abs=1e-13)
    assert float(root_u3_upper(x).p) == pytest.approx(low, abs=1e-13)
    (single,) = solve_p(-1.0, -1.0)
    assert float(root_u3_lower(math.exp(1.5)).p) == pytest.approx(single, abs=1e-12)
    (r_root,) = solve_p(0.2, 0.5)
    assert float(root_r(0.5 * math.exp(-0.3)).p) == pytest.approx(r_root, abs=1e-13)


def test__shifted_roots_are_consistent():
    x = np.linspace(1e-6, 2.0, 50)
    for state in (root_u1(x), root_u2(x), root_u3_upper(x)):
        np.testing.assert_allclose(state.p_minus_2, state.p - 2.0, atol=1e-13)
        np.testing.assert_allclose(state.p_plus_1, state.p + 1.0, atol=1e-13)


def test__cancellation_free_near_p_equal_two():
    # y -> 0 puts the R root at p = 2 + 2y/9; p - 2 must keep its digits
    y = 1e-20
    state = root_r(y)
    assert float(state.p_minus_2) == pytest.approx(2.0 * y / 9.0, rel=1e-6)


def test__charts_refuse_the_wrong_region():
    with pytest.raises(OutOfDomain):
        root_u1(2.5)
    with pytest.raises(OutOfDomain):
        root_u3_lower(1.0)
    with pytest.raises(OutOfDomain):
        root_r(0.0)


def test__random_sweep_of_the_cubic():
    rng = np.random.default_rng(20240917)
    count = 10_000
    c = rng.choice([-1.0, 1.0], count) * 10.0 ** rng.uniform(-2.0, 1.0, count)
    z = rng.uniform(-4.0, 4.0, count)
    rhs = 2.0 * c * np.exp(-1.5 * z)

    worst = 0.0
    plus_roots = []
    for zi, ci, ri in zip(z, c, rhs):
        scale = max(1.0, abs(ri))
        for branch in (Branch.PLUS, Branch.MINUS):
            roots = solve_p(zi, ci, branch)
            worst = max(worst, max(abs(float(cubic_value(p, zi, ci, branch))) for p in roots) / scale)
            # three real roots iff the right-hand side lies in [-4, 0] (plus) or [0, 4] (minus)
            s = (ri + 2.0) / 2.0 if branch is Branch.PLUS else (ri - 2.0) / 2.0
            if abs(abs(s) - 1.0) > 1e-9:
                assert len(roots) == (3 if abs(s) < 1.0 else 1)
            if branch is Branch.PLUS:
                plus_roots.append(roots)
            else:
                mirrored = sorted(-p for p in solve_p(zi, -ci, Branch.PLUS))
                np.testing.assert_allclose(roots, mirrored, rtol=1e-12, atol=1e-12)
    assert worst < 1e-12

    x = np.abs(c) * np.exp(-1.5 * z)
    three = (c < 0) & (x < 2.0)
    single_negative = (c < 0) & (x > 2.0)
    positive = c > 0
    assert three.sum() > 100 and single_negative.sum() > 100 and positive.sum() > 100

    sorted_three = np.array([plus_roots[i] for i in np.flatnonzero(three)])
    np.testing.assert_allclose(root_u1(x[three]).p, sorted_three[:, 2], rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(root_u2(x[three]).p, sorted_three[:, 1], rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(root_u3_upper(x[three]).p, sorted_three[:, 0], rtol=1e-10, atol=1e-10)

    lone = np.array([plus_roots[i][0] for i in np.flatnonzero(single_negative)])
    np.testing.assert_allclose(root_u3_lower(x[single_negative]).p, lone, rtol=1e-10, atol=1e-10)
    lone = np.array([plus_roots[i][0] for i in np.flatnonzero(positive)])
    np.testing.assert_allclose(root_r(rhs[positive] / 2.0).p, lone, rtol=1e-10, atol=1e-10)
