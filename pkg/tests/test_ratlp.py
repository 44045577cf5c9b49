from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from graphrepair.ratlp import InfeasibleError, UnboundedError, solve_min_ge


def check_certificates(c, a, b, x, y, value):
    m, n = len(a), len(c)
    for i in range(m):
        assert sum(Fraction(a[i][j]) * x[j] for j in range(n)) >= Fraction(b[i])
    assert all(xi >= 0 for xi in x)
    for j in range(n):
        assert sum(Fraction(a[i][j]) * y[i] for i in range(m)) <= Fraction(c[j])
    assert all(yi >= 0 for yi in y)
    assert sum(Fraction(b[i]) * y[i] for i in range(m)) == value
    assert sum(Fraction(c[j]) * x[j] for j in range(n)) == value


def scipy_value(c, a, b):
    res = linprog(c, A_ub=(-np.array(a, dtype=float)), b_ub=(-np.array(b, dtype=float)),
                  bounds=[(0, None)] * len(c), method="highs")
    assert res.status == 0
    return res.fun


def test_simple_diet_lp():
    # min 2x + 3y s.t. x + y >= 4, x + 2y >= 6
    c = [2, 3]
    a = [[1, 1], [1, 2]]
    b = [4, 6]
    x, y, value = solve_min_ge(c, a, b)
    check_certificates(c, a, b, x, y, value)
    assert value == Fraction(10)  # x = 2, y = 2
    assert abs(float(value) - scipy_value(c, a, b)) < 1e-9


def test_fractional_optimum_is_exact():
    # forces a non-integer optimum
    c = [1, 1]
    a = [[3, 1], [1, 3]]
    b = [4, 4]
    x, y, value = solve_min_ge(c, a, b)
    check_certificates(c, a, b, x, y, value)
    assert value == Fraction(2)  # x = y = 1
    c2 = [1, 2]
    x, y, value = solve_min_ge(c2, a, b)
    check_certificates(c2, a, b, x, y, value)
    assert value == Fraction(3)  # still the vertex x = y = 1
    assert abs(float(value) - scipy_value(c2, a, b)) < 1e-9

    # one-variable instance with a strictly fractional optimum
    x, y, value = solve_min_ge([1], [[2]], [3])
    check_certificates([1], [[2]], [3], x, y, value)
    assert value == Fraction(3, 2)


def test_random_instances_match_scipy():
    rng = np.random.default_rng(0)
    for _ in range(25):
        m, n = rng.integers(2, 7), rng.integers(2, 7)
        a = rng.integers(0, 5, size=(m, n))
        a[:, 0] += 1  # keep every row satisfiable
        b = rng.integers(1, 9, size=m)
        c = rng.integers(1, 9, size=n)
        x, y, value = solve_min_ge(c.tolist(), a.tolist(), b.tolist())
        check_certificates(c.tolist(), a.tolist(), b.tolist(), x, y, value)
        assert abs(float(value) - scipy_value(c.tolist(), a.tolist(), b.tolist())) < 1e-7


def test_negative_rhs_rows():
    # a >= constraint with negative rhs is slack at the optimum
    c = [5, 4]
    a = [[1, 1], [-1, -1]]
    b = [3, -10]  # second row: x + y <= 10
    x, y, value = solve_min_ge(c, a, b)
    check_certificates(c, a, b, x, y, value)
    assert value == Fraction(12)


def test_infeasible_detected():
    with pytest.raises(InfeasibleError):
        solve_min_ge([1], [[1], [-1]], [2, -1])  # x >= 2 and x <= 1


def test_unbounded_detected():
    with pytest.raises(UnboundedError):
        solve_min_ge([-1], [[1]], [1])  # min -x, x >= 1
