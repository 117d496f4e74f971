from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latgap._intmat import column_hnf, integer_kernel, saturate, solve_integer
from latgap._rational import (
    as_fraction,
    det,
    exact_sqrt,
    inverse,
    nullspace,
    root_upper_bound,
    sqrt_enclosure,
)


def test_as_fraction_forms():
    assert as_fraction("3/2") == Fraction(3, 2)
    assert as_fraction([6, 4]) == Fraction(3, 2)
    assert as_fraction(0.5) == Fraction(1, 2)
    assert as_fraction(Fraction(7, 3)) == Fraction(7, 3)


@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(10 ** 6), max_denominator=1000))
def test_sqrt_enclosure_brackets(q):
    enc = sqrt_enclosure(q)
    assert enc.lo ** 2 <= q <= enc.hi ** 2
    assert enc.width <= Fraction(1, 10 ** 12) * (1 + enc.hi)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(3)) is None
    assert sqrt_enclosure(Fraction(9, 4)).exact


@given(st.integers(1, 40), st.integers(2, 8))
def test_root_upper_bound(m, k):
    q = Fraction(m)
    r = root_upper_bound(q, k)
    assert r ** k >= q
    assert float(r) - m ** (1 / k) < 1e-12 * m


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_roundtrip(m):
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError, match="singular"):
            inverse(m)
        return
    inv = inverse(m)
    for i in range(3):
        for j in range(3):
            assert sum(Fraction(m[i][k]) * inv[k][j] for k in range(3)) == int(i == j)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3))
def test_hnf_transform_and_kernel(m):
    h, u, _ = column_hnf(m)
    assert [[sum(m[i][k] * u[k][j] for k in range(4)) for j in range(4)] for i in range(len(m))] == h
    assert abs(det(u)) == 1
    for v in integer_kernel(m, 4):
        assert all(sum(r[k] * v[k] for k in range(4)) == 0 for r in m)
    assert len(integer_kernel(m, 4)) == len(nullspace(m, 4))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=2, max_size=2),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_integer(m, x):
    b = [sum(r[k] * x[k] for k in range(3)) for r in m]
    sol = solve_integer(m, b, 3)
    assert sol is not None
    assert [sum(r[k] * sol[k] for k in range(3)) for r in m] == b


def test_saturate_example():
    # the integer points on the line through (2, 2) are generated by (1, 1)
    assert saturate([[2, 2]], 2) in ([[1, 1]], [[-1, -1]])
