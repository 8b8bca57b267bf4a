from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alladi.series import (
    InconsistentCountsError,
    PowerSeries,
    assumption_check_minus_q_inverse,
    euler_transform,
    inverse_euler_transform,
    reciprocal_coefficients,
)
from oracles import F2_IRREDUCIBLE_COUNTS, power_series_product


def test_euler_transform_examples():
    assert euler_transform(F2_IRREDUCIBLE_COUNTS) == [2 ** n for n in range(13)]
    assert euler_transform([0, 0, 0]) == [1, 0, 0, 0]
    assert euler_transform([1, 0, 0, 0, 0]) == [1] * 6


def test_inverse_examples():
    assert inverse_euler_transform([2 ** n for n in range(5)]) == [2, 1, 2, 3]
    assert inverse_euler_transform([1, 0, 0, 0]) == [0, 0, 0]
    with pytest.raises(InconsistentCountsError):
        inverse_euler_transform([2, 1])
    with pytest.raises(InconsistentCountsError):
        inverse_euler_transform([1, 1, 0])  # forces pi#(2) = -1/2


@given(st.lists(st.integers(0, 6), min_size=1, max_size=10))
def test_round_trip(pi):
    assert inverse_euler_transform(euler_transform(pi)) == pi


@given(st.lists(st.integers(0, 4), min_size=1, max_size=8))
def test_euler_transform_matches_product(pi):
    factors = [d for d, n in enumerate(pi, 1) for _ in range(n)]
    assert euler_transform(pi) == power_series_product(factors, len(pi))


def test_reciprocal_examples():
    Z = PowerSeries([2 ** n for n in range(9)])
    assert list(reciprocal_coefficients(Z)) == [1, -2] + [0] * 7
    assert list(reciprocal_coefficients(PowerSeries.one(5))) == [1, 0, 0, 0, 0, 0]
    with pytest.raises(ZeroDivisionError):
        PowerSeries([0, 1]).reciprocal()


@given(st.lists(st.fractions(max_denominator=7), min_size=1, max_size=9).filter(lambda c: c[0] != 0))
def test_series_times_reciprocal_is_one(c):
    Z = PowerSeries(c)
    assert list(Z * Z.reciprocal()) == [1] + [0] * Z.order


def test_log_derivative_and_csv():
    Z = PowerSeries([2 ** n for n in range(8)])
    # Z = 1/(1-2z): Z'/Z = 2/(1-2z)
    assert list(Z.log_derivative()) == [2 ** (n + 1) for n in range(7)]
    Y = PowerSeries([Fraction(1, 3), -2, Fraction(5, 7)])
    assert PowerSeries.from_csv(Y.to_csv()) == Y
    assert Y.to_csv().splitlines()[0] == "index,numerator,denominator"


def test_assumption_check():
    assert assumption_check_minus_q_inverse(PowerSeries([2 ** n for n in range(24)]), 2) is True
    assert assumption_check_minus_q_inverse(PowerSeries.one(24), 2) is True
    engineered = PowerSeries([(-2) ** n for n in range(24)])  # 1/(1+2z)
    assert assumption_check_minus_q_inverse(engineered, 2) is False
