from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from excessum.exact import (
    LaurentPoly,
    LogTermRequired,
    TruncSeries,
    UCycPoly,
    binomial_expand,
    binomial_series,
    laurent_antiderive_zero_at_one,
    laurent_derive,
    rational_from_str,
    rational_to_str,
    series_exp,
    series_inv,
    series_log,
    series_mul,
    series_pow,
    ucyc_exp_extract,
)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def series(order, const=None):
    coeffs = st.lists(rats, min_size=order + 1, max_size=order + 1)
    if const is not None:
        coeffs = coeffs.map(lambda c: [F(const)] + c[1:])
    return coeffs.map(lambda c: TruncSeries(c, order))


laurents = st.dictionaries(st.integers(-6, 6), rats, max_size=6).map(LaurentPoly)


def test_exp_of_x_is_reciprocal_factorials():
    e = series_exp(TruncSeries.x(8))
    assert list(e.coeffs) == [F(1, math.factorial(k)) for k in range(9)]


def test_log_of_one_plus_x():
    lg = series_log(1 + TruncSeries.x(6))
    assert list(lg.coeffs) == [0] + [F((-1) ** (k + 1), k) for k in range(1, 7)]


def test_exp_requires_zero_constant():
    with pytest.raises(ValueError):
        series_exp(TruncSeries([1, 1], 1))


def test_power_matches_binomial_series():
    a = 1 + TruncSeries.x(7)
    assert series_pow(a, F(-1, 3)) == binomial_series(F(-1, 3), 7)


def test_floats_rejected():
    with pytest.raises(TypeError):
        TruncSeries([0.5])


def test_rational_strings_round_trip():
    for q in (F(0), F(-7, 3), F(10 ** 40 + 1, 7)):
        assert rational_from_str(rational_to_str(q)) == q
    assert rational_to_str(F(3)) == "3/1"


@settings(max_examples=40, deadline=None)
@given(series(6), series(6))
def test_mul_commutes(a, b):
    assert series_mul(a, b) == series_mul(b, a)


@settings(max_examples=30, deadline=None)
@given(series(6, const=0))
def test_log_inverts_exp(a):
    assert series_log(series_exp(a)) == a


@settings(max_examples=30, deadline=None)
@given(series(6, const=1))
def test_inverse(a):
    assert series_mul(a, series_inv(a)) == TruncSeries.one(6)


@settings(max_examples=30, deadline=None)
@given(series(5, const=0), series(5, const=0))
def test_exp_turns_sums_into_products(a, b):
    assert series_exp(a + b) == series_mul(series_exp(a), series_exp(b))


@settings(max_examples=40, deadline=None)
@given(laurents)
def test_antiderivative_vanishes_at_one_and_differentiates_back(f):
    f = f - LaurentPoly({-1: f.coeff(-1)})
    g = laurent_antiderive_zero_at_one(f)
    assert g(1) == 0
    assert laurent_derive(g) == f


def test_log_term_detected():
    with pytest.raises(LogTermRequired):
        laurent_antiderive_zero_at_one(LaurentPoly({-1: 1}))


@settings(max_examples=40, deadline=None)
@given(laurents, laurents)
def test_laurent_product_rule(f, g):
    assert laurent_derive(f * g) == laurent_derive(f) * g + f * laurent_derive(g)


def test_binomial_expand():
    assert binomial_expand(2, -1) == LaurentPoly({-1: 1, 0: -2, 1: 1})


def test_laurent_json_round_trip():
    f = LaurentPoly({-3: F(5, 24), 2: F(-1, 7)})
    assert LaurentPoly.from_json(f.to_json()) == f


def _naive_extract(arg: UCycPoly, du: int, dc: int) -> LaurentPoly:
    # sum_m arg^m / m!, truncated by the marker degrees
    total = LaurentPoly()
    power = UCycPoly({(0, 0): LaurentPoly({0: 1})}, du, dc)
    for m in range(0, du + 1):
        total = total + power.coeff(du, dc) / math.factorial(m)
        power = power * arg
    return total


@settings(max_examples=25, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(1, 3), st.integers(0, 3)),
        st.dictionaries(st.integers(-4, 3), rats, min_size=1, max_size=3).map(LaurentPoly),
        min_size=1,
        max_size=5,
    )
)
def test_exp_extract_matches_naive_expansion(terms):
    arg = UCycPoly(terms, 3, 3)
    assert ucyc_exp_extract(arg, 3, 3) == _naive_extract(arg, 3, 3)
