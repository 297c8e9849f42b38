from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from excessum.counts import count_rooted_hypertrees
from excessum.exact import LaurentPoly, TruncSeries
from excessum.species import (
    SmoothGF,
    check_uniformity,
    compose_with_T,
    laurent_in_theta_as_tau_series,
    lif_coeff,
    phi_pow_coeff,
    smooth_catalog,
    solve_T,
)


def test_T_for_graphs_is_cayley():
    T = solve_T(2, 8)
    assert [T[n] * math.factorial(n) for n in range(1, 9)] == [n ** (n - 1) for n in range(1, 9)]


@pytest.mark.parametrize("b", [3, 4, 5])
def test_T_counts_rooted_hypertrees(b):
    K = 4 * (b - 1) + 1
    T = solve_T(b, K)
    for s in range(5):
        n = s * (b - 1) + 1
        assert T[n] * math.factorial(n) == count_rooted_hypertrees(b, s)


def test_phi_pow_coeff():
    assert phi_pow_coeff(3, 5, 4) == F(25, 8)
    assert phi_pow_coeff(3, 5, 3) == 0


@pytest.mark.parametrize("b", [2, 3, 4])
@pytest.mark.parametrize("ell", [-1, 0])
def test_lif_agrees_with_direct_composition(b, ell):
    H = smooth_catalog(ell, b)
    K = 9
    direct = compose_with_T(H, b, K)
    for n in range(1, K + 1):
        assert lif_coeff(H, b, n) == direct[n]


def test_hypertree_series_small_values():
    H = smooth_catalog(-1, 2)
    assert [lif_coeff(H, 2, n) * math.factorial(n) for n in range(1, 6)] == [1, 1, 3, 16, 125]


def test_uniformity_check():
    with pytest.raises(ValueError):
        check_uniformity(1)


def test_log_only_at_excess_zero():
    with pytest.raises(ValueError):
        SmoothGF(1, LaurentPoly(), F(1))


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=5))
def test_theta_substitution_is_linear_and_exact(terms):
    f = LaurentPoly(terms)
    ser = laurent_in_theta_as_tau_series(f, 6)
    x = TruncSeries.x(6)
    expected = TruncSeries.zero(6)
    for d, c in f.items():
        base = 1 - x
        if d >= 0:
            expected = expected + (base ** d) * c
        else:
            from excessum.exact import series_inv

            expected = expected + (series_inv(base) ** (-d)) * c
    assert ser == expected
