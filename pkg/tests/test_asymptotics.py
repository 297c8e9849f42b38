from __future__ import annotations

import math
from fractions import Fraction as F

import pytest

from excessum import asymptotics as asy
from excessum.counts import count_components, count_hypercycles, count_rooted_hypertrees
from excessum.recurrence import compute_f


def test_exact_log_handles_huge_integers():
    big = 10 ** 500
    assert abs(asy.exact_log(big) - 500 * math.log(10)) < 1e-9
    with pytest.raises(ValueError):
        asy.exact_log(0)


def test_rooted_ratio_b3():
    r = asy.asympt_rooted_hypertrees(3, 100).ratio_to(count_rooted_hypertrees(3, 100))
    assert 0.99 <= r <= 1.01


def test_rooted_trend_b2():
    devs = [abs(asy.asympt_rooted_hypertrees(2, s).ratio_to(count_rooted_hypertrees(2, s)) - 1) for s in (10, 20, 50)]
    assert devs[0] > devs[1] > devs[2]


def test_printed_rooted_form_is_short_by_e():
    for b, s in ((2, 400), (3, 400)):
        r = asy.asympt_rooted_hypertrees_printed(b, s).ratio_to(count_rooted_hypertrees(b, s))
        assert abs(r / math.e - 1) < 0.01


def test_hypertrees():
    r = asy.asympt_hypertrees(2, 30).ratio_to(31 ** 29)
    assert abs(r - 1) < 0.02
    a = asy.asympt_hypertrees(3, 50).log_value
    assert a == pytest.approx(asy.asympt_rooted_hypertrees(3, 50).log_value - math.log(101))
    assert math.isfinite(asy.asympt_hypertrees(4, 40).value)


def test_b3_stirling_form():
    from excessum.species import solve_T

    exact = solve_T(3, 201)[201]
    assert abs(asy.rooted_hypertree_coeff_b3(100) / float(exact) - 1) < 1e-4


def test_hypercycle_error_is_order_inverse_sqrt():
    # (1 - ratio) sqrt(s) settles, so the relative error decays like s^(-1/2)
    vals = []
    for s in (50, 200, 800):
        r = asy.asympt_hypercycles(2, s).ratio_to(count_hypercycles(2, s))
        vals.append((1 - r) * math.sqrt(s))
    assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0])
    assert 1.7 < vals[2] < 1.9


def test_hypercycle_b3_band_and_trend():
    r10 = asy.asympt_hypercycles(3, 10).ratio_to(count_hypercycles(3, 10))
    r100 = asy.asympt_hypercycles(3, 100).ratio_to(count_hypercycles(3, 100))
    assert abs(r100 - 1) < abs(r10 - 1)


def test_component_leading_a():
    assert asy.leading_A(2, 2) == F(5, 16)


def test_component_trend():
    devs = [abs(asy.asympt_components(3, 1, s).ratio_to(count_components(3, 1, 2 * s - 1)) - 1) for s in (20, 50, 100)]
    assert devs[0] > devs[1] > devs[2]


def test_chain_limits():
    # the ratio approaches chain_limit_ratio(m), not 1
    for b, ell, m in ((3, 0, 3), (2, 1, 4), (2, 0, 2)):
        gaps = []
        for s in (100, 400, 1600):
            r = asy.chain_coeff_asympt(b, ell, m, s).ratio_to(asy.chain_coeff_exact(b, ell, m, s))
            gaps.append(abs(r / asy.chain_limit_ratio(m) - 1))
        assert gaps[0] > gaps[1] > gaps[2]
    r = asy.chain_coeff_asympt(2, 0, 2, 400).ratio_to(asy.chain_coeff_exact(2, 0, 2, 400))
    assert abs(r / asy.chain_limit_ratio(2) - 1) < 1e-3
    assert asy.chain_limit_ratio(2) == pytest.approx(2 * math.sqrt(2) / math.e)
    assert asy.chain_coeff_asympt(2, 0, 4, 200).log_value > asy.chain_coeff_asympt(2, 0, 2, 200).log_value


@pytest.mark.parametrize("b,ell,n", [(2, 1, 10), (3, 1, 9), (2, 2, 12), (3, 2, 12)])
def test_sandwich(b, ell, n):
    sb = asy.wright_bounds(b, ell, n)
    assert sb.holds()
    A = asy.leading_A(ell, b)
    assert sb.B == 3 * ell * (b - 1) * A


def test_printed_sandwich_constant_agrees_at_b2_only():
    for ell in (1, 2, 3):
        B, C, Cp = asy.sandwich_constants(ell, 2)
        assert C == Cp
        B, C, Cp = asy.sandwich_constants(ell, 3)
        assert C != Cp


def test_sandwich_tightens_with_n():
    sb = asy.wright_bounds(2, 1, 200)
    assert sb.holds()
    assert 0.5 < float(sb.lower / sb.exact) <= 1 <= float(sb.upper / sb.exact) < 2


def test_logs_survive_large_s():
    est = asy.asympt_rooted_hypertrees(3, 10_000)
    assert math.isfinite(est.log_value)
    assert est.value == math.inf or est.value > 0
