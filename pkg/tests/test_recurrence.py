from __future__ import annotations

from fractions import Fraction as F

import pytest

from excessum.exact import LaurentPoly, LogTermRequired
from excessum.recurrence import (
    MarkedLaurentTable,
    compute_f,
    fjk_next,
    r_ell,
    smooth_series,
    to_comb_form,
    wright_coeffs,
    wright_lambdas,
)

from golden_tables import golden_cases

CASES = golden_cases()


@pytest.mark.parametrize("key", sorted(CASES))
def test_golden_table(key):
    b, ell = key
    assert compute_f(ell, b) == CASES[key]


def test_lambdas():
    assert wright_lambdas(3) == [F(1, 2), F(5, 8), F(15, 8), F(1105, 128)]


@pytest.mark.parametrize("b", [2, 3, 4, 5])
def test_structure_of_f(b):
    wc = wright_coeffs(5, b)
    for ell in range(1, 6):
        f = compute_f(ell, b)
        assert f(1) == 0
        assert f.min_degree == -3 * ell
        assert f.max_degree <= r_ell(ell, b)
        assert f.coeff(-3 * ell) == wc.leading(ell)
        form = to_comb_form(f, ell, b)
        assert all(a >= 0 for a in form.A)
        assert form.to_laurent() == f


@pytest.mark.parametrize("b", [3, 4, 5])
def test_subleading_formula(b):
    wc = wright_coeffs(5, b)
    for ell in range(1, 6):
        assert compute_f(ell, b).coeff(-3 * ell + 1) == wc.subleading(ell)


def test_subleading_shift_at_b2():
    wc = wright_coeffs(5, 2)
    for ell in range(1, 6):
        f = compute_f(ell, 2)
        assert f.coeff(-3 * ell + 1) == wc.subleading_exact(ell)
        assert wc.subleading_exact(ell) - wc.subleading(ell) == -wc.lam[ell - 1] / 2


def test_table_is_incremental():
    tab = MarkedLaurentTable(3)
    f2 = tab.compute(2)
    assert tab.known == 2
    f4 = tab.compute(4)
    assert tab.compute(2) == f2 == compute_f(2, 3)
    assert f4 == compute_f(4, 3)


def test_table_rejects_foreign_b():
    with pytest.raises(ValueError):
        compute_f(1, 3, table=MarkedLaurentTable(2))


def test_marking_step_rejects_log_with_marks():
    with pytest.raises(LogTermRequired):
        fjk_next(LaurentPoly({0: 1}), 1, 0, 2, F(1))


def test_comb_form_rejects_deep_pole():
    with pytest.raises(ValueError):
        to_comb_form(LaurentPoly({-5: 1}), 1, 2)


def test_smooth_series_dispatch():
    assert smooth_series(-1, 3).excess == -1
    assert smooth_series(2, 3).f == compute_f(2, 3)
