from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from excessum import evolving as ev
from excessum.hypergraphs import Hypergraph, components, excess, iter_hypergraphs
from excessum.exact import series_exp
from excessum.species import compose_with_T, smooth_catalog


def test_forest_count_examples():
    assert ev.forest_counts(2, 4).f == {0: 1, 1: 6, 2: 15, 3: 16}
    assert ev.forest_counts(3, 3).f == {0: 1, 1: 1}
    assert ev.forest_counts(2, 4).N == 6


@pytest.mark.parametrize("b,n", [(2, 5), (2, 6), (3, 5), (3, 6), (4, 6)])
def test_forest_counts_against_bruteforce(b, n):
    tally = Counter(H.s for H in iter_hypergraphs(b, n) if all(excess(C) == -1 for C in components(H)))
    assert dict(tally) == ev.forest_counts(b, n).f


@pytest.mark.parametrize("b", [2, 3])
def test_forest_total_matches_exponential(b):
    K = 9
    F_series = series_exp(compose_with_T(smooth_catalog(-1, b), b, K))
    for n in range(1, K + 1):
        assert ev.forest_counts(b, n).total() == F_series[n] * math.factorial(n)


def test_exact_mean_examples():
    assert ev.exact_mean(2, 3) == 3
    assert ev.exact_mean(2, 4) == F(19, 5)
    assert ev.exact_mean(3, 4) == 2


def test_deterministic_runs():
    assert all(ev.simulate_first_cycle(2, 3, s).m_first_cycle == 3 for s in range(20))
    assert all(ev.simulate_first_cycle(3, 4, s).m_first_cycle == 2 for s in range(20))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 40), st.integers(0, 2 ** 31))
def test_run_invariants(b, extra, seed):
    n = b + 1 + extra
    run = ev.simulate_first_cycle(b, n, seed, check=True)
    assert len(set(run.edges)) == len(run.edges) >= 2
    prefix = Hypergraph(n, b, run.edges[:-1])
    assert all(excess(C) == -1 for C in components(prefix))
    last = set(run.edges[-1])
    assert any(len(last & set(C.vertices)) >= 2 for C in components(prefix))


def test_vectorized_and_scalar_agree_in_distribution():
    ex = float(ev.exact_mean(2, 12))
    m = ev.monte_carlo_mean(2, 12, 40_000, seed=3)
    assert abs(m.mean - ex) <= 4 * m.stderr
    scalar = [ev.simulate_first_cycle(2, 12, np.random.default_rng([3, i])).m_first_cycle for i in range(4000)]
    se = np.std(scalar, ddof=1) / math.sqrt(len(scalar))
    assert abs(np.mean(scalar) - ex) <= 4 * se


def test_large_n_falls_back_to_scalar_path():
    m = ev.monte_carlo_mean(2, 70, 300, seed=1)
    assert abs(m.mean - float(ev.exact_mean(2, 70))) <= 4 * m.stderr


def test_worker_count_does_not_change_results():
    a = ev.simulate_many(3, 15, 12_000, seed=9, workers=1)
    b = ev.simulate_many(3, 15, 12_000, seed=9, workers=4)
    assert np.array_equal(a, b)


def test_asympt_examples():
    assert ev.asympt_mean_evolving(2, 600) == pytest.approx(200.0)
    assert ev.asympt_mean_evolving(3, 600) == pytest.approx(600 / 9)


def test_ratio_report_decreases():
    rows = ev.ratio_report(2)
    ratios = [r["ratio"] for r in rows]
    assert ratios[0] > ratios[1] > ratios[2] > 1


def test_too_small():
    with pytest.raises(ValueError):
        ev.exact_mean(3, 3)
