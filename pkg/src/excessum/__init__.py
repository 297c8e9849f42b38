"""Exact and asymptotic enumeration of b-uniform hypergraphs by excess."""
from __future__ import annotations

from .asymptotics import (
    AsymptoticEstimate,
    SandwichBounds,
    asympt_components,
    asympt_hypercycles,
    asympt_hypertrees,
    asympt_rooted_hypertrees,
    chain_coeff_asympt,
    chain_coeff_exact,
    rooted_hypertree_coeff_b3,
    wright_bounds,
)
from .counts import (
    CountQuery,
    count,
    count_components,
    count_forests,
    count_hypercycles,
    count_hypercycles_closed,
    count_hypertrees,
    count_rooted_hypertrees,
)
from .evolving import EvolvingRun, ForestCountTable, asympt_mean_evolving, exact_mean, forest_counts, simulate_first_cycle
from .exact import LaurentPoly, TruncSeries, UCycPoly, series_exp, series_log, series_mul, ucyc_exp_extract
from .greedy import (
    MatchingRun,
    MeanSeriesCoeffs,
    asympt_mean,
    exact_expectation,
    greedy_matching,
    mean_series_coeffs,
    mean_series_hypertrees,
    monte_carlo_mean,
)
from .hypergraphs import ForestCode, Hypergraph, decode, encode, enumerate_all, excess, prune_to_smooth, sample_forest
from .recurrence import CombForm, MarkedLaurentTable, WrightCoeffs, compute_f, to_comb_form, wright_coeffs
from .species import SmoothGF, lif_coeff, phi_pow_coeff, smooth_catalog, solve_T

__version__ = "0.1.0"
