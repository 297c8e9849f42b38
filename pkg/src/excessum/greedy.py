"""Random greedy hypermatching: simulation, exact oracle, mean series and asymptotics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from .counts import count_hypertrees
from .exact import TruncSeries, series_mul, series_pow
from .hypergraphs import Edge, Hypergraph, decode_edges, random_code
from .parallel import chunk_rng, chunk_sizes, map_chunks, mean_stderr
from .recurrence import wright_lambdas
from .species import check_uniformity, phi_pow_coeff, solve_T

ORACLE_CAP = 20
MC_CHUNK = 250


@dataclass(frozen=True)
class MatchingRun:
    input: Hypergraph
    seed: int | None
    matching: Tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.matching)

    def to_json(self) -> dict:
        return {"input": self.input.to_json(), "seed": self.seed, "matching": [list(e) for e in self.matching], "size": self.size}


def is_maximal_matching(H: Hypergraph, matching: Sequence[Edge]) -> bool:
    used = [v for e in matching for v in e]
    if len(used) != len(set(used)) or not set(matching) <= set(H.edges):
        return False
    covered = set(used)
    return all(covered.intersection(e) for e in H.edges)


def _greedy_edges(edges: Sequence[Edge], order: Sequence[int]) -> List[Edge]:
    # picking a uniform remaining edge each step is the same as scanning a
    # uniform permutation and keeping every edge disjoint from those kept
    taken = set()
    out = []
    for i in order:
        e = edges[i]
        if taken.isdisjoint(e):
            taken.update(e)
            out.append(e)
    return out


def greedy_matching(H: Hypergraph, rng: np.random.Generator | int | None = None) -> MatchingRun:
    """One run of the greedy algorithm; the result is checked to be a maximal matching."""
    seed = rng if isinstance(rng, (int, np.integer)) or rng is None else None
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    order = rng.permutation(len(H.edges))
    matching = tuple(_greedy_edges(H.edges, order))
    if not is_maximal_matching(H, matching):  # pragma: no cover
        raise AssertionError("greedy produced a non-maximal matching")
    return MatchingRun(H, None if seed is None else int(seed), matching)


def exact_expectation(H: Hypergraph, cap: int = ORACLE_CAP) -> Fraction:
    """E[size] = 1 + mean over e of E[edges disjoint from e], memoized on edge sets."""
    if len(H.edges) > cap:
        raise ValueError(f"{len(H.edges)} edges exceeds the oracle cap {cap}")
    memo: Dict[FrozenSet[Edge], Fraction] = {}

    def rec(es: FrozenSet[Edge]) -> Fraction:
        if not es:
            return Fraction(0)
        got = memo.get(es)
        if got is None:
            acc = sum((rec(frozenset(f for f in es if set(f).isdisjoint(e))) for e in es), Fraction(0))
            got = memo[es] = 1 + acc / len(es)
        return got

    return rec(frozenset(H.edges))


# --------------------------------------------------------------------------
# mean series over hypertrees
# --------------------------------------------------------------------------

def mean_series_hypertrees(b: int, K: int) -> TruncSeries:
    """E(x) = (T/b)(1 - (1 + T^(b-1)/(b-2)!)^(-1/(b-1))) to order K."""
    check_uniformity(b)
    if K < 1:
        raise ValueError("K must be >= 1")
    T = solve_T(b, K)
    inner = 1 + (T ** (b - 1)) * Fraction(1, math.factorial(b - 2))
    return series_mul(T, 1 - series_pow(inner, Fraction(-1, b - 1))) * Fraction(1, b)


def _mean_kernel(b: int, imax: int) -> List[Fraction]:
    # E as a series in T: sum_i g_i T^(1 + i(b-1)), from the binomial series
    alpha = Fraction(-1, b - 1)
    fact = Fraction(1, math.factorial(b - 2))
    g = [Fraction(0)]
    binom = Fraction(1)
    for i in range(1, imax + 1):
        binom = binom * (alpha - i + 1) / i
        g.append(-binom * fact ** i / b)
    return g


def mean_series_total(b: int, n: int) -> Fraction:
    """n! [x^n] E(x) by Lagrange inversion; works at n in the thousands."""
    check_uniformity(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    if (n - 1) % (b - 1):
        return Fraction(0)
    imax = (n - 1) // (b - 1)
    g = _mean_kernel(b, imax)
    acc = Fraction(0)
    for i in range(1, imax + 1):
        acc += (1 + i * (b - 1)) * g[i] * phi_pow_coeff(b, n, n - 1 - i * (b - 1))
    return acc * math.factorial(n) / n


def exact_mean_hypertrees(b: int, n: int) -> Fraction:
    """Mean greedy matching size over uniform hypertrees on n vertices."""
    if (n - 1) % (b - 1):
        raise ValueError(f"no hypertree on n={n} vertices at b={b}")
    return mean_series_total(b, n) / count_hypertrees(b, (n - 1) // (b - 1))


# --------------------------------------------------------------------------
# leading coefficients
# --------------------------------------------------------------------------

def _q(b: int) -> float:
    return 1 - 2 ** (-b / (b - 1))


@dataclass(frozen=True)
class MeanSeriesCoeffs:
    """``beta[l]`` is the rational part of b-hat: bhat_l = beta_l (1 - 2^(-b/(b-1))) / 2^(l/(b-1))."""

    b: int
    beta: Tuple[Fraction, ...]
    sigma: Tuple[Fraction, ...]
    lam: Tuple[Fraction, ...]

    @property
    def bhat(self) -> Tuple[float, ...]:
        return tuple(float(x) * _q(self.b) / 2 ** (ell / (self.b - 1)) for ell, x in enumerate(self.beta))

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "beta": [str(x) for x in self.beta],
            "bhat": list(self.bhat),
            "sigma": [str(x) for x in self.sigma],
            "lambda": [str(x) for x in self.lam],
        }


def sigma_recurrence(b: int, ell_max: int) -> List[Fraction]:
    """sigma_l = 1/3 + (3l+1) lam_{l-1} sigma_{l-1}/(2 lam_l) + sum_p lam_{l-1-p} lam_p sigma_p / lam_l."""
    lam = wright_lambdas(ell_max)
    sig = [Fraction(3 * b - 2, 3 * b)]
    for ell in range(1, ell_max + 1):
        v = Fraction(1, 3) + (3 * ell + 1) * lam[ell - 1] * sig[ell - 1] / (2 * lam[ell])
        v += sum((lam[ell - 1 - p] * lam[p] * sig[p] for p in range(ell)), Fraction(0)) / lam[ell]
        sig.append(v)
    return sig


def mean_series_coeffs(b: int, ell_max: int) -> MeanSeriesCoeffs:
    check_uniformity(b)
    if ell_max < 0:
        raise ValueError("ell_max must be >= 0")
    lam = wright_lambdas(ell_max)
    beta = [Fraction(3 * b - 2, 4 * b)]
    for ell in range(1, ell_max + 1):
        acc = (3 * ell + 1) * beta[ell - 1] + 2 * sum((lam[ell - 1 - p] * beta[p] for p in range(ell)), Fraction(0))
        beta.append(lam[ell] / 2 + acc / 2)
    sigma = sigma_recurrence(b, ell_max)
    for ell in range(ell_max + 1):
        assert 2 * beta[ell] == 3 * lam[ell] * sigma[ell]
    return MeanSeriesCoeffs(b, tuple(beta), tuple(sigma), tuple(lam))


def asympt_mean(b: int, ell: int, n: int) -> float:
    """Leading-order mean greedy matching size on uniform excess-ell inputs with n vertices."""
    check_uniformity(b)
    if ell < -1:
        raise ValueError("ell must be >= -1")
    if ell == -1:
        return _q(b) * n / b
    if (n + ell) % (b - 1):
        raise ValueError(f"no excess-{ell} component on n={n} vertices at b={b}")
    s = (n + ell) // (b - 1)
    sig = float(mean_series_coeffs(b, ell).sigma[ell])
    a = 3 * ell + 1
    return sig * math.e * _q(b) * ((a / (a + 2)) ** (a / 2)) / (2 * (ell + 1)) * s


def asympt_mean_hypercycles_display(b: int, n: int) -> float:
    """(3b-2)(1-2^(-b/(b-1)))(e/3)^(3/2)/(2b sqrt(pi)) s, the separate excess-0 display."""
    check_uniformity(b)
    if n % (b - 1):
        raise ValueError(f"no hypercycle on n={n} vertices at b={b}")
    s = n // (b - 1)
    return (3 * b - 2) * _q(b) * (math.e / 3) ** 1.5 / (2 * b * math.sqrt(math.pi)) * s


# --------------------------------------------------------------------------
# Monte Carlo over uniform hypertrees
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    runs: int

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "runs": self.runs}


def _hypertree_chunk(b: int, s: int, seed: int, idx: int, size: int) -> Tuple[int, int]:
    rng = chunk_rng(seed, idx)
    tot = sq = 0
    for _ in range(size):
        edges = decode_edges(random_code(b, s, 0, rng))
        y = len(_greedy_edges(edges, rng.permutation(len(edges))))
        tot += y
        sq += y * y
    return tot, sq


def monte_carlo_mean(b: int, n: int, runs: int, seed: int, workers: int | None = None) -> MonteCarloResult:
    """Empirical mean greedy matching size over uniform random hypertrees on n vertices."""
    check_uniformity(b)
    if n < 1 or (n - 1) % (b - 1):
        raise ValueError(f"need n = 1 mod {b - 1}, got n={n}")
    if runs < 1:
        raise ValueError("runs must be >= 1")
    s = (n - 1) // (b - 1)
    parts = map_chunks(lambda i, sz: _hypertree_chunk(b, s, seed, i, sz), chunk_sizes(runs, MC_CHUNK), workers)
    tot = sum(p[0] for p in parts)
    sq = sum(p[1] for p in parts)
    mean, se = mean_stderr(tot, sq, runs)
    return MonteCarloResult(mean, se, runs)


def monte_carlo_on(H: Hypergraph, runs: int, seed: int, workers: int | None = None) -> MonteCarloResult:
    """Empirical mean greedy matching size on a fixed hypergraph."""
    edges = H.edges

    def chunk(idx: int, size: int):
        rng = chunk_rng(seed, idx)
        tot = sq = 0
        for _ in range(size):
            y = len(_greedy_edges(edges, rng.permutation(len(edges))))
            tot += y
            sq += y * y
        return tot, sq

    parts = map_chunks(chunk, chunk_sizes(runs, MC_CHUNK), workers)
    mean, se = mean_stderr(sum(p[0] for p in parts), sum(p[1] for p in parts), runs)
    return MonteCarloResult(mean, se, runs)
