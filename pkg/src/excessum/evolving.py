"""Edge-by-edge random hypergraph process stopped at its first cycle."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from .counts import count_hypertrees
from .hypergraphs import Edge, Hypergraph, components, excess
from .parallel import chunk_rng, chunk_sizes, map_chunks, mean_stderr
from .species import check_uniformity

MC_CHUNK = 5000
MASK_LIMIT = 62


def _check_size(b: int, n: int) -> None:
    check_uniformity(b)
    if n <= b:
        raise ValueError(f"need n > b for a cycle to be reachable, got n={n}, b={b}")


@dataclass(frozen=True)
class EvolvingRun:
    n: int
    b: int
    edges: Tuple[Edge, ...]

    @property
    def m_first_cycle(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "b": self.b, "edges": [list(e) for e in self.edges], "mFirstCycle": self.m_first_cycle}


def simulate_first_cycle(b: int, n: int, rng: np.random.Generator | int | None = None, check: bool = False) -> EvolvingRun:
    """Add uniform new edges until one meets an existing component in >= 2 vertices.

    With ``check`` every prefix before the last edge is verified to be a
    forest of hypertrees by an excess count per component.
    """
    _check_size(b, n)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    parent = list(range(n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    present = set()
    edges: List[Edge] = []
    total = math.comb(n, b)
    while True:
        if len(present) == total:  # pragma: no cover
            raise AssertionError("all edges added without a cycle")
        while True:
            e = tuple(sorted(int(v) + 1 for v in rng.choice(n, size=b, replace=False)))
            if e not in present:
                break
        present.add(e)
        edges.append(e)
        roots = [find(v) for v in e]
        if len(set(roots)) < b:
            break
        for r in roots[1:]:
            parent[r] = roots[0]
        if check:
            H = Hypergraph(n, b, tuple(edges))
            assert all(excess(C) == -1 for C in components(H))
    return EvolvingRun(n, b, tuple(edges))


def _evolve_chunk(b: int, n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """m_first_cycle for ``size`` independent runs, advanced in lockstep."""
    labels = np.tile(np.arange(n, dtype=np.int64), (size, 1))
    kmax = (n - 1) // (b - 1) + 1
    present = np.zeros((size, kmax), dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    weights = np.int64(1) << np.arange(n, dtype=np.int64)
    step = 0
    while active.size:
        step += 1
        todo = np.arange(active.size)
        verts = np.empty((active.size, b), dtype=np.int64)
        codes = np.empty(active.size, dtype=np.int64)
        while todo.size:
            v = np.argpartition(rng.random((todo.size, n)), b - 1, axis=1)[:, :b]
            c = weights[v].sum(axis=1)
            dup = (present[active[todo], : step - 1] == c[:, None]).any(axis=1)
            keep = ~dup
            verts[todo[keep]] = v[keep]
            codes[todo[keep]] = c[keep]
            todo = todo[dup]
        present[active, step - 1] = codes
        lab = np.sort(np.take_along_axis(labels[active], verts, axis=1), axis=1)
        cyc = (np.diff(lab, axis=1) == 0).any(axis=1)
        out[active[cyc]] = step
        grow = active[~cyc]
        lab = lab[~cyc]
        if grow.size:
            sub = labels[grow]
            hit = (sub[:, :, None] == lab[:, None, :]).any(axis=2)
            labels[grow] = np.where(hit, lab[:, :1], sub)
        active = grow
    return out


def simulate_many(b: int, n: int, runs: int, seed: int, workers: int | None = None) -> np.ndarray:
    """m_first_cycle for ``runs`` seeded runs; independent of the worker count."""
    _check_size(b, n)
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if n <= MASK_LIMIT:
        fn = lambda i, sz: _evolve_chunk(b, n, chunk_rng(seed, i), sz)  # noqa: E731
    else:
        def fn(i, sz):
            rng = chunk_rng(seed, i)
            return np.array([simulate_first_cycle(b, n, rng).m_first_cycle for _ in range(sz)], dtype=np.int64)
    return np.concatenate(map_chunks(fn, chunk_sizes(runs, MC_CHUNK), workers))


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    runs: int


def monte_carlo_mean(b: int, n: int, runs: int, seed: int, workers: int | None = None) -> MonteCarloResult:
    m = simulate_many(b, n, runs, seed, workers)
    tot = int(m.sum())
    sq = int((m * m).sum())
    mean, se = mean_stderr(tot, sq, runs)
    return MonteCarloResult(mean, se, runs)


# --------------------------------------------------------------------------
# exact expectation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ForestCountTable:
    b: int
    n: int
    f: Dict[int, int]

    @property
    def N(self) -> int:
        return math.comb(self.n, self.b)

    def total(self) -> int:
        return sum(self.f.values())

    def to_json(self) -> dict:
        return {"b": self.b, "n": self.n, "N": str(self.N), "f": {str(m): str(v) for m, v in sorted(self.f.items())}}


@lru_cache(maxsize=None)
def _forest_row(b: int, n: int) -> Tuple[int, ...]:
    # split off the component of the smallest vertex: i edges, i(b-1)+1 vertices
    if n == 0:
        return (1,)
    mmax = (n - 1) // (b - 1)
    row = [0] * (mmax + 1)
    for i in range(mmax + 1):
        v = i * (b - 1) + 1
        w = math.comb(n - 1, v - 1) * count_hypertrees(b, i)
        for j, c in enumerate(_forest_row(b, n - v)):
            row[i + j] += w * c
    return tuple(row)


def forest_counts(b: int, n: int) -> ForestCountTable:
    """f[m] = number of hypertree forests on n labelled vertices with m edges."""
    check_uniformity(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    return ForestCountTable(b, n, {m: c for m, c in enumerate(_forest_row(b, n)) if c})


def exact_mean(b: int, n: int) -> Fraction:
    """E[m_first_cycle] = sum_{m>=0} f_m / C(N, m); also checked as 1 + sum_{m>=1} m f_m/(m C(N, m))."""
    _check_size(b, n)
    tab = forest_counts(b, n)
    N = tab.N
    direct = sum((Fraction(c, math.comb(N, m)) for m, c in tab.f.items()), Fraction(0))
    psi = 1 + sum((Fraction(m * c, m * math.comb(N, m)) for m, c in tab.f.items() if m >= 1), Fraction(0))
    assert direct == psi
    return direct


def asympt_mean_evolving(b: int, n: int) -> float:
    """2n / (3b(b-1))."""
    check_uniformity(b)
    return 2 * n / (3 * b * (b - 1))


def ratio_report(b: int, ns=(50, 100, 200)) -> List[dict]:
    """exact_mean / asymptotic at each n, for the record."""
    out = []
    for n in ns:
        e = exact_mean(b, n)
        out.append({"n": n, "exactMean": float(e), "asympt": asympt_mean_evolving(b, n), "ratio": float(e) / asympt_mean_evolving(b, n)})
    return out
