"""Seeded, chunked Monte-Carlo driver.

Work is split into fixed-size chunks whose RNG streams depend only on
(seed, chunk index), and chunk results are reduced in index order.  The
outcome is therefore identical for any worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np

R = TypeVar("R")

ENV_THREADS = "EXCESSUM_THREADS"


def resolve_workers(workers: int | None = None) -> int:
    """Explicit value, else EXCESSUM_THREADS, else 1; the env var caps both."""
    cap = os.environ.get(ENV_THREADS)
    cap_n = None
    if cap:
        try:
            cap_n = int(cap)
        except ValueError as exc:
            raise ValueError(f"{ENV_THREADS} must be a positive integer, got {cap!r}") from exc
        if cap_n < 1:
            raise ValueError(f"{ENV_THREADS} must be a positive integer, got {cap!r}")
    if workers is None:
        workers = cap_n or 1
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return min(workers, cap_n) if cap_n else workers


def chunk_sizes(runs: int, chunk: int) -> List[int]:
    if runs < 0:
        raise ValueError("runs must be >= 0")
    full, rest = divmod(runs, chunk)
    return [chunk] * full + ([rest] if rest else [])


def chunk_rng(seed: int, idx: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), idx])


def map_chunks(fn: Callable[[int, int], R], sizes: Sequence[int], workers: int | None = None) -> List[R]:
    """[fn(idx, size) for each chunk], computed on up to ``workers`` threads, in chunk order."""
    w = resolve_workers(workers)
    jobs = list(enumerate(sizes))
    if w == 1 or len(jobs) <= 1:
        return [fn(i, sz) for i, sz in jobs]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))


def mean_stderr(total: int, total_sq: int, runs: int) -> tuple:
    """Sample mean and standard error from exact integer sums."""
    if runs < 1:
        raise ValueError("need at least one run")
    mean = total / runs
    if runs == 1:
        return mean, 0.0
    var = (total_sq - total * total / runs) / (runs - 1)
    return mean, (max(var, 0.0) / runs) ** 0.5
