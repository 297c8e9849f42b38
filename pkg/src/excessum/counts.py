"""Exact counts of hypertrees, forests, hypercycles and connected components."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .recurrence import smooth_series
from .species import check_uniformity, lif_coeff

FAMILIES = ("rooted-hypertree", "hypertree", "forest", "hypercycle", "component")


@dataclass(frozen=True)
class CountQuery:
    b: int
    family: str
    s: int | None = None
    n: int | None = None
    k: int = 0
    ell: int = 0

    def resolved(self) -> "CountQuery":
        """Fill in whichever of n, s is missing; reject inconsistent pairs."""
        check_uniformity(self.b)
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        ell = {"rooted-hypertree": -1, "hypertree": -1, "hypercycle": 0}.get(self.family, self.ell)
        if self.family == "forest":
            rel_n = lambda s: s * (self.b - 1) + self.k + 1  # noqa: E731
        else:
            rel_n = lambda s: s * (self.b - 1) - ell  # noqa: E731
        s, n = self.s, self.n
        if s is None and n is None:
            raise ValueError("give s or n")
        if s is None:
            top = n - (self.k + 1 if self.family == "forest" else -ell)
            if top < 0 or top % (self.b - 1):
                raise ValueError(f"n={n} is not reachable for this family at b={self.b}")
            s = top // (self.b - 1)
        elif n is None:
            n = rel_n(s)
        elif rel_n(s) != n:
            raise ValueError(f"n={n} and s={s} disagree for this family")
        return CountQuery(self.b, self.family, s, n, self.k, ell)


def _integral(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {q}")
    return q.numerator


def count_rooted_hypertrees(b: int, s: int) -> int:
    """(n-1)! n^s / ((b-1)!^s s!) with n = s(b-1) + 1."""
    check_uniformity(b)
    if s < 0:
        raise ValueError("s must be >= 0")
    n = s * (b - 1) + 1
    q = Fraction(math.factorial(n - 1) * n ** s, math.factorial(b - 1) ** s * math.factorial(s))
    return _integral(q, "rooted hypertree count")


def count_hypertrees(b: int, s: int) -> int:
    """Unrooted: the rooted count divided by the n root choices."""
    n = s * (b - 1) + 1
    return _integral(Fraction(count_rooted_hypertrees(b, s), n), "hypertree count")


def count_forests(b: int, s: int, k: int) -> int:
    """Forests of k+1 rooted hypertrees with s edges in total on n = s(b-1)+k+1 vertices."""
    check_uniformity(b)
    if s < 0 or k < 0:
        raise ValueError("s and k must be >= 0")
    n = s * (b - 1) + k + 1
    q = (
        Fraction(math.comb(n, k + 1) * (k + 1) * math.factorial(n - k - 1), math.factorial(b - 1) ** s * math.factorial(s))
        * Fraction(n) ** (s - 1)
    )
    return _integral(q, "forest count")


def count_components(b: int, ell: int, n: int) -> int:
    """Connected b-uniform hypergraphs of excess ell on n labelled vertices."""
    check_uniformity(b)
    if ell < -1:
        raise ValueError("excess must be >= -1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if (n + ell) % (b - 1):
        return 0
    H = smooth_series(ell, b)
    return _integral(math.factorial(n) * lif_coeff(H, b, n), "component count")


def _hypercycle_sum(b: int, s: int, corrected: bool) -> Fraction:
    check_uniformity(b)
    if s < 2:
        raise ValueError("s must be >= 2")
    n = s * (b - 1)
    acc = Fraction(0)
    for j in range(2, s + 1):
        term = Fraction(j, s ** j * math.factorial(s - j))
        if corrected:
            term /= j
        acc += term
    return Fraction(math.factorial(n) * n ** (s - 1) * (b - 1), 2 * math.factorial(b - 1) ** s) * acc


def count_hypercycles_closed(b: int, s: int) -> Fraction:
    """The closed hypercycle sum exactly as printed (overcounts; kept for comparison)."""
    return _hypercycle_sum(b, s, corrected=False)


def count_hypercycles_corrected(b: int, s: int) -> Fraction:
    """The closed sum with its j-th term divided by the cycle length j."""
    return _hypercycle_sum(b, s, corrected=True)


def count_hypercycles(b: int, s: int) -> int:
    return count_components(b, 0, s * (b - 1))


def count(query: CountQuery) -> int:
    q = query.resolved()
    if q.family == "rooted-hypertree":
        return count_rooted_hypertrees(q.b, q.s)
    if q.family == "hypertree":
        return count_hypertrees(q.b, q.s)
    if q.family == "forest":
        return count_forests(q.b, q.s, q.k)
    if q.family == "hypercycle":
        return count_hypercycles(q.b, q.s)
    return count_components(q.b, q.ell, q.n)
