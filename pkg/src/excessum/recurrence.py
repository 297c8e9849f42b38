"""Smooth series of excess ell >= 1 by the marking recurrence.

For each excess ``j`` and mark count ``k`` the table holds a Laurent
polynomial ``f_{j,k}`` with

    (z^k / k!) d^k/dz^k  H_j(T(z))  =  f_{j,k}(theta(T)) / T^j .

A single marking step ``z d/dz - k`` maps ``k! f_{j,k}`` to ``(k+1)! f_{j,k+1}``;
:func:`fjk_next` is that raw step and the table divides by ``k + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .exact import (
    LaurentPoly,
    LogTermRequired,
    UCycPoly,
    binomial_expand,
    laurent_antiderive_zero_at_one,
    laurent_derive,
    ucyc_exp_extract,
)
from .species import SmoothGF, check_uniformity, smooth_catalog


def r_ell(ell: int, b: int) -> int:
    """floor((ell + 1)/(b - 1) + 1)."""
    return (ell + 1) // (b - 1) + 1


def fjk_next(f: LaurentPoly, j: int, k: int, b: int, log_coeff: Fraction = Fraction(0)) -> LaurentPoly:
    """-(b-1) f'/x + (b-1) f' - j f/x - k f.

    ``log_coeff`` adds ``log_coeff * ln x`` to ``f`` (only its derivative
    enters, and only with j = k = 0).
    """
    if log_coeff and (j or k):
        raise LogTermRequired("a logarithmic term survives the marking step")
    df = laurent_derive(f) + LaurentPoly({-1: log_coeff})
    return (-(b - 1)) * df.shift(-1) + (b - 1) * df - j * f.shift(-1) - k * f


class MarkedLaurentTable:
    """Memoized ``f_{j,k}`` for one uniformity b.

    ``compute(ell)`` fills excess ``ell`` once all smaller excesses are known;
    asking for H_5 after H_4 reuses every earlier row.
    """

    def __init__(self, b: int):
        self.b = check_uniformity(b)
        self._f: Dict[int, LaurentPoly] = {}
        self._marked: Dict[Tuple[int, int], LaurentPoly] = {}
        self._smooth: Dict[int, SmoothGF] = {}
        for j in (-1, 0):
            self._install(smooth_catalog(j, b))

    def _install(self, H: SmoothGF) -> None:
        j, b = H.excess, self.b
        self._smooth[j] = H
        self._f[j] = H.f
        raw = fjk_next(H.f, j, 0, b, H.log_coeff)
        self._marked[(j, 1)] = raw
        for k in range(1, b):
            raw = fjk_next(raw, j, k, b)
            self._marked[(j, k + 1)] = raw
        for k in range(1, b + 1):
            self._marked[(j, k)] = self._marked[(j, k)] / math.factorial(k)

    def entry(self, j: int, k: int) -> LaurentPoly:
        """f_{j,k}; k = 0 returns the Laurent part of H_j (without its log)."""
        if j < -1:
            return LaurentPoly()
        self.compute(j)
        if k == 0:
            return self._f[j]
        return self._marked[(j, k)]

    @property
    def known(self) -> int:
        return max(self._f)

    def compute(self, ell: int) -> LaurentPoly:
        while self.known < ell:
            nxt = self.known + 1
            self._install(SmoothGF(nxt, self._assemble(nxt)))
        return self._f[ell]

    def smooth(self, ell: int) -> SmoothGF:
        self.compute(ell)
        return self._smooth[ell]

    def _assemble(self, ell: int) -> LaurentPoly:
        b = self.b
        terms: Dict[Tuple[int, int], LaurentPoly] = {}
        for k in range(1, b + 1):
            for j in range(-1, ell):
                dc = j + k
                if dc > ell + 1:
                    continue
                p = self._marked[(j, k)]
                key = (k, dc)
                terms[key] = terms[key] + p if key in terms else p
        arg = UCycPoly(terms, b, ell + 1)
        core = ucyc_exp_extract(arg, b, ell + 1)
        jc = ell - b + 1
        corr = LaurentPoly()
        if jc >= -1:
            lead = self._f[jc] * jc if jc else LaurentPoly()
            if jc == 0:
                # the log part of H_0 is multiplied by (ell - b + 1) = 0
                assert self._smooth[0].log_coeff != 0
            corr = (lead + self._marked[(jc, 1)]) / (b - 1)
        # the correction enters with a plus sign; checked on every printed table
        jhat = (corr - core) * math.factorial(b - 2)
        return laurent_antiderive_zero_at_one(jhat)


_TABLES: Dict[int, MarkedLaurentTable] = {}


def table_for(b: int) -> MarkedLaurentTable:
    tab = _TABLES.get(b)
    if tab is None:
        tab = _TABLES[b] = MarkedLaurentTable(b)
    return tab


def compute_f(ell: int, b: int, table: MarkedLaurentTable | None = None) -> LaurentPoly:
    """Laurent polynomial f_ell with H_ell(t) = f_ell(theta(t)) / t^ell."""
    if ell < 1:
        raise ValueError("compute_f handles ell >= 1; see smooth_catalog for -1 and 0")
    tab = table if table is not None else table_for(b)
    if tab.b != b:
        raise ValueError("table built for a different uniformity")
    return tab.compute(ell)


def smooth_series(ell: int, b: int) -> SmoothGF:
    """H_ell for any ell >= -1."""
    if ell <= 0:
        return smooth_catalog(ell, b)
    return table_for(b).smooth(ell)


# --------------------------------------------------------------------------
# combinatorial form
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CombForm:
    """H_ell(t) = (1-theta)^r / t^ell * sum_p A_p ((1-theta)/theta)^p."""

    ell: int
    r: int
    A: Tuple[Fraction, ...]

    def to_laurent(self) -> LaurentPoly:
        out = LaurentPoly()
        for p, a in enumerate(self.A):
            if a:
                out = out + binomial_expand(self.r + p, -p) * a
        return out

    def to_json(self) -> dict:
        from .exact import rational_to_str

        return {"ell": self.ell, "r": self.r, "A": [rational_to_str(a) for a in self.A]}


def to_comb_form(f: LaurentPoly, ell: int, b: int, r: int | None = None) -> CombForm:
    """Rewrite f(theta) in the basis (1-theta)^r ((1-theta)/theta)^p, p = 0..3 ell.

    The basis element of index p is (1-theta)^(r+p) theta^(-p), whose lowest
    theta-degree is -p with coefficient 1, so peeling from the deepest pole
    is a triangular solve.  Reconstruction is asserted.
    """
    if r is None:
        r = r_ell(ell, b)
    pmax = 3 * ell
    A = [Fraction(0)] * (pmax + 1)
    rem = f
    if not rem.is_zero():
        if rem.min_degree < -pmax:
            raise ValueError("f has a pole deeper than theta^(-3 ell)")
        if rem.max_degree > r:
            raise ValueError(f"f has degree {rem.max_degree} > r = {r}")
    for p in range(pmax, -1, -1):
        c = rem.coeff(-p)
        if c:
            A[p] = c
            rem = rem - binomial_expand(r + p, -p) * c
    if not rem.is_zero():
        raise ValueError(f"f is not in the span of the r={r} combinatorial basis (residual {rem})")
    form = CombForm(ell, r, tuple(A))
    assert form.to_laurent() == f
    return form


# --------------------------------------------------------------------------
# leading coefficients
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WrightCoeffs:
    b: int
    lam: Tuple[Fraction, ...]
    nu: Tuple[Fraction, ...]
    kappa: Tuple[Fraction, ...]
    mu: Tuple[Fraction, ...]

    def leading(self, ell: int) -> Fraction:
        """Coefficient of theta^(-3 ell) in f_ell."""
        return self.lam[ell] * (self.b - 1) ** (2 * ell) / (3 * ell)

    def subleading(self, ell: int) -> Fraction:
        """Coefficient of theta^(-3 ell + 1) in f_ell.

        Exact for b >= 3.  At b = 2 the extra quadratic term of H_0 shifts the
        true value by -lam[ell-1]/2; see :meth:`subleading_exact`.
        """
        b = self.b
        return -(self.kappa[ell] - self.nu[ell] * (b - 2)) * (b - 1) ** (2 * ell - 1) / (3 * ell - 1)


    def subleading_exact(self, ell: int) -> Fraction:
        out = self.subleading(ell)
        if self.b == 2:
            out -= self.lam[ell - 1] / 2
        return out


def wright_lambdas(ell_max: int) -> List[Fraction]:
    lam = [Fraction(1, 2)]
    for ell in range(1, ell_max + 1):
        s = sum((lam[p] * lam[ell - 1 - p] for p in range(ell)), Fraction(0))
        lam.append(lam[ell - 1] * (3 * ell - 1) / 2 + s / 2)
    return lam


def wright_coeffs(ell_max: int, b: int) -> WrightCoeffs:
    check_uniformity(b)
    if ell_max < 0:
        raise ValueError("ell_max must be >= 0")
    lam = wright_lambdas(ell_max)
    nu: List[Fraction] = [Fraction(0)]
    kappa: List[Fraction] = [Fraction(0)]
    mu: List[Fraction] = [Fraction(b - 1)]
    for ell in range(1, ell_max + 1):
        if ell == 1:
            v = Fraction(1, 6) + lam[0] / 2
        else:
            v = Fraction(0)
            for s in range(ell - 1):
                for p in range(ell - 1 - s):
                    v += lam[s] * lam[p] * lam[ell - 2 - s - p] / 6
            v += lam[ell - 1] / 2
            v += sum(((3 * p + 2) * lam[p] * lam[ell - 2 - p] for p in range(ell - 1)), Fraction(0)) / 2
            v += Fraction((3 * ell - 4) * (3 * ell - 2), 6) * lam[ell - 2]
        nu.append(v)
        k = ((3 * ell - 2) * mu[ell - 1] + (3 * b * ell - b - 2 * ell) * lam[ell - 1]) / 2
        k += sum((mu[p] * lam[ell - 1 - p] for p in range(ell)), Fraction(0))
        kappa.append(k)
        mu.append(k - v * (b - 2) + lam[ell] * (b - Fraction(2, 3)))
    return WrightCoeffs(b, tuple(lam), tuple(nu), tuple(kappa), tuple(mu))
