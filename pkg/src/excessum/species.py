"""Rooted hypertrees, the Lagrange kernel and the smooth series of excess -1 and 0.

Notation follows the usual smooth-series conventions:

* ``T(z) = z exp(T(z)^(b-1) / (b-1)!)`` counts rooted hypertrees;
* ``tau(t) = t^(b-1) / (b-2)!`` and ``theta(t) = 1 - tau(t)``;
* a smooth series of excess ``ell`` is ``H(t) = (f(theta) + c ln theta) / t^ell``
  with ``f`` a Laurent polynomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    LaurentPoly,
    TruncSeries,
    series_exp,
    series_mul,
    series_inv,
)


def check_uniformity(b: int) -> int:
    if not isinstance(b, int) or b < 2:
        raise ValueError(f"uniformity b must be an integer >= 2, got {b!r}")
    return b


@dataclass(frozen=True)
class SmoothGF:
    """``H(t) = (f(theta(t)) + log_coeff * ln theta(t)) / t^excess``."""

    excess: int
    f: LaurentPoly
    log_coeff: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if self.excess < -1:
            raise ValueError("excess must be >= -1")
        if self.log_coeff and self.excess != 0:
            raise ValueError("only excess 0 carries a logarithm")

    def tau_series(self, b: int, order: int) -> TruncSeries:
        """``t^excess * H(t)`` as a power series in ``tau``."""
        return laurent_in_theta_as_tau_series(self.f, order) + self.log_coeff * log_theta_tau_series(order)

    def t_series(self, b: int, order: int) -> TruncSeries:
        """H(t) as a power series in t up to t^order."""
        check_uniformity(b)
        ell = self.excess
        imax = (order + ell) // (b - 1) if order + ell >= 0 else 0
        p = self.tau_series(b, max(imax, 0))
        fact = math.factorial(b - 2)
        out = [Fraction(0)] * (order + 1)
        for i, c in enumerate(p):
            if not c:
                continue
            deg = i * (b - 1) - ell
            if deg < 0:
                raise ValueError(f"smooth series of excess {ell} has a pole at t=0")
            if deg <= order:
                out[deg] = c / fact ** i
        return TruncSeries(out, order)

    def to_json(self) -> dict:
        from .exact import rational_to_str

        return {"excess": self.excess, "f": self.f.to_json(), "logCoeff": rational_to_str(self.log_coeff)}


def laurent_in_theta_as_tau_series(f: LaurentPoly, order: int) -> TruncSeries:
    """Expand f(1 - tau) in powers of tau."""
    out = [Fraction(0)] * (order + 1)
    for d, c in f.terms.items():
        if d >= 0:
            coef = Fraction(1)
            for i in range(min(d, order) + 1):
                out[i] += c * coef
                coef = -coef * (d - i) / (i + 1)
        else:
            k = -d
            coef = Fraction(1)  # C(k+i-1, i)
            for i in range(order + 1):
                out[i] += c * coef
                coef = coef * (k + i) / (i + 1)
    return TruncSeries(out, order)


def log_theta_tau_series(order: int) -> TruncSeries:
    """ln(1 - tau) = -sum tau^i / i."""
    return TruncSeries([0] + [Fraction(-1, i) for i in range(1, order + 1)], order)


def solve_T(b: int, K: int) -> TruncSeries:
    """Rooted hypertree series T(z) to order K, by Newton iteration.

    The fixed-point residual ``T - z exp(T^(b-1)/(b-1)!)`` is checked to
    vanish through z^K before returning.
    """
    check_uniformity(b)
    if K < 1:
        raise ValueError("order K must be >= 1")
    z = TruncSeries.x(K)
    c1 = Fraction(1, math.factorial(b - 1))
    c2 = Fraction(1, math.factorial(b - 2))
    T = z
    prec = 1
    while True:
        E = series_exp((T ** (b - 1)) * c1)
        zE = series_mul(z, E)
        F = T - zE
        if prec >= K and not any(F.coeffs):
            return T
        dF = 1 - series_mul(zE, T ** (b - 2)) * c2
        T = T - series_mul(F, series_inv(dF))
        prec = 2 * prec + 1
        if prec > 4 * K + 8:
            raise RuntimeError("Newton iteration for T did not converge")


def phi_pow_coeff(b: int, n: int, m: int) -> Fraction:
    """[t^m] exp(n t^(b-1) / (b-1)!)."""
    check_uniformity(b)
    if m < 0:
        raise ValueError("degree must be non-negative")
    if m % (b - 1):
        return Fraction(0)
    s = m // (b - 1)
    return Fraction(n ** s, math.factorial(b - 1) ** s * math.factorial(s))


def _as_t_series(G, b: int, order: int) -> TruncSeries:
    if isinstance(G, SmoothGF):
        return G.t_series(b, order)
    if isinstance(G, TruncSeries):
        if G.order < order:
            raise ValueError(f"series known to order {G.order}, need {order}")
        return G.truncate(order)
    raise TypeError("G must be a SmoothGF or a TruncSeries in t")


def lif_coeff(G, b: int, n: int) -> Fraction:
    """[z^n] G(T(z)) = (1/n) [t^(n-1)] exp(n t^(b-1)/(b-1)!) G'(t)."""
    check_uniformity(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(G, SmoothGF) and (n + G.excess) % (b - 1):
        return Fraction(0)
    dG = _as_t_series(G, b, n).derivative()
    acc = Fraction(0)
    for m in range(0, n, b - 1):
        g = dG[n - 1 - m]
        if g:
            acc += phi_pow_coeff(b, n, m) * g
    return acc / n


def compose_with_T(G, b: int, K: int) -> TruncSeries:
    """G(T(z)) to order K by direct substitution (independent of lif_coeff)."""
    series = _as_t_series(G, b, K)
    return series.compose(solve_T(b, K))


def smooth_catalog(ell: int, b: int) -> SmoothGF:
    """Closed-form smooth series for excess -1 (hypertrees) and 0 (hypercycles)."""
    check_uniformity(b)
    if ell == -1:
        # H_{-1}(t) = t - (b-1) t^b / b!  =  t (b - 1 + theta) / b
        return SmoothGF(-1, LaurentPoly({0: Fraction(b - 1, b), 1: Fraction(1, b)}))
    if ell == 0:
        # -ln sqrt(theta) - (1 - theta)/2, and for b = 2 an extra -(1 - theta)^2/4
        f = LaurentPoly({0: Fraction(-1, 2), 1: Fraction(1, 2)})
        if b == 2:
            f = f - LaurentPoly({0: 1, 1: -2, 2: 1}) * Fraction(1, 4)
        return SmoothGF(0, f, Fraction(-1, 2))
    raise ValueError("smooth_catalog covers excess -1 and 0; use the recurrence for ell >= 1")


def identity_series(order: int) -> TruncSeries:
    return TruncSeries.x(order)
