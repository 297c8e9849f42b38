"""Closed-form asymptotic estimates and exact sandwich bounds.

Every estimate is accumulated as a natural logarithm; ``value`` is its
exponential when that fits in a double.  Comparisons with exact counts go
through :func:`exact_log`, never through float conversion of the count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .counts import count_components, count_rooted_hypertrees
from .exact import LaurentPoly, laurent_derive
from .recurrence import compute_f, r_ell, to_comb_form
from .species import check_uniformity, laurent_in_theta_as_tau_series, phi_pow_coeff

LOG2PI = math.log(2 * math.pi)


@dataclass(frozen=True)
class AsymptoticEstimate:
    log_value: float
    error_order: str

    @property
    def value(self) -> float:
        """exp(log_value); math.inf once beyond double range."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def ratio_to(self, exact) -> float:
        """exact / estimate, evaluated in the log domain."""
        return math.exp(exact_log(exact) - self.log_value)

    def to_json(self) -> dict:
        return {"value": self.value, "log": self.log_value, "error": self.error_order}


def exact_log(q) -> float:
    """Natural log of a positive integer or Fraction of any size."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a non-positive number")
    return math.log(q.numerator) - math.log(q.denominator)


def compare_exact(est: AsymptoticEstimate, exact) -> dict:
    return {"exact": str(exact), "estimate": est.value, "logEstimate": est.log_value, "ratio": est.ratio_to(exact)}


def _log_tree_base(b: int) -> float:
    # log((b-1)^(b-1) / (b-2)!)
    return (b - 1) * math.log(b - 1) - math.lgamma(b - 1)


# --------------------------------------------------------------------------
# trees and cycles
# --------------------------------------------------------------------------

def asympt_rooted_hypertrees_printed(b: int, s: int) -> AsymptoticEstimate:
    """sqrt(b-1) s^(s(b-1)) e^(-(b-2)(s+1/(b-1))) [(b-1)^(b-1)/(b-2)!]^s, as printed.

    Short by a factor e; kept for the record.
    """
    check_uniformity(b)
    if s < 1:
        raise ValueError("s must be >= 1")
    lv = 0.5 * math.log(b - 1) + s * (b - 1) * math.log(s) - (b - 2) * (s + 1 / (b - 1)) + s * _log_tree_base(b)
    return AsymptoticEstimate(lv, "O(s^-1/6)")


def asympt_rooted_hypertrees(b: int, s: int) -> AsymptoticEstimate:
    """Rooted hypertrees with s edges; the printed closed form times e."""
    est = asympt_rooted_hypertrees_printed(b, s)
    return AsymptoticEstimate(est.log_value + 1.0, est.error_order)


def asympt_hypertrees(b: int, s: int) -> AsymptoticEstimate:
    est = asympt_rooted_hypertrees(b, s)
    return AsymptoticEstimate(est.log_value - math.log(s * (b - 1) + 1), est.error_order)


def rooted_hypertree_coeff_b3(s: int) -> float:
    """[z^(2s+1)] T for b = 3 with the two Stirling correction terms."""
    if s < 1:
        raise ValueError("s must be >= 1")
    lead = math.exp(s + 0.5 - 1.5 * math.log(s)) / (2 * math.sqrt(2 * math.pi))
    return lead * (1 - 17 / (24 * s) + 481 / (1152 * s * s))


def asympt_hypercycles(b: int, s: int) -> AsymptoticEstimate:
    """sqrt(2 pi (b-1))/4 s^(s(b-1)-1/2) e^(-s(b-2)) [(b-1)^(b-1)/(b-2)!]^s."""
    check_uniformity(b)
    if s < 1:
        raise ValueError("s must be >= 1")
    lv = 0.5 * (LOG2PI + math.log(b - 1)) - math.log(4)
    lv += (s * (b - 1) - 0.5) * math.log(s) - s * (b - 2) + s * _log_tree_base(b)
    return AsymptoticEstimate(lv, "O(1/s)")


def leading_A(ell: int, b: int) -> Fraction:
    f = compute_f(ell, b)
    return to_comb_form(f, ell, b).A[3 * ell]


def asympt_components(b: int, ell: int, s: int) -> AsymptoticEstimate:
    """Connected components of excess ell >= 1 with s edges (n = s(b-1) - ell)."""
    check_uniformity(b)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    n = s * (b - 1) - ell
    if n < 1:
        raise ValueError("s too small for this excess")
    A = leading_A(ell, b)
    a = 3 * ell + 1
    lv = math.log(3 * ell * (b - 1)) + exact_log(A)
    lv += 0.5 * a * (1 + math.log(s) - math.log(a))
    lv -= 0.5 * math.log(2 * s * n) + s * b - 2 * s + ell / (b - 1)
    lv += (s * (b - 1) - ell) * math.log(s * (b - 1)) - s * math.lgamma(b - 1)
    return AsymptoticEstimate(lv, "O(s^-1/6)")


# --------------------------------------------------------------------------
# coefficient extraction [t^d] g(theta) Phi^n
# --------------------------------------------------------------------------

def theta_phi_coeff(g: LaurentPoly, b: int, n: int, d: int, tau_shift: int = 0) -> Fraction:
    """[t^d] tau^tau_shift g(theta(t)) exp(n t^(b-1)/(b-1)!), exactly."""
    check_uniformity(b)
    if d < 0:
        return Fraction(0)
    imax = d // (b - 1)
    if imax < tau_shift:
        return Fraction(0)
    ser = laurent_in_theta_as_tau_series(g, imax - tau_shift)
    fact = Fraction(1, math.factorial(b - 2))
    acc = Fraction(0)
    for i in range(tau_shift, imax + 1):
        c = ser[i - tau_shift]
        if c:
            acc += c * fact ** i * phi_pow_coeff(b, n, d - i * (b - 1))
    return acc


def chain_coeff_exact(b: int, ell: int, m: int, s: int) -> Fraction:
    """[t^(n+ell)] tau/(1-tau)^m Phi^n with n = s(b-1) - ell."""
    n = s * (b - 1) - ell
    return theta_phi_coeff(LaurentPoly({-m: 1}), b, n, n + ell, tau_shift=1)


def chain_coeff_asympt(b: int, ell: int, m: int, s: int) -> AsymptoticEstimate:
    """e^(s + m/2 - ell/(b-1)) (s/m)^(m/2) / (2 sqrt(s pi) (b-2)!^s)."""
    check_uniformity(b)
    if m < 2:
        raise ValueError("m must be >= 2")
    lv = s + m / 2 - ell / (b - 1) + (m / 2) * math.log(s / m)
    lv -= math.log(2) + 0.5 * math.log(s * math.pi) + s * math.lgamma(b - 1)
    return AsymptoticEstimate(lv, "O(s^-1/2)")


def chain_limit_ratio(m: int) -> float:
    """Limit of exact/estimate for the chain coefficient as s grows.

    Extracting the coefficient with a Gamma integral instead of a Gaussian
    gives 2^((m-1)/2) Gamma(m/2) m^(m/2) e^(-m/2) / (m-1)!, which tends to 1
    only as m grows.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    lv = 0.5 * (m - 1) * math.log(2) + math.lgamma(m / 2) + 0.5 * m * math.log(m) - 0.5 * m - math.lgamma(m)
    return math.exp(lv)


# --------------------------------------------------------------------------
# sandwich bounds
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SandwichBounds:
    lower: Fraction
    upper: Fraction
    B: Fraction
    C: Fraction
    upper_major: Fraction
    exact: Fraction
    C_printed: Fraction

    def holds(self) -> bool:
        return self.lower <= self.exact <= self.upper and self.exact <= self.upper_major

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("lower", "upper", "B", "C", "C_printed", "upper_major", "exact")}


def r_poly(ell: int, b: int) -> LaurentPoly:
    """R_ell(x) = -(b-1)(1-x) f'(x) - ell f(x); count = (n-1)! [t^(n+ell)] R_ell(theta) Phi^n."""
    f = compute_f(ell, b)
    df = laurent_derive(f)
    return (df - df.shift(1)) * (-(b - 1)) - f * ell


def sandwich_constants(ell: int, b: int) -> tuple:
    """(B, C, C_printed) built from A_{ell,3ell}, A_{ell,3ell-1} and r_ell.

    C is the x^(-3 ell) pole of -R_ell.  The printed C carries 9 ell^2 where
    the expansion gives 9 ell^2 (b-1); the two agree only at b = 2.
    """
    form = to_comb_form(compute_f(ell, b), ell, b)
    A, A1, r = form.A[3 * ell], form.A[3 * ell - 1], r_ell(ell, b)
    B = 3 * ell * (b - 1) * A
    tail = (b - 1) * (3 * ell - 1) * (r * A - A1)
    C = (9 * ell * ell * (b - 1) + ell) * A + tail
    C_printed = (9 * ell * ell + ell) * A + tail
    return B, C, C_printed


def wright_bounds(b: int, ell: int, n: int) -> SandwichBounds:
    """Exact lower <= count <= upper for connected excess-ell components on n vertices."""
    check_uniformity(b)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if (n + ell) % (b - 1):
        raise ValueError(f"no component of excess {ell} on n={n} vertices at b={b}")
    B, C, C_printed = sandwich_constants(ell, b)
    R = r_poly(ell, b)
    # the printed constants are the two deepest poles of R_ell
    assert R.coeff(-3 * ell - 1) == B and R.coeff(-3 * ell) == -C
    d = n + ell
    w = math.factorial(n - 1)
    upper = w * theta_phi_coeff(LaurentPoly({-3 * ell - 1: B}), b, n, d)
    lower = w * theta_phi_coeff(LaurentPoly({-3 * ell - 1: B, -3 * ell: -C}), b, n, d)
    major = w * theta_phi_coeff(LaurentPoly({-3 * ell - 1: B}), b, n, d, tau_shift=1)
    exact = Fraction(count_components(b, ell, n))
    assert exact == w * theta_phi_coeff(R, b, n, d)
    return SandwichBounds(lower, upper, B, C, major, exact, C_printed)


def exact_rooted_hypertrees(b: int, s: int) -> int:
    return count_rooted_hypertrees(b, s)
