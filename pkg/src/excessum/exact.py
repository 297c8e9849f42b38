"""Exact arithmetic: truncated power series, Laurent polynomials and the
two-variable (U, Cyc) polynomials used when assembling smooth series.

All coefficients are :class:`fractions.Fraction`.  Every object here is
immutable once built.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

Rational = Fraction

try:  # GMP multiplication for the packed products; plain int otherwise
    from gmpy2 import mpz as _BIG
except ImportError:  # pragma: no cover
    _BIG = int


class LogTermRequired(ValueError):
    """Raised when integrating a Laurent polynomial that carries an x^-1 term."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(value)


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


# --------------------------------------------------------------------------
# Truncated power series
# --------------------------------------------------------------------------

class TruncSeries:
    """Power series ``sum c_k x^k`` known exactly up to ``x^order``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(cs) < order + 1:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs: Tuple[Fraction, ...] = tuple(cs[: order + 1])

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls([1], order)

    @classmethod
    def x(cls, order: int) -> "TruncSeries":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, degree: int, coeff, order: int) -> "TruncSeries":
        cs = [Fraction(0)] * (order + 1)
        if degree <= order:
            cs[degree] = as_rational(coeff)
        return cls(cs, order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self._coeffs[k]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coeffs)

    def __repr__(self) -> str:
        return f"TruncSeries({[str(c) for c in self._coeffs]})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        k = min(self.order, other.order)
        return self._coeffs[: k + 1] == other._coeffs[: k + 1]

    def __hash__(self):
        return hash(self._coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self._coeffs[: order + 1], min(order, self.order))

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries([other], self.order)

    def __add__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        k = min(self.order, other.order)
        return TruncSeries([a + b for a, b in zip(self._coeffs[: k + 1], other._coeffs)], k)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self._coeffs], self.order)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            c = as_rational(other)
            return TruncSeries([c * a for a in self._coeffs], self.order)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            c = as_rational(other)
            return TruncSeries([a / c for a in self._coeffs], self.order)
        return series_mul(self, series_inv(other))

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return series_inv(self) ** (-e)
        result = TruncSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x^k (k may be negative if the low coefficients vanish)."""
        if k >= 0:
            return TruncSeries([0] * k + list(self._coeffs), self.order + k)
        if any(self._coeffs[: -k]):
            raise ValueError("cannot divide by x^%d: low coefficients are nonzero" % -k)
        return TruncSeries(self._coeffs[-k:], self.order + k)

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            return TruncSeries([0], 0)
        return TruncSeries([k * self._coeffs[k] for k in range(1, self.order + 1)], self.order - 1)

    def integral(self) -> "TruncSeries":
        return TruncSeries([0] + [c / (k + 1) for k, c in enumerate(self._coeffs)], self.order + 1)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        k = min(self.order, inner.order)
        inner = inner.truncate(k)
        acc = TruncSeries([self._coeffs[k] if k <= self.order else 0], k)
        for c in reversed(self._coeffs[:k]):
            acc = acc * inner + c
        return acc

    def to_json(self) -> list:
        return [rational_to_str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "TruncSeries":
        return cls([rational_from_str(s) for s in data])


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    k = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    nz = [(i, c) for i, c in enumerate(ac[: k + 1]) if c]
    out = [Fraction(0)] * (k + 1)
    for j, d in enumerate(bc[: k + 1]):
        if not d:
            continue
        for i, c in nz:
            if i + j > k:
                break
            out[i + j] += c * d
    return TruncSeries(out, k)


def series_inv(a: TruncSeries) -> TruncSeries:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    k = a.order
    ac = a.coeffs
    inv0 = 1 / ac[0]
    out = [inv0]
    for m in range(1, k + 1):
        s = sum((ac[i] * out[m - i] for i in range(1, m + 1) if ac[i]), Fraction(0))
        out.append(-s * inv0)
    return TruncSeries(out, k)


def series_exp(a: TruncSeries) -> TruncSeries:
    """exp(a) via e' = a' e, i.e. m e_m = sum_i i a_i e_{m-i}."""
    if a[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    k = a.order
    ac = a.coeffs
    nz = [(i, i * c) for i, c in enumerate(ac) if i and c]
    out = [Fraction(1)]
    for m in range(1, k + 1):
        s = Fraction(0)
        for i, ic in nz:
            if i > m:
                break
            s += ic * out[m - i]
        out.append(s / m)
    return TruncSeries(out, k)


def series_log(a: TruncSeries) -> TruncSeries:
    """log(a) for a series with constant term 1, as the integral of a'/a."""
    if a[0] != 1:
        raise ValueError("series_log needs constant term 1")
    k = a.order
    if k == 0:
        return TruncSeries([0], 0)
    q = series_mul(a.derivative(), series_inv(a.truncate(k - 1)))
    return q.integral()


def series_pow(a: TruncSeries, alpha) -> TruncSeries:
    """a**alpha for rational alpha and constant term 1."""
    alpha = as_rational(alpha)
    if a[0] != 1:
        raise ValueError("series_pow needs constant term 1")
    return series_exp(series_log(a) * alpha)


def binomial_series(alpha, order: int) -> TruncSeries:
    """(1 + x)**alpha with generalized binomial coefficients."""
    alpha = as_rational(alpha)
    out = [Fraction(1)]
    for i in range(1, order + 1):
        out.append(out[-1] * (alpha - i + 1) / i)
    return TruncSeries(out, order)


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------

class LaurentPoly:
    """Finite sum ``sum c_d x^d`` with d in Z."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        t: Dict[int, Fraction] = {}
        if terms:
            for d, c in terms.items():
                c = as_rational(c)
                if c:
                    t[int(d)] = c
        self._terms = t

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def from_poly_coeffs(cls, coeffs: Sequence, shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, d: int) -> Fraction:
        return self._terms.get(d, Fraction(0))

    __getitem__ = coeff

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    @property
    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        parts = [f"({c})x^{d}" for d, c in sorted(self._terms.items())]
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(other)

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        t = dict(self._terms)
        for d, c in other._terms.items():
            t[d] = t.get(d, 0) + c
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({d: -c for d, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = as_rational(other)
            return LaurentPoly({d: c * v for d, v in self._terms.items()})
        t: Dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                t[d1 + d2] = t.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentPoly":
        c = as_rational(other)
        return LaurentPoly({d: v / c for d, v in self._terms.items()})

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((d, c),) = self._terms.items()
            return LaurentPoly({d * e: c ** e})
        out = LaurentPoly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        return LaurentPoly({d + k: c for d, c in self._terms.items()})

    def __call__(self, x):
        x = as_rational(x)
        if x == 0 and any(d < 0 for d in self._terms):
            raise ZeroDivisionError("negative degree evaluated at 0")
        return sum((c * x ** d for d, c in self._terms.items()), Fraction(0))

    def to_json(self) -> Dict[str, str]:
        return {str(d): rational_to_str(c) for d, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(d): rational_from_str(c) for d, c in data.items()})


def laurent_derive(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({d - 1: d * c for d, c in f.terms.items() if d != 0})


def laurent_antiderive_zero_at_one(f: LaurentPoly) -> LaurentPoly:
    """Antiderivative F with F(1) = 0."""
    if f.coeff(-1):
        raise LogTermRequired("x^-1 term integrates to a logarithm")
    t = {d + 1: c / (d + 1) for d, c in f.terms.items()}
    F = LaurentPoly(t)
    return F - F(1)


def binomial_expand(a: int, d: int) -> LaurentPoly:
    """(1 - x)^a * x^d expanded, for a >= 0."""
    out: Dict[int, Fraction] = {}
    c = Fraction(1)
    for i in range(a + 1):
        out[d + i] = c
        c = c * (a - i) / (i + 1) * -1
    return LaurentPoly(out)


# --------------------------------------------------------------------------
# Polynomials in U and Cyc with Laurent-polynomial coefficients
# --------------------------------------------------------------------------

class UCycPoly:
    """Truncated polynomial in two marker variables U and Cyc.

    Terms above ``max_u`` in U or ``max_cyc`` in Cyc are dropped while
    multiplying, so exponentials stay polynomial-sized.
    """

    __slots__ = ("_terms", "max_u", "max_cyc")

    def __init__(self, terms: Mapping[Tuple[int, int], LaurentPoly], max_u: int, max_cyc: int):
        t = {}
        for (du, dc), p in terms.items():
            if du < 0 or dc < 0:
                raise ValueError("negative marker degree")
            if du <= max_u and dc <= max_cyc and not p.is_zero():
                t[(du, dc)] = p
        self._terms: Dict[Tuple[int, int], LaurentPoly] = t
        self.max_u = max_u
        self.max_cyc = max_cyc

    @property
    def terms(self) -> Dict[Tuple[int, int], LaurentPoly]:
        return dict(self._terms)

    def coeff(self, du: int, dc: int) -> LaurentPoly:
        return self._terms.get((du, dc), LaurentPoly())

    def __add__(self, other: "UCycPoly") -> "UCycPoly":
        t = dict(self._terms)
        for k, p in other._terms.items():
            t[k] = t[k] + p if k in t else p
        return UCycPoly(t, min(self.max_u, other.max_u), min(self.max_cyc, other.max_cyc))

    def __mul__(self, other) -> "UCycPoly":
        if not isinstance(other, UCycPoly):
            return UCycPoly({k: p * other for k, p in self._terms.items()}, self.max_u, self.max_cyc)
        mu, mc = min(self.max_u, other.max_u), min(self.max_cyc, other.max_cyc)
        t: Dict[Tuple[int, int], LaurentPoly] = {}
        for (u1, c1), p1 in self._terms.items():
            for (u2, c2), p2 in other._terms.items():
                u, c = u1 + u2, c1 + c2
                if u > mu or c > mc:
                    continue
                prod = p1 * p2
                t[(u, c)] = t[(u, c)] + prod if (u, c) in t else prod
        return UCycPoly(t, mu, mc)

    __rmul__ = __mul__


def _pack(v: Sequence[int], nb: int) -> int:
    """sum v[k] 2^(8 nb k) for signed integers v[k]."""
    pos = b"".join((c if c > 0 else 0).to_bytes(nb, "little") for c in v)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nb, "little") for c in v)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(x: int, nb: int, n: int) -> list:
    """Inverse of _pack for n slots whose values lie strictly inside +-2^(8 nb - 1)."""
    half = 1 << (8 * nb - 1)
    bias = int.from_bytes(half.to_bytes(nb, "little") * n, "little")
    data = (x + bias).to_bytes(n * nb, "little")
    return [int.from_bytes(data[k * nb:(k + 1) * nb], "little") - half for k in range(n)]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def ucyc_exp_extract(arg: UCycPoly, du: int, dc: int) -> LaurentPoly:
    """Coefficient of U^du Cyc^dc in exp(arg), truncated at (du, dc).

    Uses the U-degree recurrence m E_m = sum_i i A_i E_{m-i}, where A_i and
    E_m are the U^i parts (polynomials in Cyc with Laurent coefficients).

    Internally coefficients are scaled to integers by a common denominator D
    (the scaled E_m is m! D^m E_m) and each A_i, E_m is packed into a single
    integer: x^d Cyc^c sits in slot c W + (d - m L), L the lowest x-degree and
    W wide enough for the final x-extent.  The slot width comes from an
    L1-norm bound; Cyc truncation is a mask followed by a signed lift.
    """
    if not arg.coeff(0, 0).is_zero():
        raise ValueError("exp argument must have zero constant term")
    if any(u == 0 for (u, _c) in arg.terms):
        raise ValueError("every exp argument term must carry U")
    D = 1
    for p in arg.terms.values():
        for c in p.terms.values():
            D = _lcm(D, c.denominator)
    raw: Dict[int, Dict[int, LaurentPoly]] = {}
    L, H = 0, 0
    for (u, c), p in arg.terms.items():
        if u <= du and c <= dc:
            L, H = min(L, p.min_degree), max(H, p.max_degree)
            raw.setdefault(u, {})[c] = p
    if not raw:
        return LaurentPoly()
    weights = {(m, i): i * math.factorial(m - 1) // math.factorial(m - i) * D ** (i - 1)
               for m in range(1, du + 1) for i in range(1, m + 1)}
    # slot bound: L1 norms per Cyc row; rows above dc never reach the lower slots
    normA = {i: {c: sum(int(abs(q) * D) for q in p.terms.values()) for c, p in row.items()} for i, row in raw.items()}
    normE: List[Dict[int, int]] = [{0: 1}]
    for m in range(1, du + 1):
        acc_n: Dict[int, int] = {}
        for i in range(1, m + 1):
            for c1, n1 in normA.get(i, {}).items():
                for c2, n2 in normE[m - i].items():
                    if c1 + c2 <= dc:
                        acc_n[c1 + c2] = acc_n.get(c1 + c2, 0) + weights[(m, i)] * n1 * n2
        normE.append(acc_n)
    peak = max(max(row.values(), default=1) for row in normE)
    nb = (peak.bit_length() + 2 + 7) // 8
    bits = 8 * nb
    W = du * (H - L) + 1
    nslots = (dc + 1) * W
    top = nslots * bits
    mask = (_BIG(1) << top) - 1
    half_top = _BIG(1) << (top - 1)

    def trunc(x):
        v = x & mask
        return v - (mask + 1) if v >= half_top else v

    PA = {}
    for i, row in raw.items():
        flat = [0] * nslots
        for c, p in row.items():
            for d, q in p.terms.items():
                flat[c * W + d - L] = int(q * D)
        PA[i] = _BIG(_pack(flat, nb))
    E = [_BIG(1)]
    for m in range(1, du + 1):
        acc = _BIG(0)
        for i in range(1, m + 1):
            if i in PA:
                acc += (weights[(m, i)] * PA[i] * E[m - i]) << ((i - 1) * (-L) * bits)
        E.append(trunc(acc))
    vals = _unpack(int(E[du]), nb, nslots)[dc * W:(dc + 1) * W]
    scale = math.factorial(du) * D ** du
    base = du * L
    return LaurentPoly({base + k: Fraction(x, scale) for k, x in enumerate(vals) if x})
