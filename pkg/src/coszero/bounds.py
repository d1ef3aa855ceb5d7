"""Evaluators for the explicit numeric bounds: the iterated-log zero bound,
the MPS L1 lower bound, and the correlation support bound.

All logarithms are base 2.  Bound values that get asserted against
measurements are evaluated in interval arithmetic and rounded in the
direction that can only make the assertion harder (a lower bound is
rounded down), so rounding never manufactures a pass.  f(0) arguments may
be astronomically large; they can be supplied directly (int / Fraction /
mpf, where mpf exponents handle towers like 2^(2^64)) or via ``log2_f0``
for one level higher.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Union

import mpmath

from . import enclosure
from .enclosure import iv, iv_prec
from .polycore import CoefficientSet, CosinePolynomial, ExponentialPolynomial

Number = Union[int, Fraction, mpmath.mpf, float]


class IteratedLogDomainError(ValueError):
    """log2 applied to a non-positive intermediate value."""


def _log2_exactish(x):
    """One exact-when-possible base-2 log: integer powers of two map to
    exact integers, everything else to mpf at the working precision."""
    if isinstance(x, int):
        if x <= 0:
            raise IteratedLogDomainError(f"log2 of {x}")
        if x & (x - 1) == 0:
            return x.bit_length() - 1
        return mpmath.log(mpmath.mpf(x), 2)
    if isinstance(x, Fraction):
        if x <= 0:
            raise IteratedLogDomainError(f"log2 of {x}")
        if x.denominator == 1:
            return _log2_exactish(x.numerator)
        return mpmath.log(mpmath.mpf(x.numerator) / x.denominator, 2)
    xm = mpmath.mpf(x)
    if xm <= 0:
        raise IteratedLogDomainError(f"log2 of {mpmath.nstr(xm, 8)}")
    man, exp = mpmath.frexp(xm)
    if man == mpmath.mpf(0.5):
        return int(exp) - 1
    return mpmath.log(xm, 2)


def iterated_log(r: int, x: Number):
    """log_(r): r-fold base-2 logarithm.  Exact on representable towers
    (iterated_log(r, 2**x) == iterated_log(r-1, x)); raises on domain
    underflow at any stage."""
    if r < 0:
        raise ValueError("r >= 0 required")
    v = x
    for _ in range(r):
        v = _log2_exactish(v)
    return v


@dataclass(frozen=True)
class Theorem2Bound:
    """floor(...)^(1/2) zero bound: value rounded down, with the exact floor
    argument for integer comparisons (zeros >= value iff zeros^2 >= floor_arg)."""

    value: float
    floor_arg: int
    below_threshold: bool
    note: str = ""

    def satisfied_by(self, zero_count: int) -> bool:
        if self.below_threshold or self.floor_arg <= 0:
            return True
        return zero_count * zero_count >= self.floor_arg


def theorem2_bound(R: CoefficientSet, f0: Optional[Number] = None,
                   log2_f0: Optional[Number] = None,
                   prec: Optional[int] = None) -> Theorem2Bound:
    """Zero bound floor[(log_(3)|f(0)| - 8 log2(2 M(R) D(R)) sqrt(log_(3)|f(0)|))
    / (2^17 log2(|R|+1) log_(5)^2 |f(0)|)]^(1/2).

    Below threshold (|f(0)| < 16, log_(5) undefined or <= 0, or negative
    numerator) the bound degrades to 0 with a note.  The "8 log 2M(R)D(R)"
    factor is read as 8 * log2(2 * M(R) * D(R)); see the README for the
    alternative parsing.
    """
    if (f0 is None) == (log2_f0 is None):
        raise ValueError("supply exactly one of f0, log2_f0")
    prec = prec or enclosure.DEFAULT_PRECISION
    M, D, card = R.max_abs, R.common_denominator, R.cardinality
    with mpmath.workprec(prec):
        try:
            if f0 is not None:
                f0m = abs(mpmath.mpf(f0)) if not isinstance(f0, (int, Fraction)) else f0
                if isinstance(f0m, (int, Fraction)) and f0m < 16:
                    return Theorem2Bound(0.0, 0, True, "below threshold: |f(0)| < 16")
                if not isinstance(f0m, (int, Fraction)) and f0m < 16:
                    return Theorem2Bound(0.0, 0, True, "below threshold: |f(0)| < 16")
                l1 = _log2_exactish(f0m)
            else:
                l1 = log2_f0
                # |f(0)| >= 16 iff log2 >= 4
                if mpmath.mpf(l1) < 4:
                    return Theorem2Bound(0.0, 0, True, "below threshold: |f(0)| < 16")
            l3 = iterated_log(2, l1)
            l5 = iterated_log(2, l3)
        except IteratedLogDomainError:
            return Theorem2Bound(0.0, 0, True,
                                 "below threshold: iterated log undefined")
    with iv_prec(prec):
        l3_iv = iv.mpf(l3)
        l5_iv = iv.mpf(l5)
        if not (l5_iv > 0):
            return Theorem2Bound(0.0, 0, True, "below threshold: log_(5) <= 0")
        coef = 8 * enclosure.log2_iv(enclosure.from_fraction(2 * Fraction(M) * D))
        num = l3_iv - coef * iv.sqrt(l3_iv)
        if not (num > 0):
            return Theorem2Bound(0.0, 0, True, "below threshold: numerator <= 0")
        den = (2 ** 17) * enclosure.log2_iv(iv.mpf(card + 1)) * l5_iv * l5_iv
        ratio = num / den
        k = int(mpmath.floor(mpmath.mpf(ratio.a)))
        if k <= 0:
            return Theorem2Bound(0.0, max(k, 0), False, "bound rounds to zero")
        return Theorem2Bound(math.sqrt(k) * (1 - 1e-15), k, False)


@dataclass(frozen=True)
class MpsBound:
    """(1/60) sum_r |C_r| / r over the increasingly-sorted support."""

    value_exact: Optional[Fraction]
    value_lower: float
    n_frequencies: int
    mode: str                       # "exact" | "float-lower"


def mps_bound(f: Union[ExponentialPolynomial, CosinePolynomial],
              exact_limit: int = 4000) -> MpsBound:
    """MPS lower-bound functional: frequencies sorted increasingly over the
    full support (Z), bound = (1/60) sum |C_r| / r with r the 1-based rank.

    Exact rational up to ``exact_limit`` support points (the exact value's
    denominator grows like lcm(1..N)); beyond that a directed-down float.
    Since some h with |h|_inf <= 1 achieves int fh >= this bound,
    int |f| >= 2 pi * (value / (2 pi)) ... i.e. int f h <= |f|_L1; the
    verifier asserts the exact L1 enclosure's lower end >= the bound.
    """
    if isinstance(f, CosinePolynomial):
        fe = f.to_exponential()
    else:
        fe = f
    if fe.is_zero():
        raise ValueError("MPS bound of the zero polynomial")
    support = fe.support()
    mags: list[Fraction] = []
    for r in support:
        c = fe.coefficient(r)
        if isinstance(c, Fraction):
            mags.append(abs(c))
        else:
            if not c.is_rational:
                raise ValueError("MPS bound needs rational coefficient moduli")
            mags.append(abs(c.rational_value()))
    n = len(mags)
    if n <= exact_limit:
        total = Fraction(0)
        for i, m in enumerate(mags, start=1):
            total += Fraction(m, i)
        exact = total / 60
        return MpsBound(exact, float(exact), n, "exact")
    with iv_prec(96):
        tot = iv.mpf(0)
        for i, m in enumerate(mags, start=1):
            tot = tot + enclosure.from_fraction(Fraction(m, i))
        val = tot / 60
        return MpsBound(None, enclosure.lower(val), n, "float-lower")


@dataclass(frozen=True)
class Lemma42Bound:
    """Upper bound for log log |support(Qf)| and the companion degree bound."""

    support_loglog_bound: float      # rounded down (an assertion target)
    support_loglog_upper: float
    degree_bound: float

    @property
    def value(self) -> float:
        return self.support_loglog_bound


def lemma42_support_bound(k: int, R: CoefficientSet, epsilon: Fraction,
                          prec: Optional[int] = None) -> Lemma42Bound:
    """2^14 k^2 log2^2(log2(2k+3)) log2|R| + 8k log2 M(R) + log2(1/eps),
    paired with deg(Q) <= 2^12 (k log2 log2 (2k+3))^2.

    Requires k >= 1, 0 < eps <= 1, |R| >= 2 (the correlation setting always
    has 0 in R plus a nonzero value).
    """
    epsilon = Fraction(epsilon)
    if k < 1:
        raise ValueError("k >= 1 required")
    if not (0 < epsilon <= 1):
        raise ValueError("epsilon in (0, 1] required")
    if R.cardinality < 2:
        raise ValueError("|R| >= 2 required")
    M = R.max_abs
    if M <= 0:
        raise ValueError("M(R) > 0 required")
    with iv_prec(prec or enclosure.DEFAULT_PRECISION):
        ll = enclosure.log2_iv(enclosure.log2_iv(iv.mpf(2 * k + 3)))
        term1 = (2 ** 14) * (k * k) * ll * ll * enclosure.log2_iv(
            iv.mpf(R.cardinality))
        term2 = 8 * k * enclosure.log2_iv(enclosure.from_fraction(M))
        term3 = enclosure.log2_iv(enclosure.from_fraction(1 / epsilon))
        total = term1 + term2 + term3
        deg = (2 ** 12) * (k * ll) * (k * ll)
        return Lemma42Bound(
            support_loglog_bound=enclosure.lower(total),
            support_loglog_upper=enclosure.upper(total),
            degree_bound=enclosure.upper(deg),
        )


@dataclass
class BoundReport:
    """Uniform record pairing a bound value with its measured counterpart."""

    bound_name: str
    inputs: dict
    bound_value: float
    measured_value: Optional[float] = None
    satisfied: Optional[bool] = None
    tolerance: float = 0.0
    notes: str = ""

    def check(self, measured: float) -> "BoundReport":
        self.measured_value = measured
        self.satisfied = measured >= self.bound_value - self.tolerance
        return self

    def to_json_dict(self) -> dict:
        return {
            "schema": "coszero/1",
            "bound": self.bound_name,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "bound_value": self.bound_value,
            "measured_value": self.measured_value,
            "satisfied": self.satisfied,
            "tolerance": self.tolerance,
            "notes": self.notes,
        }
