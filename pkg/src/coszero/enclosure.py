"""Rigorous interval helpers on top of mpmath's iv context.

mpmath.iv provides outward-rounded interval arithmetic for +,-,*,/, sqrt,
exp, log, sin, cos and pi.  This module adds exact construction from
rationals, base-2 logarithms, an acos enclosure (iv has none), and a
context manager for the working precision.  The default precision comes
from the COSZERO_PRECISION environment variable (>= 128 bits recommended;
bound formulas are evaluated here with directed rounding so that a lower
bound asserted against a measurement is never inflated by rounding).
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv

DEFAULT_PRECISION = max(int(os.environ.get("COSZERO_PRECISION", "128")), 64)

# widening applied around point evaluations of mpmath transcendentals whose
# interval version is missing (acos): mpmath's mpf functions are accurate to
# ~1 ulp; 8 ulps of outward slack is a comfortable cushion.
_ULP_SLACK = 8


@contextmanager
def iv_prec(bits: int = DEFAULT_PRECISION):
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def from_fraction(x: Fraction):
    """Exact rational -> interval (division rounds outward)."""
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def from_bracket(lo: Fraction, hi: Fraction):
    a = from_fraction(lo)
    b = from_fraction(hi)
    return iv.mpf([a.a, b.b])


def to_float_interval(x) -> tuple[float, float]:
    return float(mpmath.mpf(x.a)), float(mpmath.mpf(x.b))


def lower(x) -> float:
    return float(mpmath.mpf(x.a))


def upper(x) -> float:
    return float(mpmath.mpf(x.b))


def width(x) -> float:
    return float(mpmath.mpf(x.delta))


def abs_iv(x):
    """Interval |x|."""
    if x.a >= 0:
        return x
    if x.b <= 0:
        return -x
    hi = max(-mpmath.mpf(x.a), mpmath.mpf(x.b))
    return iv.mpf([0, hi])


def log2_iv(x):
    """Base-2 logarithm of a positive interval."""
    if x.a <= 0:
        raise ValueError("log2 of interval touching (-inf, 0]")
    return iv.log(x) / iv.log(iv.mpf(2))


def acos_iv(x):
    """Enclosure of acos over an interval within [-1, 1].

    acos is monotone decreasing; endpoint images are widened by a few ulps
    to absorb mpmath's point rounding.
    """
    lo_x = mpmath.mpf(x.a)
    hi_x = mpmath.mpf(x.b)
    if lo_x < -1 or hi_x > 1:
        raise ValueError("acos argument outside [-1, 1]")
    with mpmath.workprec(iv.prec + 8):
        lo_y = mpmath.acos(hi_x)
        hi_y = mpmath.acos(lo_x)
        slack = mpmath.ldexp(1, -iv.prec + _ULP_SLACK) * mpmath.pi
        lo_y = max(mpmath.mpf(0), lo_y - slack)
        hi_y = hi_y + slack
    return iv.mpf([lo_y, hi_y])


def sqrt_iv_clipped(x):
    """sqrt of an interval, clipping tiny negative lower ends to 0."""
    if x.b < 0:
        raise ValueError("sqrt of a negative interval")
    if x.a < 0:
        x = iv.mpf([0, x.b])
    return iv.sqrt(x)
