"""Core objects: cosine polynomials, exponential polynomials, grid evaluation.

Conventions
-----------
* A cosine polynomial f(theta) = sum_{r=0}^n C_r cos(r*theta) keeps exact
  Fraction coefficients, trailing zeros stripped.
* Its exponential embedding uses the 1/(2pi)-normalized Fourier
  coefficients: fhat(0) = C_0 and fhat(r) = fhat(-r) = C_|r| / 2, so that
  Parseval reads literally sum fhat(r) conj(ghat(r)).
* The degree of an exponential polynomial is the *width* of its support,
  max(support) - min(support), matching the usage "deg(S_k) = k(k+1)/2"
  for S_k supported on [0, k(k+1)/2].
* Grid values are floating point; exactness is never claimed for them and
  every grid evaluation carries an a-priori error bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

import mpmath
import numpy as np
from gmpy2 import mpz

from . import qpoly
from .cyclotomic import CycElt, CyclotomicField, common_field

Coefficient = Union[Fraction, CycElt]

_RATIONAL_FIELD = CyclotomicField(1)


def parse_rational(s: str) -> Fraction:
    """Parse 'p/q' or 'p' into an exact Fraction."""
    return Fraction(s.strip())


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else f"{x.numerator}"


@dataclass(frozen=True)
class CoefficientSet:
    """A finite set R of rationals with its two key statistics:
    M(R) = max |x| and D(R) = least m >= 1 with m*x integral for all x."""

    elements: frozenset

    def __init__(self, elements: Iterable):
        elems = frozenset(Fraction(x) for x in elements)
        if not elems:
            raise ValueError("coefficient set must be non-empty")
        object.__setattr__(self, "elements", elems)

    @property
    def max_abs(self) -> Fraction:
        return max(abs(x) for x in self.elements)

    @property
    def common_denominator(self) -> int:
        d = 1
        for x in self.elements:
            d = lcm(d, x.denominator)
        return d

    @property
    def cardinality(self) -> int:
        return len(self.elements)


def coefficient_stats(R: CoefficientSet) -> tuple[Fraction, int, int]:
    """(M(R), D(R), |R|), all exact."""
    return R.max_abs, R.common_denominator, R.cardinality


class CosinePolynomial:
    """f(theta) = sum_{r=0}^n C_r cos(r*theta) with exact rational C_r."""

    __slots__ = ("coeffs", "_floats")

    def __init__(self, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs: tuple = tuple(cs)
        self._floats: Optional[np.ndarray] = None

    @classmethod
    def from_frequency_set(cls, freqs: Iterable[int]) -> "CosinePolynomial":
        """f_A = sum_{a in A} cos(a*theta) for a set A of non-negative ints."""
        A = sorted(set(int(a) for a in freqs))
        if not A:
            return cls([0])
        if A[0] < 0:
            raise ValueError("frequency set must be non-negative")
        cs = [Fraction(0)] * (A[-1] + 1)
        for a in A:
            cs[a] = Fraction(1)
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def value_at_zero(self) -> Fraction:
        """f(0) = sum C_r, exact."""
        return sum(self.coeffs, Fraction(0))

    def value_at_pi(self) -> Fraction:
        return sum((c if r % 2 == 0 else -c) for r, c in enumerate(self.coeffs))

    def l1_coefficients(self) -> Fraction:
        """sum |C_r|; an exact upper bound for |f|_inf."""
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    def coefficient_set(self, include_zero: bool = False) -> CoefficientSet:
        vals = set(self.coeffs)
        if include_zero:
            vals.add(Fraction(0))
        return CoefficientSet(vals)

    def float_coeffs(self) -> np.ndarray:
        if self._floats is None:
            self._floats = np.array([float(c) for c in self.coeffs], dtype=np.float64)
        return self._floats

    def __eq__(self, other):
        return isinstance(other, CosinePolynomial) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "CosinePolynomial") -> "CosinePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return CosinePolynomial(out)

    def __neg__(self) -> "CosinePolynomial":
        return CosinePolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "CosinePolynomial") -> "CosinePolynomial":
        return self + (-other)

    def scale(self, a) -> "CosinePolynomial":
        a = Fraction(a)
        return CosinePolynomial([a * c for c in self.coeffs])

    def __repr__(self):
        if self.degree <= 6:
            body = ", ".join(format_rational(c) for c in self.coeffs)
        else:
            body = f"deg={self.degree}"
        return f"CosinePolynomial([{body}])"

    def to_exponential(self) -> "ExponentialPolynomial":
        half = Fraction(1, 2)
        coeffs: dict[int, Fraction] = {}
        if self.coeffs[0] != 0:
            coeffs[0] = self.coeffs[0]
        for r, c in enumerate(self.coeffs[1:], start=1):
            if c != 0:
                coeffs[r] = c * half
                coeffs[-r] = c * half
        return ExponentialPolynomial(coeffs)

    def to_json_dict(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "CosinePolynomial":
        if "coeffs" in d:
            return cls([parse_rational(s) for s in d["coeffs"]])
        if "set" in d:
            return cls.from_frequency_set(d["set"])
        raise ValueError("polynomial JSON needs 'coeffs' or 'set'")

    @classmethod
    def from_json_file(cls, path: str) -> "CosinePolynomial":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


@dataclass(frozen=True)
class AlgebraicImage:
    """g with g(cos theta) = f(theta): integer polynomial over a common
    denominator, i.e. the true coefficients are int_coeffs[i] / denominator."""

    int_coeffs: tuple
    denominator: int

    @property
    def degree(self) -> int:
        return qpoly.degree(list(self.int_coeffs))

    def fractions(self) -> list[Fraction]:
        return [Fraction(int(c), self.denominator) for c in self.int_coeffs]

    def int_poly(self) -> list:
        """Denominator-cleared integer polynomial (same roots)."""
        return qpoly.normalize(list(self.int_coeffs))

    def eval_fraction(self, x: Fraction) -> Fraction:
        return qpoly.eval_fraction(self.int_poly(), x) / self.denominator


def to_algebraic(f: CosinePolynomial) -> AlgebraicImage:
    """Chebyshev substitution: g(x) = sum C_r T_r(x), so g(cos t) = f(t).

    Runs over scaled integers (T_r recursion) to keep the bignum work in
    gmpy2; the common denominator of the C_r is carried alongside.
    """
    n = f.degree
    den = 1
    for c in f.coeffs:
        den = lcm(den, c.denominator)
    cs = [mpz(c.numerator * (den // c.denominator)) for c in f.coeffs]
    g = [mpz(0)] * (n + 1)
    g[0] += cs[0]
    if n >= 1:
        tprev = [mpz(1)]
        tcur = [mpz(0), mpz(1)]
        if cs[1]:
            g[1] += cs[1]
        for r in range(2, n + 1):
            tnext = [mpz(0)] * (r + 1)
            for i, c in enumerate(tcur):
                tnext[i + 1] = 2 * c
            for i, c in enumerate(tprev):
                tnext[i] -= c
            if cs[r]:
                cr = cs[r]
                for i, c in enumerate(tnext):
                    if c:
                        g[i] += cr * c
            tprev, tcur = tcur, tnext
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    return AlgebraicImage(tuple(g), den)


class ExponentialPolynomial:
    """Finitely supported sum_{r in Z} fhat(r) e^{i r theta}.

    Coefficients are Fractions, or CycElt sharing one conductor q (q = 1 is
    the plain rational case).  Immutable once built.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Mapping[int, Coefficient],
                 field: Optional[CyclotomicField] = None):
        fld = field
        clean: dict[int, Coefficient] = {}
        for r, c in coeffs.items():
            if isinstance(c, CycElt):
                if fld is None:
                    fld = c.field
                elif fld.q != c.field.q:
                    raise ValueError("mixed conductors; lift explicitly")
                if not c.is_zero():
                    clean[int(r)] = c
            else:
                c = Fraction(c)
                if c != 0:
                    clean[int(r)] = c
        if fld is None:
            fld = _RATIONAL_FIELD
        # normalize: rational-valued CycElt become plain Fractions when q == 1
        if fld.q == 1:
            clean = {r: (c.rational_value() if isinstance(c, CycElt) else c)
                     for r, c in clean.items()}
        self.coeffs = dict(clean)
        self.field = fld

    @classmethod
    def zero(cls) -> "ExponentialPolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "ExponentialPolynomial":
        return cls({0: Fraction(1)})

    @classmethod
    def from_cosine(cls, f: CosinePolynomial) -> "ExponentialPolynomial":
        return f.to_exponential()

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Support width max - min; degree of the zero polynomial is 0."""
        if not self.coeffs:
            return 0
        s = self.support()
        return s[-1] - s[0]

    def coefficient(self, r: int) -> Coefficient:
        c = self.coeffs.get(int(r))
        if c is None:
            return self.field.zero() if self.field.q != 1 else Fraction(0)
        return c

    def _lift_to(self, field: CyclotomicField) -> "ExponentialPolynomial":
        if field.q == self.field.q:
            return self
        out = {}
        for r, c in self.coeffs.items():
            if isinstance(c, CycElt):
                out[r] = c.lift(field)
            else:
                out[r] = field.rational(c)
        return ExponentialPolynomial(out, field=field)

    def __add__(self, other: "ExponentialPolynomial") -> "ExponentialPolynomial":
        fld = common_field(self.field, other.field)
        a, b = self._lift_to(fld), other._lift_to(fld)
        out = dict(a.coeffs)
        for r, c in b.coeffs.items():
            if r in out:
                s = out[r] + c
                if (isinstance(s, CycElt) and s.is_zero()) or s == 0:
                    del out[r]
                else:
                    out[r] = s
            else:
                out[r] = c
        return ExponentialPolynomial(out, field=fld)

    def __neg__(self) -> "ExponentialPolynomial":
        return ExponentialPolynomial({r: -c for r, c in self.coeffs.items()},
                                     field=self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "ExponentialPolynomial") -> "ExponentialPolynomial":
        fld = common_field(self.field, other.field)
        a, b = self._lift_to(fld), other._lift_to(fld)
        out: dict[int, Coefficient] = {}
        for r, c in a.coeffs.items():
            for s, d in b.coeffs.items():
                k = r + s
                v = c * d
                if k in out:
                    out[k] = out[k] + v
                else:
                    out[k] = v
        return ExponentialPolynomial(out, field=fld)

    def scale(self, a) -> "ExponentialPolynomial":
        if isinstance(a, CycElt):
            return self * ExponentialPolynomial({0: a})
        a = Fraction(a)
        return ExponentialPolynomial({r: c * a for r, c in self.coeffs.items()},
                                     field=self.field)

    def shift(self, k: int) -> "ExponentialPolynomial":
        """Multiply by e^{i k theta}."""
        return ExponentialPolynomial({r + k: c for r, c in self.coeffs.items()},
                                     field=self.field)

    def __eq__(self, other):
        return (isinstance(other, ExponentialPolynomial)
                and self._key() == other._key())

    def _key(self):
        items = []
        for r in self.support():
            c = self.coeffs[r]
            if isinstance(c, CycElt):
                if c.is_rational:
                    items.append((r, c.rational_value()))
                else:
                    items.append((r, (c.field.q, c.coeffs)))
            else:
                items.append((r, c))
        return tuple(items)

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if len(self.coeffs) <= 6:
            body = ", ".join(f"{r}: {c}" for r, c in sorted(self.coeffs.items()))
        else:
            body = f"{len(self.coeffs)} terms on [{min(self.coeffs)}, {max(self.coeffs)}]"
        return f"ExponentialPolynomial({{{body}}})"

    def is_real_valued(self) -> bool:
        """Check fhat(-r) = conj(fhat(r)) for all r."""
        for r, c in self.coeffs.items():
            d = self.coeffs.get(-r)
            cc = c.conjugate() if isinstance(c, CycElt) else c
            if d is None or d != cc:
                return False
        return True

    def value_at_zero(self) -> Coefficient:
        """sum_r fhat(r) = f(0), exact."""
        tot = self.field.zero() if self.field.q != 1 else Fraction(0)
        for c in self.coeffs.values():
            tot = tot + c
        return tot

    def mean_value(self) -> Coefficient:
        """(1/2pi) int_0^{2pi} f = fhat(0)."""
        return self.coefficient(0)

    def to_cosine(self) -> CosinePolynomial:
        """Inverse embedding; requires even, real, rational coefficients."""
        if not self.coeffs:
            return CosinePolynomial([0])
        out = [Fraction(0)] * (max(abs(r) for r in self.coeffs) + 1)
        for r, c in self.coeffs.items():
            if isinstance(c, CycElt):
                c = c.rational_value()
            d = self.coefficient(-r)
            if isinstance(d, CycElt):
                d = d.rational_value()
            if d != c:
                raise ValueError("not an even exponential polynomial")
            if r == 0:
                out[0] = c
            elif r > 0:
                out[r] = 2 * c
        return CosinePolynomial(out)

    def complex_coefficient_array(self) -> tuple[np.ndarray, int]:
        """(dense complex array, offset): entry j is fhat(j + offset)."""
        s = self.support()
        if not s:
            return np.zeros(1, dtype=np.complex128), 0
        lo, hi = s[0], s[-1]
        arr = np.zeros(hi - lo + 1, dtype=np.complex128)
        for r, c in self.coeffs.items():
            arr[r - lo] = complex(c.complex_value(prec=64)) if isinstance(c, CycElt) \
                else float(c.numerator) / float(c.denominator)
        return arr, lo

    def evaluate_many(self, thetas: np.ndarray) -> np.ndarray:
        """Floating evaluation at arbitrary angles (verification use only)."""
        arr, lo = self.complex_coefficient_array()
        out = np.zeros_like(thetas, dtype=np.complex128)
        for j, c in enumerate(arr):
            if c != 0:
                out += c * np.exp(1j * (lo + j) * thetas)
        return out


def multiply(f: ExponentialPolynomial, g: ExponentialPolynomial) -> ExponentialPolynomial:
    """Exact convolution of Fourier coefficients: (fg)^(r) = sum fhat(s) ghat(r-s)."""
    return f * g


@dataclass(frozen=True)
class GridEvaluation:
    """Values of f at theta_j = 2 pi j / m, with an a-priori error bound."""

    m: int
    values: np.ndarray
    precision: int
    error_bound: float

    def theta(self, j: int) -> float:
        return 2.0 * np.pi * j / self.m


# FFT forward-error cushion: |computed - true| <= _FFT_C * log2(m) * eps * sum|C_r|.
# Generous versus textbook bounds (~5 log2 m eps for radix-2 with exact twiddles);
# validated against exact closed forms in the test suite.
_FFT_C = 16.0


def eval_grid(f: CosinePolynomial, m: int, precision: int = 53) -> GridEvaluation:
    """Evaluate f at the m-point uniform grid.

    precision <= 53 uses the numpy FFT: coefficients are folded mod m
    (e^{i r theta_j} is m-periodic in r, an exact identity on the grid) so
    any degree is handled.  Higher precision uses a per-point mpmath
    Clenshaw recurrence; cost O(m * deg), intended for small instances.
    """
    if m < 1:
        raise ValueError("grid size m must be >= 1")
    sum_abs = float(f.l1_coefficients())
    if precision <= 53:
        cs = f.float_coeffs()
        if len(cs) > m:
            cs = np.bincount(np.arange(len(cs)) % m, weights=cs, minlength=m)
        vals = np.fft.fft(cs, n=m).real.copy()
        err = _FFT_C * max(np.log2(max(m, 2)), 1.0) * 2.0 ** -53 * sum_abs
        return GridEvaluation(m=m, values=vals, precision=53, error_bound=err)
    with mpmath.workprec(precision + 10):
        two_pi = 2 * mpmath.pi
        vals = np.empty(m, dtype=np.float64)
        # exact rational coefficients -> mpf once
        cs_mp = [mpmath.mpf(c.numerator) / c.denominator for c in f.coeffs]
        for j in range(m):
            theta = two_pi * j / m
            x2 = 2 * mpmath.cos(theta)
            b1 = mpmath.mpf(0)
            b2 = mpmath.mpf(0)
            for c in reversed(cs_mp[1:]):
                b1, b2 = c + x2 * b1 - b2, b1
            vals[j] = float(cs_mp[0] + (x2 / 2) * b1 - b2)
    err = 2.0 ** (-precision / 2.0) * sum_abs if sum_abs else 2.0 ** (-precision / 2.0)
    return GridEvaluation(m=m, values=vals, precision=precision, error_bound=err)


def clenshaw_many(coeffs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Clenshaw evaluation of sum C_r cos(r theta) at many angles (float64)."""
    x2 = 2.0 * np.cos(np.asarray(thetas, dtype=np.float64))
    b1 = np.zeros_like(x2)
    b2 = np.zeros_like(x2)
    for c in coeffs[:0:-1]:
        b1, b2 = c + x2 * b1 - b2, b1
    return coeffs[0] + (x2 / 2.0) * b1 - b2


def eval_points_certified(f: CosinePolynomial, thetas: np.ndarray
                          ) -> tuple[np.ndarray, float]:
    """Extended-precision pointwise values with a rigorous error bound.

    Uses float128 (x86 80-bit) cosines and pairwise summation; the returned
    bound is (log2(n) + 4) * eps128 * sum|C_r| plus the angle-representation
    term, conservative for certifying signs of grid values.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    cs = f.float_coeffs().astype(np.longdouble)
    n = len(cs)
    r = np.arange(n, dtype=np.longdouble)
    vals = np.empty(len(thetas), dtype=np.longdouble)
    for i, t in enumerate(thetas):
        vals[i] = np.sum(cs * np.cos(r * np.longdouble(t)))
    eps = float(np.finfo(np.longdouble).eps)
    sum_abs = float(f.l1_coefficients())
    err = (np.log2(max(n, 2)) + 4.0) * eps * sum_abs
    return vals.astype(np.float64), err
