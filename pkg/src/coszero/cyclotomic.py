"""Exact arithmetic in cyclotomic fields Q(zeta_q).

An element of Q(zeta_q) is stored as its residue polynomial modulo the
q-th cyclotomic polynomial Phi_q, a tuple of phi(q) Fractions in the power
basis 1, zeta, ..., zeta^(phi(q)-1).  All operations (including inversion)
are exact.  q = 1 gives plain rationals in a 1-dimensional field, so code
can treat rational and genuinely cyclotomic coefficients uniformly.

Conductors are capped (default 10**4) because dense residue arithmetic in
Q(zeta_q) costs O(phi(q)^2) per multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import mpmath

CONDUCTOR_CAP = 10 ** 4


class ConductorCapError(ValueError):
    """Requested cyclotomic conductor exceeds the configured cap."""


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi(n) needs n >= 1")
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mu(n) needs n >= 1")
    mu = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            mu = -mu
        p += 1
    if m > 1:
        mu = -mu
    return mu


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _mul_xk_minus_1(p: list[int], k: int) -> list[int]:
    """p(x) * (x^k - 1), integer coefficients."""
    out = [0] * (len(p) + k)
    for i, c in enumerate(p):
        out[i + k] += c
        out[i] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _div_xk_minus_1(p: list[int], k: int) -> list[int]:
    """p(x) / (x^k - 1), asserting exactness."""
    p = list(p)
    out = [0] * (len(p) - k)
    for i in range(len(p) - 1, k - 1, -1):
        c = p[i]
        out[i - k] = c
        p[i] = 0
        p[i - k] += c
    if any(p[:k]):
        raise ValueError("division by x^k - 1 not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low to high (degree phi(n))."""
    if n < 1:
        raise ValueError("Phi_n needs n >= 1")
    # Phi_n = prod_{d | n} (x^{n/d} - 1)^{mu(d)}
    p = [1]
    divs = divisors(n)
    for d in divs:
        if mobius(d) == 1:
            p = _mul_xk_minus_1(p, n // d)
    for d in divs:
        if mobius(d) == -1:
            p = _div_xk_minus_1(p, n // d)
    assert len(p) - 1 == euler_phi(n)
    return tuple(p)


class CyclotomicField:
    """Q(zeta_q) with zeta_q = exp(2*pi*i/q), as Q[x]/(Phi_q)."""

    def __init__(self, q: int, cap: int = CONDUCTOR_CAP):
        if q < 1:
            raise ValueError("conductor must be >= 1")
        if q > cap:
            raise ConductorCapError(f"conductor {q} exceeds cap {cap}")
        self.q = q
        self.phi_poly = cyclotomic_polynomial(q)
        self.degree = len(self.phi_poly) - 1
        # reduction rows: x^(degree + j) mod Phi_q, grown on demand
        self._red: list[tuple[Fraction, ...]] = []
        if self.degree > 0:
            row = [Fraction(-c) for c in self.phi_poly[:-1]]  # x^degree (Phi monic)
            self._red.append(tuple(row))
            self._grow_reduction(self.degree - 2)

    def _grow_reduction(self, upto_j: int) -> None:
        row = list(self._red[-1])
        while len(self._red) <= upto_j:
            top = row[-1]
            row = [Fraction(0)] + row[:-1]
            if top:
                for i in range(self.degree):
                    row[i] += top * Fraction(-self.phi_poly[i])
            self._red.append(tuple(row))

    def __repr__(self):
        return f"CyclotomicField(q={self.q})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.q == self.q

    def __hash__(self):
        return hash(("CyclotomicField", self.q))

    def element(self, coeffs: Sequence) -> "CycElt":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return CycElt(self, tuple(cs))

    def _reduce(self, cs: list[Fraction]) -> list[Fraction]:
        out = list(cs[: self.degree]) + [Fraction(0)] * max(0, self.degree - len(cs))
        if len(cs) > self.degree:
            self._grow_reduction(len(cs) - 1 - self.degree)
        for j in range(self.degree, len(cs)):
            c = cs[j]
            if c:
                row = self._red[j - self.degree]
                for i in range(self.degree):
                    out[i] += c * row[i]
        return out

    def zero(self) -> "CycElt":
        return self.element([])

    def one(self) -> "CycElt":
        return self.element([1])

    def rational(self, x) -> "CycElt":
        return self.element([Fraction(x)])

    def zeta_power(self, a: int) -> "CycElt":
        """zeta_q^a as a field element."""
        a %= self.q
        cs = [Fraction(0)] * (a + 1)
        cs[a] = Fraction(1)
        return self.element(cs)


@dataclass(frozen=True)
class CycElt:
    """Element of a cyclotomic field: residue polynomial mod Phi_q."""

    field: CyclotomicField
    coeffs: tuple

    def _check(self, other: "CycElt"):
        if self.field.q != other.field.q:
            raise ValueError(
                f"conductor mismatch: {self.field.q} vs {other.field.q}; lift first")

    def __add__(self, other):
        other = _coerce(self.field, other)
        return CycElt(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return _coerce(self.field, other) + (-self)

    def __mul__(self, other):
        other = _coerce(self.field, other)
        self._check(other)
        n = self.field.degree
        conv = [Fraction(0)] * (2 * n - 1 if n > 0 else 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        return CycElt(self.field, tuple(self.field._reduce(conv)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        other = _coerce(self.field, other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        return (isinstance(other, CycElt) and other.field.q == self.field.q
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def inverse(self) -> "CycElt":
        """Extended Euclid against Phi_q over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        a = [Fraction(c) for c in self.field.phi_poly]
        b = list(self.coeffs)
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        # invariants: s*orig_b = a (mod Phi), t*orig_b = b (mod Phi)
        s: list[Fraction] = [Fraction(0)]
        t: list[Fraction] = [Fraction(1)]
        while True:
            if len(b) == 1:
                if b[0] == 0:
                    raise ZeroDivisionError("zero divisor mod Phi_q (impossible: Phi irreducible)")
                inv = [c / b[0] for c in t]
                return self.field.element(inv)
            q, r = _fdivmod(a, b)
            a, b = b, r
            s, t = t, _fsub(s, _fmul(q, t))

    def conjugate(self) -> "CycElt":
        """Complex conjugation: zeta -> zeta^{-1}."""
        q = self.field.q
        out = self.field.zero()
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + self.field.zeta_power((-j) % q) * self.field.rational(c)
        return out

    @property
    def is_real(self) -> bool:
        return self.conjugate() == self

    def real_part(self) -> "CycElt":
        return (self + self.conjugate()) * self.field.rational(Fraction(1, 2))

    def lift(self, target: CyclotomicField) -> "CycElt":
        """Embed into Q(zeta_Q) for q | Q via zeta_q -> zeta_Q^(Q/q)."""
        if target.q % self.field.q != 0:
            raise ValueError("target conductor must be a multiple")
        k = target.q // self.field.q
        out = target.zero()
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + target.zeta_power(j * k) * target.rational(c)
        return out

    def complex_value(self, prec: int = 53) -> complex:
        with mpmath.workprec(prec):
            z = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    z += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(
                        mpmath.mpf(2 * j) / self.field.q)
            return complex(z)

    def __repr__(self):
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"CycElt(q={self.field.q}: {body})"


def _coerce(field: CyclotomicField, x) -> CycElt:
    if isinstance(x, CycElt):
        return x
    if isinstance(x, (int, Fraction)):
        return field.rational(x)
    raise TypeError(f"cannot coerce {type(x)} into Q(zeta_{field.q})")


def common_field(f1: CyclotomicField, f2: CyclotomicField,
                 cap: int = CONDUCTOR_CAP) -> CyclotomicField:
    q = f1.q * f2.q // gcd(f1.q, f2.q)
    return CyclotomicField(q, cap=cap)


# -- small Fraction-polynomial helpers (for the extended Euclid above) --

def _fdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for i in range(db + 1):
                a[k + i] -= c * b[i]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _fmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _fsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
