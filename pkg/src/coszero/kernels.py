"""The three special polynomials of the toolkit and their certified properties.

* S_k(theta) = prod_{r=1}^k (1 - e^{i r theta}): integer coefficients,
  degree k(k+1)/2, sup norm at most 2^k.  Multiplying an exponential
  polynomial by S_k kills Fourier segments that are periodic with period
  at most k ("killing" property), and two multiplications are essentially
  one (idempotence on restricted-coefficient inputs).
* D_n(theta) = sum_{r=0}^n cos(r theta): every interval integral satisfies
  |int_J D_n| <= 10, checked here by closed-form enclosures.
* The averaging polynomial F_P = prod_{t=1}^P (1/t) sum_{r<t} cos(r theta):
  degree at most P^2 and |F_P|_inf <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import enclosure
from .enclosure import iv, iv_prec
from .polycore import CosinePolynomial, ExponentialPolynomial

Angle = Union[Fraction, int]


def sk(k: int) -> ExponentialPolynomial:
    """S_k = prod_{r=1}^k (1 - e^{i r theta}), exact integer coefficients."""
    if k < 1:
        raise ValueError("S_k needs k >= 1")
    out = ExponentialPolynomial.one()
    for r in range(1, k + 1):
        out = out * ExponentialPolynomial({0: 1, r: -1})
    assert out.degree == k * (k + 1) // 2
    return out


def sk_coefficients(k: int) -> list[int]:
    """Dense integer coefficient vector of prod (1 - z^r), low to high."""
    s = sk(k)
    n = s.degree
    out = [0] * (n + 1)
    for r, c in s.coeffs.items():
        out[r] = int(c)
    return out


def sk_sup_norm_bound(k: int) -> int:
    """|S_k|_inf <= prod |1 - e^{irt}| <= 2^k."""
    return 2 ** k


def dirichlet(n: int) -> CosinePolynomial:
    """D_n = sum_{r=0}^n cos(r theta)."""
    if n < 0:
        raise ValueError("D_n needs n >= 0")
    return CosinePolynomial([Fraction(1)] * (n + 1))


@dataclass(frozen=True)
class IntegralValue:
    """Enclosure of an integral, plus its exact pi-multiple when the sine
    terms vanish symbolically (endpoints at integer multiples of pi)."""

    interval: object
    pi_multiple: Optional[Fraction] = None

    @property
    def lower(self) -> float:
        return enclosure.lower(self.interval)

    @property
    def upper(self) -> float:
        return enclosure.upper(self.interval)

    def abs_upper(self) -> float:
        return enclosure.upper(enclosure.abs_iv(self.interval))


def integral_over_interval(f: CosinePolynomial, a: Angle, b: Angle,
                           prec: Optional[int] = None) -> IntegralValue:
    """Rigorous enclosure of int_{a pi}^{b pi} f(theta) d theta.

    Angles are *rational multiples of pi* (a, b as Fractions, 0 <= a <= b
    <= 2), so the closed form C_0 (b-a) pi + sum_r C_r (sin(r b pi) -
    sin(r a pi))/r is evaluated with interval sin.  For integer a, b every
    sine vanishes exactly and the result is the exact rational multiple
    C_0 (b - a) of pi, reported in ``pi_multiple``.
    """
    a, b = Fraction(a), Fraction(b)
    if not (0 <= a <= b <= 2):
        raise ValueError("need 0 <= a <= b <= 2 (angles in units of pi)")
    with iv_prec(prec or enclosure.DEFAULT_PRECISION):
        if a.denominator == 1 and b.denominator == 1:
            val = enclosure.from_fraction(f.coeffs[0] * (b - a)) * iv.pi
            return IntegralValue(val, pi_multiple=f.coeffs[0] * (b - a))
        total = enclosure.from_fraction(f.coeffs[0] * (b - a)) * iv.pi
        for r in range(1, f.degree + 1):
            c = f.coeffs[r]
            if c == 0:
                continue
            sb = _sin_pi_multiple(r * b)
            sa = _sin_pi_multiple(r * a)
            total = total + enclosure.from_fraction(Fraction(c, r)) * (sb - sa)
        return IntegralValue(total)


def _sin_pi_multiple(x: Fraction):
    """Enclosure of sin(x * pi) with exact zeros at integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return iv.mpf(0)
    # reduce mod 2 exactly before multiplying by pi (keeps arguments small)
    x = x - 2 * (x.numerator // (2 * x.denominator))
    return iv.sin(enclosure.from_fraction(x) * iv.pi)


def dirichlet_integral_batch(n: int, intervals: Sequence[tuple[float, float]]
                             ) -> tuple[np.ndarray, float]:
    """Values of int_J D_n for many intervals J = (a, b) in radians, float64,
    with one rigorous a-priori error bound valid for every entry.

    The antiderivative is theta + sum_{r<=n} sin(r theta)/r; sin(r theta)
    runs through the stable three-term recurrence in numpy across all
    endpoints at once.  Error analysis (documented in the tests): each
    recurrence step adds at most 3 ulps amplified linearly, giving
    |err| <= 1.5 n^2 eps per sine, hence sum_r |err_r| / r <= 1.5 n^2 H_n eps
    per endpoint; doubled, plus summation rounding, and multiplied by a
    safety factor of 8.
    """
    ab = np.asarray(intervals, dtype=np.float64)
    pts = ab.reshape(-1)  # a0, b0, a1, b1, ...
    if n >= 1:
        s_prev = np.zeros_like(pts)
        s_cur = np.sin(pts)
        acc = s_cur.copy()
        two_cos = 2.0 * np.cos(pts)
        for r in range(2, n + 1):
            s_prev, s_cur = s_cur, two_cos * s_cur - s_prev
            acc += s_cur / r
    else:
        acc = np.zeros_like(pts)
    anti = pts + acc
    vals = anti[1::2] - anti[0::2]
    eps = 2.0 ** -53
    h_n = np.log(max(n, 1)) + 1.0
    err = 8.0 * (1.5 * n * n * eps * h_n * 2.0 + (n + 2) * eps * 8.0)
    return vals, float(err)


def averaging_poly(P: int) -> CosinePolynomial:
    """F_P = prod_{t=1}^P (1/t)(1 + cos + ... + cos((t-1)theta)), exact.

    deg F_P = 2 + 4 + ... + 2(P-1) <= P^2 in exponential-width terms, i.e.
    cosine degree sum_{t<=P} (t-1); each factor is a nonnegative Fejer-type
    average, so |F_P|_inf <= 1.
    """
    if P < 1:
        raise ValueError("averaging polynomial needs P >= 1")
    out = ExponentialPolynomial.one()
    for t in range(1, P + 1):
        factor = dirichlet(t - 1).to_exponential().scale(Fraction(1, t))
        out = out * factor
    return out.to_cosine()


@dataclass(frozen=True)
class KillingReport:
    """Outcome of the killing-property check (S_k annihilates periodic
    Fourier segments)."""

    k: int
    period: int
    window: tuple[int, int]        # [N + deg S_k, M], indices checked
    verified: bool
    failing_index: Optional[int] = None


def detect_period(f: ExponentialPolynomial, N: int, M: int, max_period: int
                  ) -> Optional[int]:
    """Smallest p <= max_period with fhat(r + p) = fhat(r) on [N, M - p]."""
    for p in range(1, max_period + 1):
        if all(f.coefficient(r + p) == f.coefficient(r) for r in range(N, M - p + 1)):
            return p
    return None


def killing_check(f: ExponentialPolynomial, k: int, N: int, M: int) -> KillingReport:
    """Verify: if (fhat(r))_{r in [N, M]} is periodic with period <= k then
    (S_k f)^hat(r) = 0 for every r in [N + deg S_k, M].  Exact arithmetic.

    Raises if the declared periodicity fails (naming the first violation).
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    if M - N < k:
        raise ValueError("window [N, M] shorter than the period bound k")
    p = detect_period(f, N, M, k)
    if p is None:
        first_bad = None
        for r in range(N, M - k + 1):
            if f.coefficient(r + k) != f.coefficient(r):
                first_bad = r + k
                break
        raise ValueError(f"declared periodicity (period <= {k}) is false on "
                         f"[{N}, {M}]; first violating index: {first_bad}")
    s = sk(k)
    prod = s * f
    lo = N + s.degree
    for r in range(lo, M + 1):
        c = prod.coefficient(r)
        bad = (not c.is_zero()) if hasattr(c, "is_zero") else (c != 0)
        if bad:
            return KillingReport(k=k, period=p, window=(lo, M), verified=False,
                                 failing_index=r)
    return KillingReport(k=k, period=p, window=(lo, M), verified=True)


@dataclass(frozen=True)
class IdempotenceReport:
    """Outcome of the idempotence check: (S_k^2 f)^hat = 0 on [N, M] forces
    (S_k f)^hat = 0 on the shrunken window."""

    k: int
    window: tuple[int, int]
    hypothesis_holds: bool
    verified: bool
    within_lemma_hypothesis: bool
    counterexample_index: Optional[int] = None
    failing_index: Optional[int] = None


def idempotence_check(f: ExponentialPolynomial, k: int, N: int, M: int,
                      allow_small_window: bool = False) -> IdempotenceReport:
    """Check the implication of the S_k idempotence property on [N, M].

    The stated hypothesis needs M - N > |R|^{2 deg S_k} + 6 deg S_k, which
    is astronomical for k >= 3; ``allow_small_window`` permits smaller
    windows, downgrading the result to exploration (flag in the report).
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    s = sk(k)
    d = s.degree
    R = {_as_key(f.coefficient(r)) for r in range(N, M + 1)}
    required = len(R) ** (2 * d) + 6 * d
    within = (M - N) > required
    if not within and not allow_small_window:
        raise ValueError(
            f"window M - N = {M - N} below the hypothesis bound |R|^(2 deg) "
            f"+ 6 deg = {required}; pass allow_small_window=True to explore")
    s2f = s * (s * f)
    for r in range(N, M + 1):
        c = s2f.coefficient(r)
        nonzero = (not c.is_zero()) if hasattr(c, "is_zero") else (c != 0)
        if nonzero:
            return IdempotenceReport(k=k, window=(N, M), hypothesis_holds=False,
                                     verified=False, within_lemma_hypothesis=within,
                                     counterexample_index=r)
    sf = s * f
    lo, hi = N + 3 * d, M - 2 * d
    for r in range(lo, hi + 1):
        c = sf.coefficient(r)
        nonzero = (not c.is_zero()) if hasattr(c, "is_zero") else (c != 0)
        if nonzero:
            return IdempotenceReport(k=k, window=(lo, hi), hypothesis_holds=True,
                                     verified=False, within_lemma_hypothesis=within,
                                     failing_index=r)
    return IdempotenceReport(k=k, window=(lo, hi), hypothesis_holds=True,
                             verified=True, within_lemma_hypothesis=within)


def _as_key(c):
    if hasattr(c, "is_rational") and not isinstance(c, Fraction):
        return (c.field.q, c.coeffs)
    return Fraction(c)
