"""Rigorous counting of distinct zeros and sign changes of cosine polynomials.

Exact path: the Chebyshev image g (g(cos t) = f(t)) is analyzed over Z.
Roots at x = +-1 are split off exactly, a signed primitive Sturm chain
counts the distinct roots of g in (-1, 1), and the count of zeros of f in
[0, 2pi) is 2s + [g(1)=0] + [g(-1)=0].  theta = 0 and theta = pi are
counted once (period convention [0, 2pi)); an even function has no sign
change at 0 or pi, so sign changes are exactly the odd-multiplicity roots
of g inside (-1, 1).

Fast path: FFT grid scan where every reported zero is a certified
sign-change bracket; always a lower bound (tangential zeros can be missed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from . import enclosure, qpoly
from .enclosure import iv, iv_prec
from .polycore import (AlgebraicImage, CosinePolynomial, ExponentialPolynomial,
                       eval_grid, eval_points_certified, to_algebraic)
from .qpoly import RootBracket


class IdenticallyZeroError(ValueError):
    """The zero polynomial has an uncountable zero set."""


@dataclass
class ZeroCertificate:
    """Zero-count certificate for a cosine polynomial on [0, 2pi).

    ``sign_change_brackets`` isolate cos(theta_i) for the sign changes
    theta_i in (0, pi), one bracket per sign change, pairwise disjoint,
    ordered by decreasing x (increasing theta).  ``theta_intervals`` are
    outward-rounded rational enclosures of the theta_i themselves.
    """

    distinct_zero_count: int
    method: str  # "exact-sturm" | "grid-bisection"
    sign_change_brackets: Optional[list] = None
    zero_at_0: bool = False
    zero_at_pi: bool = False
    interior_root_count: int = 0           # distinct roots of g in (-1,1)
    odd_poly: Optional[list] = None        # integer poly with the odd-mult roots
    image: Optional[AlgebraicImage] = None

    @property
    def is_lower_bound(self) -> bool:
        return self.method == "grid-bisection"

    @property
    def sign_change_count(self) -> Optional[int]:
        if self.sign_change_brackets is None:
            return None
        return len(self.sign_change_brackets)

    def theta_intervals(self, width: Fraction = Fraction(1, 1 << 30)
                        ) -> list[tuple[Fraction, Fraction]]:
        """Rational enclosures in [0, pi] of the sign-change angles."""
        if self.sign_change_brackets is None:
            raise ValueError("certificate carries no sign-change isolation")
        out = []
        with iv_prec(96):
            for br in self.sign_change_brackets:
                x = enclosure.from_bracket(br.lo, br.hi)
                t = enclosure.acos_iv(x)
                lo = Fraction(enclosure.lower(t)).limit_denominator(1 << 48)
                hi = Fraction(enclosure.upper(t)).limit_denominator(1 << 48)
                lo = max(Fraction(0), lo - width / 2)
                hi = hi + width / 2
                out.append((lo, hi))
        return out


def _deflate_endpoints(g: list) -> tuple[list, int, int]:
    """Strip all (x-1) and (x+1) factors; returns (reduced, mult@1, mult@-1)."""
    m1 = mp1 = 0
    while qpoly.eval_int(g, 1) == 0 and qpoly.degree(g) > 0:
        g = qpoly.exact_div(g, [qpoly.Z(-1), qpoly.Z(1)])
        m1 += 1
    while qpoly.eval_int(g, -1) == 0 and qpoly.degree(g) > 0:
        g = qpoly.exact_div(g, [qpoly.Z(1), qpoly.Z(1)])
        mp1 += 1
    return g, m1, mp1


def _float_root_hints(f: CosinePolynomial, oversample: int = 8) -> list[float]:
    """Approximate cos(theta) of roots of f from a float grid scan."""
    n = max(f.degree, 1)
    m = 1 << max(8, (oversample * n).bit_length())
    grid = eval_grid(f, m)
    v = grid.values
    sgn = np.sign(v)
    flips = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    thetas = 2.0 * np.pi * (flips + 0.5) / m
    xs = np.cos(thetas[thetas <= np.pi + 2 * np.pi / m])
    return sorted(set(float(x) for x in xs))


def count_distinct_zeros(f: CosinePolynomial,
                         want_sign_changes: bool = True) -> ZeroCertificate:
    """Exact distinct-zero count of f on [0, 2pi), Sturm method.

    With ``want_sign_changes`` the certificate also isolates every sign
    change in (0, pi) (odd-multiplicity interior roots of the Chebyshev
    image), which l1_norm_exact and companion() require.
    """
    if f.is_zero():
        raise IdenticallyZeroError("identically zero, uncountable zero set")
    image = to_algebraic(f)
    g = image.int_poly()
    g_red, m1, mp1 = _deflate_endpoints(g)
    if qpoly.degree(g_red) >= 1:
        chain = qpoly.SturmChain(g_red)
        s = chain.count(Fraction(-1), Fraction(1))
    else:
        chain = None
        s = 0
    cert = ZeroCertificate(
        distinct_zero_count=2 * s + (1 if m1 else 0) + (1 if mp1 else 0),
        method="exact-sturm",
        zero_at_0=bool(m1),
        zero_at_pi=bool(mp1),
        interior_root_count=s,
        image=image,
    )
    if want_sign_changes:
        if s == 0:
            cert.sign_change_brackets = []
            cert.odd_poly = [qpoly.Z(1)]
        else:
            odd = _odd_multiplicity_part(g_red)
            cert.odd_poly = odd
            if qpoly.degree(odd) == 0:
                cert.sign_change_brackets = []
            else:
                hints = _float_root_hints(f)
                brs = qpoly.isolate_roots(odd, Fraction(-1), Fraction(1), hints=hints)
                brs.sort(key=lambda b: (b.lo, b.hi), reverse=True)  # theta increasing
                cert.sign_change_brackets = brs
    return cert


def _odd_multiplicity_part(g: list) -> list:
    """Product of the square-free factors of g occurring with odd multiplicity."""
    out = [qpoly.Z(1)]
    for p_i, i in qpoly.yun_decomposition(g):
        if i % 2 == 1:
            out = qpoly.mul(out, p_i)
    return qpoly.primitive(out)


def count_zeros_fast(f: CosinePolynomial, m: int,
                     refine_bits: int = 20) -> ZeroCertificate:
    """Certified lower bound on distinct zeros from an m-point FFT grid.

    Every reported zero corresponds to a sign-change bracket whose endpoint
    signs are certified (grid error bound, then extended precision for the
    near-ties).  Tangential zeros may be missed; the count is a lower bound.
    """
    if f.is_zero():
        raise IdenticallyZeroError("identically zero, uncountable zero set")
    if m < 4 * f.degree:
        raise ValueError(f"grid too small: m = {m} < 4*deg = {4 * f.degree}")
    grid = eval_grid(f, m)
    v = grid.values
    err = grid.error_bound
    certified = np.abs(v) > err
    idx = np.nonzero(certified)[0]
    if len(idx) == 0:
        return ZeroCertificate(0, "grid-bisection", sign_change_brackets=[])
    ambiguous = np.nonzero(~certified)[0]
    signs = np.zeros(m, dtype=np.int8)
    signs[idx] = np.sign(v[idx]).astype(np.int8)
    if len(ambiguous) and len(ambiguous) <= 4096:
        thetas = 2.0 * np.pi * ambiguous / m
        vals, err2 = eval_points_certified(f, thetas)
        ok = np.abs(vals) > err2
        signs[ambiguous[ok]] = np.sign(vals[ok]).astype(np.int8)
    known = np.nonzero(signs)[0]
    s_seq = signs[known]
    flips = int(np.count_nonzero(s_seq != np.roll(s_seq, -1)))
    # each flip (cyclically, over [0, 2pi)) brackets at least one zero
    return ZeroCertificate(distinct_zero_count=flips, method="grid-bisection")


@dataclass(frozen=True)
class CompanionPolynomial:
    """P(theta) = (-1)^p prod_i (cos theta - cos theta_i) over the sign
    changes theta_i of f, with P*f >= 0; built from certified brackets for
    the cos theta_i and expanded with exact rational approximations whose
    total effect on P is below ``expansion_error``."""

    cosine_brackets: tuple
    parity: int
    exponential: ExponentialPolynomial
    expansion_error: float
    defining_poly: tuple

    @property
    def sign_change_count(self) -> int:
        return len(self.cosine_brackets)

    @property
    def degree(self) -> int:
        return self.exponential.degree


def _sign_near_zero(f: CosinePolynomial, cert: ZeroCertificate) -> int:
    """Exact sign of f just right of theta = 0."""
    v0 = f.value_at_zero()
    if v0 != 0:
        return 1 if v0 > 0 else -1
    g = cert.image.int_poly()
    g_red, _, _ = _deflate_endpoints(g)
    chain = qpoly.SturmChain(g_red) if qpoly.degree(g_red) >= 1 else None
    eta = Fraction(1, 4)
    while True:
        x = 1 - eta
        if qpoly.sign_at(g_red, x) != 0 and (
                chain is None or chain.count(x, Fraction(1)) == 0):
            # no interior root between x and 1: stable sign region
            break
        eta /= 2
    s = qpoly.sign_at(g_red, 1 - eta)
    assert s != 0
    return s


def companion(f: CosinePolynomial, bracket_bits: int = 80,
              certificate: Optional[ZeroCertificate] = None) -> CompanionPolynomial:
    """Companion polynomial of f: sign pattern flips exactly at each sign
    change of f, P*f >= 0 up to the tracked expansion error."""
    if f.is_zero():
        raise IdenticallyZeroError("companion of the zero polynomial")
    cert = certificate or count_distinct_zeros(f, want_sign_changes=True)
    if cert.sign_change_brackets is None:
        raise ValueError("certificate lacks sign-change isolation")
    k = len(cert.sign_change_brackets)
    # refine so the exact-rational expansion stays provably tiny
    width = Fraction(1, 1 << max(bracket_bits, k + 50))
    refined = [qpoly.refine_bracket(cert.odd_poly, br, width)
               for br in cert.sign_change_brackets]
    cos_exp = ExponentialPolynomial({1: Fraction(1, 2), -1: Fraction(1, 2)})
    P = ExponentialPolynomial.one()
    for br in refined:
        x_mid = br.midpoint().limit_denominator(1 << (bracket_bits + 16))
        P = P * (cos_exp - ExponentialPolynomial({0: x_mid}))
    sgn = _sign_near_zero(f, cert)
    # P(0+) = prod(1 - x_i) > 0; flip so that sign(P) matches sign(f) near 0
    parity = 0 if sgn > 0 else 1
    if parity:
        P = -P
    # |P - Ptilde|_inf <= sum_i |x_i - xtilde_i| * 2^(k-1)
    slack = float(sum((br.width() for br in refined), Fraction(0))
                  + k * Fraction(1, 1 << (bracket_bits + 10)))
    exp_err = slack * (2.0 ** max(k - 1, 0))
    return CompanionPolynomial(
        cosine_brackets=tuple(refined),
        parity=parity,
        exponential=P,
        expansion_error=exp_err,
        defining_poly=tuple(int(c) for c in (cert.odd_poly or [1])),
    )


def companion_product_min(f: CosinePolynomial, P: CompanionPolynomial,
                          grid_points: int = 100_000) -> tuple[float, float]:
    """(min over grid of P*f, tolerance): verification helper for P*f >= -tol."""
    m = grid_points
    thetas = 2.0 * np.pi * np.arange(m) / m
    fv = eval_grid(f, m).values
    # P has rational coefficients: evaluate exactly-as-floats via its cosine form
    pv = P.exponential.evaluate_many(thetas).real
    prod = fv * pv
    scale = float(f.l1_coefficients()) * _exp_l1(P.exponential)
    tol = (P.expansion_error * float(f.l1_coefficients())
           + 1e-12 * max(scale, 1.0))
    return float(prod.min()), tol


def _exp_l1(P: ExponentialPolynomial) -> float:
    tot = 0.0
    for c in P.coeffs.values():
        tot += abs(complex(c.complex_value(64)) if hasattr(c, "complex_value")
                   else float(c))
    return tot


def l1_norm_exact(f: CosinePolynomial,
                  certificate: Optional[ZeroCertificate] = None,
                  bracket_bits: int = 64, prec: int = 160):
    """Rigorous enclosure of int_0^{2pi} |f|.

    Between consecutive sign changes the sign of f is constant, so the
    integral is a signed sum of antiderivative values
    F(theta) = C_0 theta + sum_r C_r sin(r theta)/r.  At the algebraic
    points theta_i, sin(r theta_i) = sqrt(1-x^2) U_{r-1}(x) with
    x = cos theta_i held in a refined rational bracket, so each F(theta_i)
    is an interval-Clenshaw evaluation; only acos needs a transcendental
    enclosure (for the C_0 term).  Returns an mpmath iv interval.
    """
    cert = certificate or count_distinct_zeros(f, want_sign_changes=True)
    if cert.is_lower_bound:
        raise ValueError("l1_norm_exact needs an exact certificate, not the "
                         "fast-path lower bound")
    if cert.sign_change_brackets is None:
        raise ValueError("certificate lacks sign-change isolation")
    width = Fraction(1, 1 << bracket_bits)
    brackets = [qpoly.refine_bracket(cert.odd_poly, br, width)
                for br in cert.sign_change_brackets]
    g = cert.image.int_poly()
    with iv_prec(prec):
        c0 = enclosure.from_fraction(f.coeffs[0])
        # F values at 0, interior sign changes (x decreasing), pi
        f_vals = [iv.mpf(0)]
        for br in brackets:
            x_iv = enclosure.from_bracket(br.lo, br.hi)
            w = _u_series_clenshaw_iv(f, x_iv)
            s = enclosure.sqrt_iv_clipped(1 - x_iv * x_iv)
            f_vals.append(c0 * enclosure.acos_iv(x_iv) + s * w)
        f_vals.append(c0 * iv.pi)
        # exact sign of f on each segment, from g at interior rational points
        total = iv.mpf(0)
        for i in range(len(f_vals) - 1):
            probe = _interior_probe(g, brackets, i)
            sgn = qpoly.sign_at(g, probe)
            seg = f_vals[i + 1] - f_vals[i]
            total = total + (seg if sgn > 0 else -seg)
        return 2 * total


def _interior_probe(g: list, brackets: Sequence[RootBracket], i: int) -> Fraction:
    """Rational x strictly inside theta-segment i with g(x) != 0.

    Segment i runs between sign change i-1 and i (theta increasing), i.e.
    between x = brackets[i-1].lo above and x = brackets[i].hi below."""
    hi_b = brackets[i - 1].lo if i > 0 else Fraction(1)
    lo_b = brackets[i].hi if i < len(brackets) else Fraction(-1)
    probe = (lo_b + hi_b) / 2
    step = (hi_b - lo_b) / 16
    while qpoly.sign_at(g, probe) == 0:  # even-multiplicity root hit; sidestep
        probe += step
        step /= 2
    return probe


def _u_series_clenshaw_iv(f: CosinePolynomial, x_iv):
    """Interval Clenshaw for W(x) = sum_{r>=1} (C_r / r) U_{r-1}(x)."""
    n = f.degree
    if n < 1:
        return iv.mpf(0)
    two_x = 2 * x_iv
    b1 = iv.mpf(0)
    b2 = iv.mpf(0)
    for r in range(n, 0, -1):
        c = enclosure.from_fraction(Fraction(f.coeffs[r], r)) if f.coeffs[r] else iv.mpf(0)
        b1, b2 = c + two_x * b1 - b2, b1
    return b1  # Clenshaw for U-basis: S = y_0


def l1_norm_quadrature(f: CosinePolynomial, points: int = 4096) -> float:
    """Independent float estimate of int |f| (composite Simpson); test oracle."""
    if points % 2 == 1:
        points += 1
    thetas = np.linspace(0.0, 2.0 * np.pi, points + 1)
    from .polycore import clenshaw_many
    vals = np.abs(clenshaw_many(f.float_coeffs(), thetas))
    h = 2.0 * np.pi / points
    return float(h / 3.0 * (vals[0] + vals[-1]
                            + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-1:2].sum()))
