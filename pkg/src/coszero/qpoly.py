"""Exact dense univariate polynomial arithmetic over Z and Q.

Polynomials are lists of gmpy2.mpz coefficients, lowest degree first, with
trailing zeros stripped (the zero polynomial is ``[mpz(0)]``).  Rational
polynomials enter through :func:`from_fractions`, which clears denominators;
all root counting and isolation then runs over Z, where gmpy2 keeps the
bignum arithmetic fast.

The Sturm machinery uses a *signed primitive* pseudo-remainder sequence:
every pseudo-remainder is taken with an even power of the leading
coefficient (so the multiplier is positive and the classical Sturm sign
rules apply unchanged) and divided by its integer content to control
coefficient growth.  Sign variations of this chain at a and b count the
distinct real roots in (a, b], with no square-freeness assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from gmpy2 import mpz, gcd as _gcd

Z = mpz
IntPoly = list  # list[mpz], low -> high


def normalize(p: Sequence) -> IntPoly:
    q = [Z(c) for c in p]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q if q else [Z(0)]


def zero() -> IntPoly:
    return [Z(0)]


def is_zero(p: IntPoly) -> bool:
    return len(p) == 1 and p[0] == 0


def degree(p: IntPoly) -> int:
    """Degree with deg(0) = -1."""
    return -1 if is_zero(p) else len(p) - 1


def add(p: IntPoly, q: IntPoly) -> IntPoly:
    n = max(len(p), len(q))
    out = [Z(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return normalize(out)


def neg(p: IntPoly) -> IntPoly:
    return [-c for c in p]


def sub(p: IntPoly, q: IntPoly) -> IntPoly:
    return add(p, neg(q))


def scale(p: IntPoly, c) -> IntPoly:
    c = Z(c)
    if c == 0:
        return zero()
    return [c * x for x in p]


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    if is_zero(p) or is_zero(q):
        return zero()
    out = [Z(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return normalize(out)


def shift_mul_xk(p: IntPoly, k: int) -> IntPoly:
    """p(x) * x^k."""
    if is_zero(p):
        return zero()
    return [Z(0)] * k + list(p)


def derivative(p: IntPoly) -> IntPoly:
    if len(p) == 1:
        return zero()
    return normalize([i * c for i, c in enumerate(p)][1:])


def eval_int(p: IntPoly, x) -> "mpz":
    x = Z(x)
    acc = Z(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_scaled(p: IntPoly, num, den) -> "mpz":
    """den^deg(p) * p(num/den); same sign as p(num/den) for den > 0."""
    num = Z(num)
    den = Z(den)
    acc = Z(p[-1])
    pw = Z(1)
    for c in reversed(p[:-1]):
        pw = pw * den
        acc = acc * num + c * pw
    return acc


def sign_at(p: IntPoly, x: Fraction) -> int:
    x = Fraction(x)
    v = eval_scaled(p, x.numerator, x.denominator)
    return 0 if v == 0 else (1 if v > 0 else -1)


def eval_fraction(p: IntPoly, x: Fraction) -> Fraction:
    x = Fraction(x)
    v = eval_scaled(p, x.numerator, x.denominator)
    return Fraction(int(v), x.denominator ** degree(p)) if degree(p) >= 0 else Fraction(0)


def content(p: IntPoly) -> "mpz":
    g = Z(0)
    for c in p:
        if c:
            g = _gcd(g, c)
            if g == 1:
                return g
    return g if g else Z(1)


def primitive(p: IntPoly) -> IntPoly:
    c = content(p)
    if c > 1:
        return [x // c for x in p]
    return list(p)


def from_fractions(coeffs: Iterable[Fraction]) -> tuple[IntPoly, int]:
    """Clear denominators: returns (q, d) with q = d * poly, q over Z."""
    cs = [Fraction(c) for c in coeffs]
    d = 1
    for c in cs:
        d = d * c.denominator // _gcd(Z(d), Z(c.denominator))
    d = int(d)
    return normalize([Z(c.numerator * (d // c.denominator)) for c in cs]), d


def to_fractions(p: IntPoly, den: int = 1) -> list[Fraction]:
    return [Fraction(int(c), den) for c in p]


def prem_neg_even(A: IntPoly, B: IntPoly) -> IntPoly:
    """-(lb^{2m} * A mod B) with the smallest even multiplier power 2m
    that clears all leading terms.  The multiplier is positive, so the
    result is a positive multiple of the *signed* Euclidean remainder -rem.
    """
    d = len(B) - 1
    if d == 0:
        return zero()
    lb = B[-1]
    m = len(A) - 1
    if m - d == 1:
        # fused two-step elimination: R = lb^2*A - (q1*x + q0)*B
        am, am1 = A[m], A[m - 1]
        q1 = lb * am
        q0 = lb * am1 - am * B[d - 1]
        lb2 = lb * lb
        R = [Z(0)] * d
        R[0] = q0 * B[0] - lb2 * A[0]
        for i in range(1, d):
            R[i] = q0 * B[i] + q1 * B[i - 1] - lb2 * A[i]
        return normalize(R)
    R = list(A)
    passes = 0
    while len(R) - 1 >= d and not is_zero(R):
        mm = len(R) - 1
        q = R[-1]
        sh = mm - d
        for i in range(len(R) - 1):
            R[i] = lb * R[i]
        for i in range(d):
            R[sh + i] -= q * B[i]
        R.pop()
        while len(R) > 1 and R[-1] == 0:
            R.pop()
        passes += 1
    if passes % 2 == 1:
        R = [lb * c for c in R]
    return normalize([-c for c in R])


def exact_div(p: IntPoly, q: IntPoly) -> IntPoly:
    """p // q, asserting the division is exact over Q (content-scaled)."""
    if is_zero(p):
        return zero()
    if degree(q) > degree(p):
        raise ValueError("not divisible: deg mismatch")
    # work over Q implicitly: long division tracking a common denominator
    rem = [Fraction(int(c)) for c in p]
    div = [Fraction(int(c)) for c in q]
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    lq = div[-1]
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(div) - 1] / lq
        out[k] = c
        if c:
            for i, b in enumerate(div):
                rem[k + i] -= c * b
    if any(rem):
        raise ValueError("not divisible: nonzero remainder")
    res, den = from_fractions(out)
    if den != 1:
        raise ValueError("not divisible over Z after content scaling")
    return res


@dataclass
class SturmChain:
    """Signed primitive PRS of (p, p'); counts distinct real roots.

    ``count(a, b)`` returns the number of distinct real roots in (a, b],
    valid for arbitrary (not necessarily square-free) p with p(a), p(b) != 0.
    The last element of the chain is gcd(p, p') up to a positive constant.
    """

    p: IntPoly
    chain: list

    def __init__(self, p: IntPoly):
        self.p = normalize(p)
        if is_zero(self.p):
            raise ValueError("Sturm chain of the zero polynomial")
        chain = [self.p]
        d = derivative(self.p)
        if not is_zero(d):
            chain.append(d)
            while True:
                R = prem_neg_even(chain[-2], chain[-1])
                if is_zero(R):
                    break
                chain.append(primitive(R))
                if len(chain[-1]) == 1:
                    break
        self.chain = chain

    def variations_at(self, x: Fraction) -> int:
        signs = []
        x = Fraction(x)
        for q in self.chain:
            s = sign_at(q, x)
            if s != 0:
                signs.append(s)
        return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct real roots of p in (a, b]; requires p(a) != 0."""
        a, b = Fraction(a), Fraction(b)
        if a >= b:
            return 0
        if sign_at(self.p, a) == 0:
            raise ValueError("Sturm count requires p(a) != 0")
        return self.variations_at(a) - self.variations_at(b)

    def gcd_with_derivative(self) -> IntPoly:
        """gcd(p, p') up to a positive integer factor (primitive)."""
        if len(self.chain) == 1:  # constant p'
            return [Z(1)]
        return primitive(self.chain[-1])


def squarefree_part(p: IntPoly) -> IntPoly:
    """Primitive square-free part p / gcd(p, p')."""
    p = primitive(normalize(p))
    if degree(p) <= 0:
        return p
    g = SturmChain(p).gcd_with_derivative()
    if degree(g) == 0:
        return p
    return primitive(exact_div(p, g))


def yun_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Square-free decomposition p = c * prod P_i^i (P_i primitive, pairwise
    coprime, square-free).  Returns [(P_i, i)] for the non-constant P_i."""
    p = primitive(normalize(p))
    if degree(p) <= 0:
        return []
    out = []
    g = SturmChain(p).gcd_with_derivative()
    if degree(g) == 0:
        return [(p, 1)]
    w = primitive(exact_div(p, g))  # product of P_i (each once)
    y = g
    i = 1
    while degree(w) > 0:
        # P_i = gcd-free step: w_{next} = gcd(w, y), P_i = w / w_next
        gg = _poly_gcd(w, y)
        pi = primitive(exact_div(w, gg))
        if degree(pi) > 0:
            out.append((pi, i))
        w = gg
        if degree(w) == 0:
            break
        y = primitive(exact_div(y, gg))
        i += 1
    return out


def _poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    p, q = primitive(normalize(p)), primitive(normalize(q))
    if is_zero(p):
        return q
    if is_zero(q):
        return p
    if degree(p) < degree(q):
        p, q = q, p
    while not is_zero(q) and degree(q) > 0:
        r = prem_neg_even(p, q)
        p, q = q, primitive(r)
    if is_zero(q):
        return p
    return [Z(1)]  # nonzero constant remainder: coprime


@dataclass(frozen=True)
class RootBracket:
    """One distinct real root in [lo, hi]; exact if lo == hi (rational root).
    For strict brackets, sign(p(lo)) * sign(p(hi)) may be 0 only if exact."""

    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def width(self) -> Fraction:
        return self.hi - self.lo


def isolate_roots(
    p: IntPoly,
    lo: Fraction,
    hi: Fraction,
    chain: Optional[SturmChain] = None,
    hints: Optional[Sequence[float]] = None,
) -> list[RootBracket]:
    """Isolating brackets for every distinct real root of p in (lo, hi).

    Float ``hints`` (approximate root locations) let the common case resolve
    with exact sign checks only; a Sturm-count bisection covers the rest.
    """
    p = normalize(p)
    lo, hi = Fraction(lo), Fraction(hi)
    chain = chain or SturmChain(p)
    # nudge endpoints off roots of p so Sturm counts are open-interval
    lo = _nudge_off_root(p, lo, hi)
    hi = _nudge_off_root(p, hi, lo)
    if lo >= hi:
        return []
    total = chain.count(lo, hi)
    if total == 0:
        return []
    found = _brackets_from_hints(p, lo, hi, hints or [])
    # walls: nonzero-sign points delimiting the hint brackets; exact roots
    # get a verified tight enclosure first
    walls: list[Fraction] = [lo]
    kept: list[RootBracket] = []
    for br in found:
        if br.is_exact:
            wl, wr = _tight_walls(p, chain, br.lo, walls[-1], hi)
            if wl is None:
                continue
            walls.extend([wl, wr])
        else:
            if br.lo <= walls[-1]:
                continue
            walls.extend([br.lo, br.hi])
        kept.append(br)
    walls.append(hi)
    gap_brackets: list[RootBracket] = []
    gap_total = 0
    for k in range(0, len(walls), 2):
        a, b = walls[k], walls[k + 1]
        if a >= b:
            continue
        n_ab = chain.count(a, b)
        gap_total += n_ab
        gap_brackets.extend(_bisect_isolate(p, chain, a, b, n_ab))
    if gap_total + len(kept) != total:
        # some hint bracket holds more than one root (rare): verify each
        verified: list[RootBracket] = []
        for br in kept:
            if br.is_exact:
                verified.append(br)
                continue
            n_br = chain.count(br.lo, br.hi)
            verified.extend(_bisect_isolate(p, chain, br.lo, br.hi, n_br))
        kept = verified
    out = sorted(gap_brackets + kept, key=lambda br: (br.lo, br.hi))
    assert len(out) == total, "isolation incomplete"
    return out


def _nudge_off_root(p: IntPoly, x: Fraction, towards: Fraction) -> Fraction:
    """Move x toward ``towards`` until p(x) != 0."""
    if sign_at(p, x) != 0:
        return x
    direction = 1 if towards > x else -1
    step = abs(towards - x) / 1024 or Fraction(1, 1024)
    while True:
        cand = x + direction * step
        if sign_at(p, cand) != 0:
            return cand
        step /= 2


def _tight_walls(p: IntPoly, chain: SturmChain, root: Fraction,
                 left_limit: Fraction, right_limit: Fraction):
    """Walls (wl, wr) around an exact rational root with p(wl), p(wr) != 0
    and exactly one root in (wl, wr].  Returns (None, None) if the root
    cannot be separated inside the limits (already covered elsewhere)."""
    eps = min(root - left_limit, right_limit - root, Fraction(1, 1024)) / 2
    while eps > 0:
        wl, wr = root - eps, root + eps
        if (wl > left_limit and wr < right_limit
                and sign_at(p, wl) != 0 and sign_at(p, wr) != 0
                and chain.count(wl, wr) == 1):
            return wl, wr
        eps /= 2
    return None, None


def _brackets_from_hints(p: IntPoly, lo: Fraction, hi: Fraction,
                         hints: Sequence[float]) -> list[RootBracket]:
    brackets: list[RootBracket] = []
    occupied: list[tuple[Fraction, Fraction]] = []
    for h in sorted(hints):
        if not (float(lo) - 1e-9 < h < float(hi) + 1e-9):
            continue
        c = Fraction(h).limit_denominator(1 << 40)
        c = min(max(c, lo), hi)
        w = Fraction(1, 1 << 24)
        a, b = max(lo, c - w), min(hi, c + w)
        sa, sb = sign_at(p, a), sign_at(p, b)
        if sa == 0 or sb == 0:
            x = a if sa == 0 else b
            br = RootBracket(x, x)
        elif sa != sb:
            br = RootBracket(a, b)
        else:
            continue
        if any(not (br.hi < o_lo or br.lo > o_hi) for o_lo, o_hi in occupied):
            continue
        brackets.append(br)
        occupied.append((br.lo, br.hi))
    brackets.sort(key=lambda br: (br.lo, br.hi))
    return brackets


def _bisect_isolate(p: IntPoly, chain: SturmChain, a: Fraction, b: Fraction,
                    n_ab: int) -> list[RootBracket]:
    """Isolate the n_ab distinct roots in (a, b]; p(a), p(b) != 0."""
    if n_ab == 0:
        return []
    if n_ab == 1:
        return [RootBracket(a, b)]
    mid = (a + b) / 2
    if sign_at(p, mid) == 0:
        wl, wr = _tight_walls(p, chain, mid, a, b)
        n_l = chain.count(a, wl)
        n_r = n_ab - n_l - 1
        out = _bisect_isolate(p, chain, a, wl, n_l)
        out.append(RootBracket(mid, mid))
        out.extend(_bisect_isolate(p, chain, wr, b, n_r))
        return out
    n_l = chain.count(a, mid)
    return (_bisect_isolate(p, chain, a, mid, n_l)
            + _bisect_isolate(p, chain, mid, b, n_ab - n_l))


def refine_bracket(p: IntPoly, br: RootBracket, width: Fraction) -> RootBracket:
    """Shrink a sign-change bracket below ``width`` by exact bisection."""
    if br.is_exact:
        return br
    lo, hi = br.lo, br.hi
    slo = sign_at(p, lo)
    if slo == 0:
        return RootBracket(lo, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = sign_at(p, mid)
        if sm == 0:
            return RootBracket(mid, mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi)
