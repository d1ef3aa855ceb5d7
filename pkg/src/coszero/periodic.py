"""Periodicity engine: roots of unity in rational polynomials, the twisted
differencing operator, express-as-roots, and periodic decomposition.

A rational sequence whose d-window space is rank deficient satisfies a
linear recurrence whose characteristic roots, when the sequence takes
finitely many values, are roots of unity; the sequence then splits into
periodic components grouped by root order, with the period of each
component bounded by 16 t log2 log2 (t+3) for rank t.  Everything here is
exact: cyclotomic root detection is trial division by Phi_q, amplitudes
are solved in Q(zeta_L), and reconstruction is verified by rational
equality on the certified middle range (any residual is a hard failure).

Index convention: sequences are 0-indexed; a kernel vector (C_0..C_t) of
the (t+1)-window space encodes sum_j C_j x(r+j) = 0, and the certified
middle range is [t, N-t-2] (0-indexed), trimming t+1 entries per side.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

from . import qpoly
from .cyclotomic import (CONDUCTOR_CAP, CycElt, CyclotomicField,
                         cyclotomic_polynomial, euler_phi)
from .windows import FullRankError, front_supported_kernel, window_rank


class ReconstructionError(ValueError):
    """The sequence is not expressible in root-of-unity terms."""

    def __init__(self, msg: str, first_bad_index: Optional[int] = None):
        super().__init__(msg)
        self.first_bad_index = first_bad_index


def cyclotomic_roots(P: Sequence[Fraction]) -> list[tuple[int, int]]:
    """All (q, m) with Phi_q^m | P and Phi_q^(m+1) not | P, exact.

    Every q with phi(q) <= deg P is tested (phi(q) >= sqrt(q/2), so the
    q range is finite).  P is given by rational coefficients, low first.
    """
    p_int, _ = qpoly.from_fractions([Fraction(c) for c in P])
    d = qpoly.degree(p_int)
    if d < 0:
        raise ValueError("zero polynomial")
    if d == 0:
        return []
    out = []
    q = 1
    # phi(q) >= sqrt(q/2) for all q, so phi(q) <= d forces q <= 2 d^2 + 1
    while q <= 2 * d * d + 1:
        if euler_phi(q) <= d:
            phi_q = [qpoly.Z(int(c)) for c in cyclotomic_polynomial(q)]
            m = 0
            cur = p_int
            while qpoly.degree(cur) >= qpoly.degree(phi_q) - 1:
                try:
                    cur = qpoly.exact_div(cur, phi_q)
                except ValueError:
                    break
                m += 1
            if m:
                out.append((q, m))
        q += 1
    return out


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_q^a with gcd(a, q) = 1: a primitive q-th root of unity."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1 or not 0 <= self.exponent < self.order:
            raise ValueError("need 0 <= a < q")
        if gcd(self.exponent, self.order) != 1 and self.order > 1:
            raise ValueError("exponent not coprime to order (not primitive)")

    def element(self, field: CyclotomicField) -> CycElt:
        if field.q % self.order:
            raise ValueError("field conductor not divisible by root order")
        return field.zeta_power(self.exponent * (field.q // self.order))


def difference_operator(Q: Sequence, rho: CycElt, p: int) -> list:
    """(Delta_{rho,p} Q)(X) = rho^p Q(X+p) - Q(X) over Q(zeta)[X].

    Q is a coefficient list (low first) of Fractions or CycElt in rho's
    field; the result is a CycElt coefficient list of the same length
    convention (trailing zeros stripped).
    """
    field = rho.field
    qc = [c if isinstance(c, CycElt) else field.rational(c) for c in Q]
    if not qc:
        qc = [field.zero()]
    rp = rho ** p
    # Q(X+p) via Pascal accumulation: coefficient of X^j in (X+p)^k
    n = len(qc)
    shifted = [field.zero() for _ in range(n)]
    binom_col = [Fraction(1)]  # binom(k, j) p^(k-j) for current k, j = 0..k
    for k in range(n):
        if k:
            prev = binom_col
            binom_col = [prev[0] * p]
            for j in range(1, k):
                binom_col.append(prev[j - 1] + prev[j] * p)
            binom_col.append(Fraction(1))
        if not qc[k].is_zero():
            for j in range(k + 1):
                shifted[j] = shifted[j] + qc[k] * field.rational(binom_col[j])
    out = [rp * s - c for s, c in zip(shifted, qc)]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


@dataclass(frozen=True)
class DifferenceKernel:
    """Exact kernel of Delta_{rho,p} on polynomials of degree <= d."""

    kind: str              # "trivial" | "constants"
    dimension: int
    rank: int
    matches_prediction: bool


def kernel_of_difference(rho: CycElt, p: int, d: int) -> DifferenceKernel:
    """Kernel of Delta_{rho,p} on C_d[X], by exact rank over Q(zeta).

    The rank of the operator matrix on the basis {1, X, ..., X^d} is
    computed and checked against the dichotomy: trivial kernel iff
    rho^p != 1, else exactly the constants (dimension 1).
    """
    if d < 0:
        raise ValueError("d >= 0 required")
    field = rho.field
    cols = []
    for k in range(d + 1):
        mono = [field.zero()] * (d + 1)
        mono[k] = field.one()
        img = difference_operator(mono, rho, p)
        col = list(img) + [field.zero()] * (d + 1 - len(img))
        cols.append(col)
    rows = [[cols[j][i] for j in range(d + 1)] for i in range(d + 1)]
    from .windows import field_rank
    rank = field_rank(rows)
    dim = (d + 1) - rank
    unity = (rho ** p) == field.one()
    expected = 1 if unity else 0
    return DifferenceKernel(
        kind="constants" if unity else "trivial",
        dimension=dim,
        rank=rank,
        matches_prediction=(dim == expected),
    )


@dataclass(frozen=True)
class ExpRootTerm:
    """One term alpha * rho^r of a root-of-unity expansion."""

    amplitude: CycElt
    root: RootOfUnity

    def value_at(self, r: int, field: Optional[CyclotomicField] = None) -> CycElt:
        f = field or self.amplitude.field
        return self.amplitude * (self.root.element(f) ** (r % self.root.order))


@dataclass
class RootExpression:
    """x(r) = sum alpha_i rho_i^r on the middle range, exactly."""

    terms: list
    field: CyclotomicField
    valid_range: tuple[int, int]   # inclusive, 0-indexed
    lemma_certified: bool
    non_unity_degree: int          # degree of P not explained by cyclotomic factors

    def value_at(self, r: int) -> Fraction:
        tot = self.field.zero()
        for term in self.terms:
            tot = tot + term.value_at(r, self.field)
        return tot.rational_value()


def express_as_roots(x: Sequence[Fraction], v: Sequence[Fraction],
                     allow_small_N: bool = False,
                     conductor_cap: int = CONDUCTOR_CAP) -> RootExpression:
    """Express x(r) = sum_i alpha_i rho_i^r on [t, N-t-2] (0-indexed).

    ``v = (C_0, ..., C_t)`` must be a nonzero vector orthogonal to every
    (t+1)-window of x.  The rho_i are the root-of-unity zeros of
    P(X) = sum C_j X^j; amplitudes are solved exactly in Q(zeta_L),
    L = lcm of the orders, and the expansion is verified by rational
    equality at every index of the middle range.  Roots of P that are not
    roots of unity are detected; if the expansion without them fails, a
    ReconstructionError reports the first bad index.
    """
    x = [Fraction(c) for c in x]
    v = [Fraction(c) for c in v]
    N = len(x)
    t = len(v) - 1
    if all(c == 0 for c in v):
        raise ValueError("kernel vector must be nonzero")
    for r in range(N - t):
        if sum(v[j] * x[r + j] for j in range(t + 1)) != 0:
            raise ValueError(f"v is not orthogonal to the (t+1)-window at offset {r}")
    R = set(x)
    needed = len(R) ** (t + 1) + 3 * (t + 1)
    certified = N >= needed
    if not certified:
        if not allow_small_N:
            raise ValueError(
                f"N = {N} below the hypothesis bound |R|^(t+1) + 3(t+1) = "
                f"{needed}; pass allow_small_N=True to downgrade to "
                "verified-on-input")
        warnings.warn("N below the lemma hypothesis; result is verified on "
                      "this input only", stacklevel=2)
    lo, hi = t, N - t - 2
    if lo > hi:
        raise ValueError("sequence too short: empty middle range")
    # strip trailing zero coefficients of P (root 0 contributes nothing here)
    p_coeffs = list(v)
    zero_mult = 0
    while p_coeffs and p_coeffs[0] == 0:
        p_coeffs.pop(0)
        zero_mult += 1
    found = cyclotomic_roots(p_coeffs) if len(p_coeffs) > 1 else []
    roots = [RootOfUnity(q, a) for q, _m in found
             for a in range(q) if q == 1 or gcd(a, q) == 1]
    deg_p = len(p_coeffs) - 1
    non_unity = deg_p - sum(_m * euler_phi(q) for q, _m in found)
    L = 1
    for q, _m in found:
        L = lcm(L, q)
    field = CyclotomicField(L, cap=conductor_cap)
    l = len(roots)
    if l == 0:
        expr = RootExpression([], field, (lo, hi), certified, non_unity)
        _verify_reconstruction(expr, x)
        return expr
    if hi - lo + 1 < l:
        raise ValueError("middle range shorter than the number of roots")
    mat = []
    rhs = []
    root_elems = [r.element(field) for r in roots]
    for j in range(l):
        rj = lo + j
        mat.append([re ** rj for re in root_elems])
        rhs.append(field.rational(x[rj]))
    alphas = _solve_over_field(field, mat, rhs)
    terms = [ExpRootTerm(amplitude=a, root=r) for a, r in zip(alphas, roots)
             if not a.is_zero()]
    expr = RootExpression(terms, field, (lo, hi), certified, non_unity)
    _verify_reconstruction(expr, x)
    return expr


def _verify_reconstruction(expr: RootExpression, x: Sequence[Fraction]) -> None:
    lo, hi = expr.valid_range
    field = expr.field
    # iterate with running powers: cur_i = alpha_i * rho_i^r
    curs = [term.value_at(lo, field) for term in expr.terms]
    roots = [term.root.element(field) for term in expr.terms]
    for r in range(lo, hi + 1):
        tot = field.zero()
        for c in curs:
            tot = tot + c
        ok = tot.is_rational and tot.rational_value() == x[r]
        if not ok:
            raise ReconstructionError(
                "sequence not expressible as root-of-unity combination; "
                f"hypotheses violated (first bad index {r}"
                + (f", non-unity root content of degree {expr.non_unity_degree}"
                   if expr.non_unity_degree else "") + ")",
                first_bad_index=r)
        curs = [c * re for c, re in zip(curs, roots)]


def _solve_over_field(field: CyclotomicField, mat: list, rhs: list) -> list:
    n = len(mat)
    m = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for k in range(n):
        pr = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if pr is None:
            raise ValueError("singular system (roots not distinct?)")
        m[k], m[pr] = m[pr], m[k]
        inv = m[k][k].inverse()
        m[k] = [v * inv for v in m[k]]
        for i in range(n):
            if i != k and not m[i][k].is_zero():
                f = m[i][k]
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


@dataclass(frozen=True)
class PeriodicComponent:
    pattern: tuple            # one period of exact rational values
    period: int
    root_order: int
    over_formula_but_small: bool = False  # in (16 t loglog(t+3), 16]; never
    # expected for t >= 1, tracked per the stated bound's case split


@dataclass
class PeriodicDecomposition:
    """x restricted to [lo, hi] as an exact sum of periodic components."""

    domain: tuple[int, int]
    components: list
    certified_period_bound: float
    rank: int
    lemma_certified: bool

    def value_at(self, r: int) -> Fraction:
        tot = Fraction(0)
        for comp in self.components:
            tot += comp.pattern[r % comp.period]
        return tot

    def to_json_dict(self) -> dict:
        from .polycore import format_rational
        return {
            "range": [self.domain[0], self.domain[1]],
            "components": [
                {"period": c.period,
                 "pattern": [format_rational(v) for v in c.pattern]}
                for c in self.components
            ],
        }


def period_bound(t: int) -> float:
    """16 t log2 log2 (t+3), the per-component period bound at rank t."""
    return 16.0 * t * math.log2(math.log2(t + 3))


def periodic_decompose(x: Sequence[Fraction], d: int,
                       allow_small_N: bool = False,
                       conductor_cap: int = CONDUCTOR_CAP) -> PeriodicDecomposition:
    """Decompose x into exactly periodic components on [d, N-1-d].

    Requires the d-window space of x to be rank deficient (rank t < d);
    raises FullRankError("no decomposition; use dense path") otherwise.
    Components are grouped root-order classes of the express-as-roots
    expansion; each value is exactly rational (the grouped terms are
    Galois-stable) and each period divides the detected root order, hence
    respects 16 t log2 log2 (t+3).
    """
    x = [Fraction(c) for c in x]
    N = len(x)
    ws = window_rank(x, d)
    t = ws.rank
    if t >= d:
        raise FullRankError("no decomposition; use dense path")
    R = set(x)
    needed = len(R) ** d + 3 * d
    certified = N > needed
    if not certified and not allow_small_N:
        raise ValueError(
            f"N = {N} not above the hypothesis bound |R|^d + 3d = {needed}; "
            "pass allow_small_N=True to downgrade to verified-on-input")
    v = front_supported_kernel(x, d)[: t + 1]
    expr = express_as_roots(x, v, allow_small_N=True, conductor_cap=conductor_cap)
    bound = period_bound(max(t, 1))
    by_order: dict[int, list[ExpRootTerm]] = {}
    for term in expr.terms:
        by_order.setdefault(term.root.order, []).append(term)
    comps = []
    for q in sorted(by_order):
        terms = by_order[q]
        pattern = []
        for r in range(q):
            tot = expr.field.zero()
            for term in terms:
                tot = tot + term.value_at(r, expr.field)
            if not tot.is_rational:
                raise ReconstructionError(
                    f"component of order {q} not rational-valued (Galois "
                    "grouping violated)")
            pattern.append(tot.rational_value())
        if q > bound and q > 16:
            raise ReconstructionError(
                f"component period {q} exceeds the bound {bound:.3f} at rank {t}")
        comps.append(PeriodicComponent(
            pattern=tuple(pattern), period=q, root_order=q,
            over_formula_but_small=(q > bound and q <= 16)))
    lo, hi = d, N - 1 - d
    if lo > hi:
        raise ValueError("sequence too short for the trimmed range")
    dec = PeriodicDecomposition(domain=(lo, hi), components=comps,
                                certified_period_bound=bound, rank=t,
                                lemma_certified=certified and expr.lemma_certified)
    for r in range(lo, hi + 1):
        if dec.value_at(r) != x[r]:
            raise ReconstructionError(
                f"decomposition does not reproduce x (first bad index {r})",
                first_bad_index=r)
    return dec


@dataclass(frozen=True)
class PhiCheckReport:
    n_max: int
    verified: bool
    failures: tuple
    min_ratio: float     # min over n of phi(n) * 8 log2 log2 n / n
    argmin: int


def phi_sieve(n_max: int) -> np.ndarray:
    """Euler phi for 0..n_max (phi[0] = 0), linear numpy sieve."""
    phi = np.arange(n_max + 1, dtype=np.int64)
    for p in range(2, n_max + 1):
        if phi[p] == p:  # p prime
            phi[p::p] -= phi[p::p] // p
    if n_max >= 0:
        phi[0] = 0
    return phi


def euler_phi_check(n_max: int) -> PhiCheckReport:
    """Verify phi(n) >= n / (8 log2 log2 n) for 4 <= n <= n_max.

    Vectorized float check with a margin; near-ties are re-verified with
    interval arithmetic (none occur: the bound is slack at desk scales).
    """
    if n_max < 4:
        raise ValueError("n_max >= 4 required")
    phi = phi_sieve(n_max)
    n = np.arange(4, n_max + 1, dtype=np.float64)
    loglog = np.log2(np.log2(n))
    ratio = phi[4:].astype(np.float64) * 8.0 * loglog / n
    i_min = int(np.argmin(ratio))
    failures = []
    suspicious = np.nonzero(ratio < 1.0 + 1e-9)[0]
    if len(suspicious):
        from . import enclosure as enc
        from .enclosure import iv, iv_prec
        with iv_prec(96):
            for i in suspicious:
                nn = int(i) + 4
                lhs = iv.mpf(int(phi[nn])) * 8 * enc.log2_iv(enc.log2_iv(iv.mpf(nn)))
                if not lhs.a >= nn:
                    failures.append(nn)
    return PhiCheckReport(n_max=n_max, verified=not failures,
                          failures=tuple(failures),
                          min_ratio=float(ratio[i_min]), argmin=int(i_min) + 4)
