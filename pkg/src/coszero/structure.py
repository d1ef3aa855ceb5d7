"""Structure pipeline: from sparse-support correlation data to periodic
blocks plus a small error term, the rational-function rendering of that
structure, and the structured-case zero bounds.

The decomposition follows the constructive route: given the support B of
Q*f for a low-degree Q, the complement of B in [0, deg f] splits into
maximal gap intervals; every long gap, trimmed by d at each end, becomes a
block whose Fourier coefficients are certified periodic; everything else
joins the exceptional set S, and E = sum_{r in S} C_r cos(r theta) with
|E|_inf <= |S| M(R).  The reassembly f = sum f_i + E is an exact
coefficientwise identity, checked on construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np

from . import enclosure
from .enclosure import iv, iv_prec
from .kernels import sk
from .periodic import ReconstructionError, periodic_decompose
from .polycore import (CoefficientSet, CosinePolynomial, ExponentialPolynomial,
                       eval_grid)
from .windows import FullRankError


@dataclass(frozen=True)
class StructuredBlock:
    """One block: interval I with exactly periodic coefficient pattern."""

    interval: tuple[int, int]          # inclusive [lo, hi], lo >= 1
    poly: CosinePolynomial             # supported (as cosine coeffs) on I
    period: int                        # certified period of (C_r)_{r in I}
    component_periods: tuple           # periods of the decomposition pieces

    def coefficient(self, r: int) -> Fraction:
        if self.interval[0] <= r <= self.interval[1] and r <= self.poly.degree:
            return self.poly.coeffs[r]
        return Fraction(0)

    def pattern(self) -> tuple:
        lo = self.interval[0]
        return tuple(self.coefficient(lo + j) for j in range(self.period))


@dataclass
class StructuredForm:
    """f = sum_i f_i + E with disjoint block intervals and |E|_inf <= |S| M(R)."""

    source: CosinePolynomial
    blocks: list
    error_term: CosinePolynomial
    exceptional_set: frozenset
    error_sup_bound: Fraction          # |S| * M(R), exact upper bound
    heuristic_threshold: bool = False  # True when a non-paper threshold was used

    @property
    def exceptional_set_size(self) -> int:
        return len(self.exceptional_set)

    def reassemble(self) -> CosinePolynomial:
        out = self.error_term
        for b in self.blocks:
            out = out + b.poly
        return out

    def verify_exact(self) -> bool:
        return self.reassemble() == self.source


@dataclass(frozen=True)
class CorrelationReport:
    """Support of Q*f for Q = P*S_D, plus the achieved correlation ratio."""

    support: tuple
    support_size: int
    epsilon_achieved: Optional[float]   # |int Pf| / int |Pf|; None for f = 0
    epsilon_zero: float
    exact_support: bool
    q_degree: int


def correlation_report(f: CosinePolynomial, P: ExponentialPolynomial, D: int,
                       epsilon_zero: float = 2.0 ** -30,
                       grid_points: int = 1 << 14) -> CorrelationReport:
    """Compute Q = P * S_D and the support B = {r : (Qf)^hat(r) != 0}.

    With exact (rational or cyclotomic) P the support test is exact and
    ``epsilon_zero`` is ignored.  The correlation ratio |int Pf| / int |Pf|
    is reported as a float (quadrature for the denominator).
    """
    if P.is_zero():
        raise ValueError("P must be nonzero")
    if D < 1:
        raise ValueError("D >= 1 required")
    Q = P * sk(D)
    fe = f.to_exponential()
    Qf = Q * fe
    support = Qf.support()
    if f.is_zero():
        eps_achieved = None
    else:
        # int P f = 2 pi sum_r Phat(r) fhat(-r); reported as float
        num = 0.0
        for r, c in P.coeffs.items():
            fc = fe.coefficient(-r)
            cv = complex(c.complex_value(64)) if hasattr(c, "complex_value") else float(c)
            fv = float(fc) if isinstance(fc, Fraction) else complex(fc.complex_value(64))
            num += (cv * fv).real if isinstance(cv, complex) else cv * float(fv)
        thetas = 2.0 * np.pi * np.arange(grid_points) / grid_points
        pf = (P.evaluate_many(thetas).real * eval_grid(f, grid_points).values)
        denom = float(np.abs(pf).mean())  # (1/2pi) int |Pf|
        eps_achieved = abs(num) / denom if denom > 0 else None
    return CorrelationReport(
        support=support,
        support_size=len(support),
        epsilon_achieved=eps_achieved,
        epsilon_zero=epsilon_zero,
        exact_support=True,
        q_degree=Q.degree,
    )


class BlockCertificationError(ValueError):
    """A gap block failed periodicity certification: the given support B was
    not the true support of Q*f for any valid low-degree Q."""


def paper_length_threshold(R: CoefficientSet, d: int) -> int:
    return R.cardinality ** d + 3 * d


def reduce_to_structure(f: CosinePolynomial, B: Sequence[int], d: int,
                        length_threshold: Optional[int] = None) -> StructuredForm:
    """Split f into periodic blocks (long gaps of B, trimmed by d) plus an
    exceptional part E supported on S.

    B is the nonzero-support of Q*f on the non-negative integers for some
    exponential polynomial Q of degree d.  With the default (paper)
    threshold |R|^d + 3d the exceptional-set bound
    |S| <= 1 + K + 2dK + K(|R|^d + 3d) <= 8K(|R|^d + d), K = |B|, is
    asserted; a custom threshold marks the result heuristic instead.
    """
    if d < 1:
        raise ValueError("d >= 1 required")
    n = f.degree
    R = f.coefficient_set(include_zero=True)
    thr = paper_length_threshold(R, d)
    heuristic = False
    if length_threshold is not None and length_threshold != thr:
        warnings.warn("non-paper length threshold; structure marked heuristic",
                      stacklevel=2)
        thr = length_threshold
        heuristic = True
    Bset = set(int(b) for b in B)
    if any(b < 0 for b in Bset):
        raise ValueError("B must be a subset of the non-negative integers")
    # maximal finite gap intervals of N \ B inside [0, max(B)+1]; indices
    # beyond max(B ∪ {n}) belong to the infinite gap and are never blocks
    horizon = max(Bset) if Bset else n + 1
    gaps: list[tuple[int, int]] = []
    r = 0
    while r <= horizon:
        if r not in Bset:
            start = r
            while r <= horizon and r not in Bset:
                r += 1
            if r <= horizon:  # finite gap (ended by an element of B)
                gaps.append((start, r - 1))
        else:
            r += 1
    blocks: list[StructuredBlock] = []
    S = set(Bset & set(range(0, n + 1)))
    S.add(0)
    for lo, hi in gaps:
        length = hi - lo + 1
        if length > thr:
            blo, bhi = lo + d, hi - d
            S.update(range(lo, blo))
            S.update(range(bhi + 1, hi + 1))
            block_vals = [f.coeffs[r] if r <= n else Fraction(0)
                          for r in range(lo, hi + 1)]
            try:
                dec = periodic_decompose(block_vals, d + 1, allow_small_N=True)
            except (FullRankError, ReconstructionError) as e:
                raise BlockCertificationError(
                    f"block [{blo}, {bhi}] failed periodicity certification "
                    f"({e}); B is not a valid correlation support") from e
            periods = tuple(c.period for c in dec.components) or (1,)
            period = 1
            for p in periods:
                period = lcm(period, p)
            coeffs = [Fraction(0)] * (bhi + 1)
            for rr in range(blo, bhi + 1):
                coeffs[rr] = f.coeffs[rr] if rr <= n else Fraction(0)
            blocks.append(StructuredBlock(
                interval=(blo, bhi),
                poly=CosinePolynomial(coeffs),
                period=period,
                component_periods=periods,
            ))
        else:
            S.update(range(lo, hi + 1))
    S = frozenset(v for v in S if v <= n)
    err_coeffs = [f.coeffs[r] if r in S else Fraction(0) for r in range(n + 1)]
    E = CosinePolynomial(err_coeffs)
    M = R.max_abs
    form = StructuredForm(
        source=f,
        blocks=blocks,
        error_term=E,
        exceptional_set=S,
        error_sup_bound=len(S) * M,
        heuristic_threshold=heuristic,
    )
    assert form.verify_exact(), "reassembly is not exact"
    K = len(Bset)
    if not heuristic and K >= 1:
        cardR = R.cardinality
        assert len(S) <= 1 + K + 2 * d * K + K * (cardR ** d + 3 * d), \
            "exceptional-set bound violated"
        assert len(S) <= 8 * K * (cardR ** d + d), \
            "simplified exceptional-set bound violated"
    return form


@dataclass(frozen=True)
class RationalFunctionTerm:
    """Q_j(theta) * (e^{i N_j theta} - e^{i M_j theta}) / (1 - e^{i (p_j+1) theta}).

    Expansion convention (fixed by the round-trip test): the quotient is the
    finite geometric sum_{m} Q_j shifted by N_j + m (p_j + 1) for
    0 <= m < (M_j - N_j)/(p_j + 1), and the reproduced block is its
    restriction to the block interval.  The represented function is the
    positive-frequency half; the cosine block is term + conjugate."""

    Q: ExponentialPolynomial      # support [0, p_j], one period of fhat values
    N: int
    M: int
    p: int
    interval: tuple[int, int]
    partial_period: bool


@dataclass(frozen=True)
class RationalFunctionForm:
    terms: tuple

    def expand_term(self, t: RationalFunctionTerm) -> ExponentialPolynomial:
        out = ExponentialPolynomial.zero()
        step = t.p + 1
        for m in range((t.M - t.N) // step):
            out = out + t.Q.shift(t.N + m * step)
        return out

    def block_coefficients(self, t: RationalFunctionTerm) -> dict[int, Fraction]:
        """Expansion restricted to the block interval (the round trip)."""
        full = self.expand_term(t)
        lo, hi = t.interval
        return {r: full.coefficient(r) for r in range(lo, hi + 1)}


def to_rational_function_form(s: StructuredForm) -> RationalFunctionForm:
    """Render each certified block as a geometric-series term.

    Blocks shorter than one period are emitted with ``partial_period``."""
    terms = []
    for b in s.blocks:
        lo, hi = b.interval
        period = b.period
        length = hi - lo + 1
        fe = b.poly.to_exponential()
        qcoeffs = {j: fe.coefficient(lo + j) for j in range(min(period, length))}
        Q = ExponentialPolynomial(qcoeffs)
        n_copies = -(-length // period)  # ceil: cover the interval fully
        terms.append(RationalFunctionTerm(
            Q=Q, N=lo, M=lo + n_copies * period, p=period - 1,
            interval=(lo, hi), partial_period=(length < period),
        ))
    form = RationalFunctionForm(terms=tuple(terms))
    for t, b in zip(form.terms, s.blocks):
        got = form.block_coefficients(t)
        fe = b.poly.to_exponential()
        for r in range(t.interval[0], t.interval[1] + 1):
            if got[r] != fe.coefficient(r):
                raise ValueError(f"round-trip failure at r = {r}")
    return form


@dataclass(frozen=True)
class SumsOfDBound:
    applicable: bool
    value: Optional[float]       # sign-change lower bound, rounded down
    log2_Z: Optional[float]


def sums_of_d_bound(l: int, M, P: int, E_inf, f0) -> SumsOfDBound:
    """Lemma-5.2-style bound: log2(Z) / (240 P (20 l M + pi |E|_inf)) - 1
    with Z = (|f(0)| - |E|_inf)/M; inapplicable when Z <= 0.

    All inputs exact (Fractions); evaluated as an interval and rounded
    down, so asserting measured >= value never benefits from rounding.
    """
    M = Fraction(M)
    E_inf = Fraction(E_inf)
    f0 = abs(Fraction(f0))
    if M <= 0 or P < 1 or l < 1:
        raise ValueError("need M > 0, P >= 1, l >= 1")
    Z = (f0 - E_inf) / M
    if Z <= 0:
        return SumsOfDBound(applicable=False, value=None, log2_Z=None)
    with iv_prec():
        log2z = enclosure.log2_iv(enclosure.from_fraction(Z))
        denom = 240 * P * (20 * l * enclosure.from_fraction(M)
                           + iv.pi * enclosure.from_fraction(E_inf))
        val = log2z / denom - 1
        return SumsOfDBound(applicable=True, value=enclosure.lower(val),
                            log2_Z=enclosure.lower(log2z))


class HypothesisViolation(ValueError):
    pass


@dataclass(frozen=True)
class StructuredZeroBound:
    applicable: bool
    value: Optional[float]          # zero-count lower bound, rounded down
    block_averages: tuple           # A_i = (2/p_i) sum of one period of fhat_i
    operative_Z: Optional[Fraction]
    paper_Y: Fraction
    used_paper_y: bool


def structured_zero_bound(s: StructuredForm, M, P: int, K,
                          grid_points: int = 100_000,
                          use_paper_y: bool = False) -> StructuredZeroBound:
    """Zero bound for a structured form: (2^14 P^3 M l + 2^10 K P)^{-1}
    log2(Z) - P^2 - 1, with the A_i block averages reported.

    Hypotheses checked: half-integer block coefficients (2 fhat_i(r) in Z),
    |fhat_i(r)| <= M, block periods <= P, and |E|_inf <= K (certified via
    sum |C_r| when possible, else grid-verified).  The operative
    Z = (|f(0)| - (K + 8 P^2 M l)) / M comes from the proof's error budget
    |Etilde|_inf <= K + 8 P^2 M l; the stated Y = |f(0)| - 8 P^2 l + K/M is
    exposed behind ``use_paper_y`` (see package docs for the discrepancy).
    """
    M = Fraction(M)
    K = Fraction(K)
    if M <= 0 or P < 1:
        raise ValueError("need M > 0, P >= 1")
    l = len(s.blocks)
    if l < 1:
        raise HypothesisViolation("no blocks: structured bound needs l >= 1")
    averages = []
    for b in s.blocks:
        if b.period > P:
            raise HypothesisViolation(
                f"block {b.interval} period {b.period} exceeds P = {P}")
        fe_half = [b.coefficient(r) / 2 for r in
                   range(b.interval[0], b.interval[1] + 1)]
        for v in fe_half:
            if (2 * v).denominator != 1:
                raise HypothesisViolation(
                    f"block {b.interval}: 2*fhat = {2 * v} not an integer")
            if abs(v) > M:
                raise HypothesisViolation(
                    f"block {b.interval}: |fhat| = {abs(v)} exceeds M = {M}")
        p_i = b.period
        a_i = Fraction(2, p_i) * sum(fe_half[:p_i], Fraction(0))
        averages.append(a_i)
    # |E|_inf <= K: certified when sum|C_r| <= K, otherwise grid check
    e_l1 = s.error_term.l1_coefficients()
    if e_l1 > K:
        gv = eval_grid(s.error_term, grid_points)
        if float(np.abs(gv.values).max()) - gv.error_bound > float(K):
            raise HypothesisViolation(
                f"|E|_inf exceeds K = {K} on the verification grid")
    f0 = abs(s.source.value_at_zero())
    paper_y = f0 - 8 * P * P * l + K / M
    z_op = (f0 - (K + 8 * P * P * M * l)) / M
    zq = paper_y if use_paper_y else z_op
    if zq <= 0:
        return StructuredZeroBound(False, None, tuple(averages),
                                   z_op if z_op > 0 else None, paper_y,
                                   use_paper_y)
    with iv_prec():
        log2z = enclosure.log2_iv(enclosure.from_fraction(zq))
        denom = enclosure.from_fraction(
            Fraction(2 ** 14) * P ** 3 * M * l + Fraction(2 ** 10) * K * P)
        val = log2z / denom - P * P - 1
        return StructuredZeroBound(True, enclosure.lower(val), tuple(averages),
                                   z_op, paper_y, use_paper_y)


def assemble_structured_instance(blocks: Sequence[tuple[int, Sequence[Fraction]]],
                                 error_coeffs: Sequence[Fraction] = (),
                                 ) -> tuple[CosinePolynomial, StructuredForm]:
    """Test helper: build f = sum of periodic blocks + E directly.

    ``blocks`` entries are (start_index, pattern values repeated over the
    block length); block data is given as explicit coefficient runs:
    (start, [c_0, c_1, ...]) placing c_j at start + j.  Intervals must be
    disjoint and disjoint from the support of error_coeffs.
    """
    n = 0
    for start, vals in blocks:
        n = max(n, start + len(vals) - 1)
    n = max(n, len(error_coeffs) - 1)
    coeffs = [Fraction(0)] * (n + 1)
    sblocks = []
    for start, vals in blocks:
        vals = [Fraction(v) for v in vals]
        if start < 1:
            raise ValueError("blocks must start at index >= 1")
        for j, v in enumerate(vals):
            if coeffs[start + j] != 0:
                raise ValueError("overlapping blocks")
            coeffs[start + j] = v
        bpoly = [Fraction(0)] * (start + len(vals))
        for j, v in enumerate(vals):
            bpoly[start + j] = v
        # certify the run's exact period
        period = _exact_period(vals)
        sblocks.append(StructuredBlock(
            interval=(start, start + len(vals) - 1),
            poly=CosinePolynomial(bpoly),
            period=period,
            component_periods=(period,),
        ))
    err = [Fraction(v) for v in error_coeffs]
    S = set()
    for r, v in enumerate(err):
        if v != 0:
            if r <= n and coeffs[r] != 0:
                raise ValueError("error support overlaps a block")
            coeffs[r] += v
            S.add(r)
    f = CosinePolynomial(coeffs)
    epoly = CosinePolynomial(err or [0])
    R = f.coefficient_set(include_zero=True)
    form = StructuredForm(
        source=f, blocks=sblocks, error_term=epoly,
        exceptional_set=frozenset(S),
        error_sup_bound=len(S) * R.max_abs,
    )
    assert form.verify_exact()
    return f, form


def _exact_period(vals: Sequence[Fraction]) -> int:
    n = len(vals)
    for p in range(1, n + 1):
        if all(vals[i] == vals[i % p] for i in range(n)):
            return p
    return n
