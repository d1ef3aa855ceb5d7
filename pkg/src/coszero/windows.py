"""Exact linear algebra on d-windows of rational coefficient sequences.

The d-windows of x = (x(0), ..., x(N-1)) are the N - d + 1 contiguous
slices (x(r), ..., x(r+d-1)).  Rank and kernel are computed exactly:
fraction-free (Bareiss) elimination over scaled integers for the pivoting,
then rational back-substitution for the reduced echelon form.  Kernel
vectors are normalized to coprime integers with positive leading entry,
which pins the deterministic tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from gmpy2 import mpz

from . import qpoly


def windows(x: Sequence[Fraction], d: int) -> list[tuple[Fraction, ...]]:
    """All d-windows of x, in order of their starting offset."""
    x = [Fraction(v) for v in x]
    if not 1 <= d <= len(x):
        raise ValueError(f"window length {d} outside 1..{len(x)}")
    return [tuple(x[r:r + d]) for r in range(len(x) - d + 1)]


def _bareiss_echelon(rows: list[list]) -> tuple[list[list], list[int], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon rows, pivot column indices, pivot row order).  Pivots
    are chosen lexicographically (first usable row per column).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    piv_cols: list[int] = []
    prev = mpz(1)
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        for i in range(r + 1, nrows):
            if m[i][c] == 0 and prev == 1:
                continue
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = mpz(0)
        prev = m[r][c]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], piv_cols, list(range(r))


def _rref(rows: list[list[Fraction]]) -> tuple[int, list[list[Fraction]], list[int]]:
    """Exact RREF via Bareiss echelon + rational back-substitution."""
    if not rows:
        return 0, [], []
    den = 1
    for row in rows:
        for v in row:
            den = lcm(den, Fraction(v).denominator)
    int_rows = [[mpz(Fraction(v).numerator * (den // Fraction(v).denominator))
                 for v in row] for row in rows]
    ech, piv_cols, _ = _bareiss_echelon(int_rows)
    rank = len(piv_cols)
    rr = [[Fraction(int(v)) for v in row] for row in ech]
    for i in range(rank - 1, -1, -1):
        c = piv_cols[i]
        pv = rr[i][c]
        rr[i] = [v / pv for v in rr[i]]
        for k in range(i):
            f = rr[k][c]
            if f:
                rr[k] = [a - f * b for a, b in zip(rr[k], rr[i])]
    return rank, rr, piv_cols


def _normalize_kernel_vector(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale to coprime integers with positive first nonzero entry."""
    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    ints = [Fraction(c) * den for c in v]
    g = 0
    for c in ints:
        g = qpoly._gcd(mpz(g), mpz(abs(c.numerator)))
        if g == 1:
            break
    g = int(g) or 1
    ints = [c / g for c in ints]
    lead = next((c for c in ints if c != 0), Fraction(1))
    if lead < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def kernel_basis_of_matrix(rows: list[list[Fraction]], ncols: int
                           ) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {v : Mv = 0}, deterministically normalized,
    one vector per free column in increasing column order."""
    if not rows:
        return [_normalize_kernel_vector([Fraction(int(i == j)) for i in range(ncols)])
                for j in range(ncols)]
    rank, rr, piv_cols = _rref(rows)
    free_cols = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -rr[i][fc]
        basis.append(_normalize_kernel_vector(v))
    return basis


@dataclass(frozen=True)
class WindowSpace:
    """Span of the d-windows of a sequence: exact rank and kernel basis."""

    d: int
    source_length: int
    rank: int
    kernel_basis: tuple

    @property
    def kernel_dimension(self) -> int:
        return self.d - self.rank


def window_rank(x: Sequence[Fraction], d: int) -> WindowSpace:
    """Exact rank of the space of d-windows of x, with a kernel basis
    (orthogonal complement vectors) whenever the rank is deficient."""
    w = windows(x, d)
    rank, _, _ = _rref([list(row) for row in w])
    basis = kernel_basis_of_matrix([list(row) for row in w], d) if rank < d else []
    return WindowSpace(d=d, source_length=len(x), rank=rank,
                       kernel_basis=tuple(basis))


class FullRankError(ValueError):
    """The window space has full rank: no kernel vector exists."""


def front_supported_kernel(x: Sequence[Fraction], d: int) -> tuple[Fraction, ...]:
    """A nonzero v orthogonal to every d-window of x with v_j = 0 for
    j > t + 1 (1-indexed), t = rank of the d-window space.

    Built from the kernel of the (t+1)-window matrix: window spans nest, so
    that matrix has rank <= t < t + 1 and its kernel is nonzero; padding
    with zeros gives a vector orthogonal to all d-windows.
    """
    ws = window_rank(x, d)
    t = ws.rank
    if t >= d:
        raise FullRankError("window space has full rank; no kernel vector exists")
    w_small = windows(x, t + 1)
    basis = kernel_basis_of_matrix([list(r) for r in w_small], t + 1)
    assert basis, "rank monotonicity violated"
    v = list(basis[0]) + [Fraction(0)] * (d - (t + 1))
    for row in windows(x, d):
        assert sum(a * b for a, b in zip(v, row)) == 0
    return tuple(v)


@dataclass(frozen=True)
class CramerCheck:
    """Exact solution of Ax = b and the Cramer-style magnitude bound
    |x|_inf <= M^(n-1) n^(n/2) |b|_inf."""

    solution: tuple
    bound_ok: bool
    max_abs_solution: Fraction
    bound_squared: Fraction  # M^(2n-2) n^n |b|_inf^2, exact


class SingularMatrixError(ValueError):
    pass


def cramer_bound_check(A: Sequence[Sequence[int]], b: Sequence[Fraction]
                       ) -> CramerCheck:
    """Solve Ax = b exactly (A integer, invertible) and verify the bound.

    The comparison |x|_inf <= M^(n-1) n^(n/2) |b|_inf is checked exactly by
    squaring (n^(n/2) is irrational for odd n).
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("A must be square")
    if len(b) != n:
        raise ValueError("dimension mismatch")
    Ai = [[mpz(v) for v in row] for row in A]
    bf = [Fraction(v) for v in b]
    det = _det_bareiss(Ai)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    xs = []
    for i in range(n):
        Mi = [[(bf[r] if c == i else Fraction(int(Ai[r][c]))) for c in range(n)]
              for r in range(n)]
        xs.append(_det_fraction(Mi) / Fraction(int(det)))
    M = max(abs(int(v)) for row in Ai for v in row)
    b_inf = max((abs(v) for v in bf), default=Fraction(0))
    x_inf = max((abs(v) for v in xs), default=Fraction(0))
    bound_sq = Fraction(M) ** (2 * n - 2) * Fraction(n) ** n * b_inf ** 2
    return CramerCheck(solution=tuple(xs), bound_ok=x_inf ** 2 <= bound_sq,
                       max_abs_solution=x_inf, bound_squared=bound_sq)


def _det_bareiss(m: list[list]) -> "mpz":
    m = [list(r) for r in m]
    n = len(m)
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pr is None:
                return mpz(0)
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = mpz(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_fraction(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pr = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
            det = -det
        pv = m[k][k]
        det *= pv
        for i in range(k + 1, n):
            f = m[i][k] / pv
            if f:
                m[i] = [a - f * bb for a, bb in zip(m[i], m[k])]
    return det


def field_rank(rows: list[list], zero_test=None) -> int:
    """Rank of a matrix over an exact field (elements need +,-,*,/ and a
    zero test); used for cyclotomic-field window checks."""
    if not rows:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    is_zero = zero_test or (lambda v: (v.is_zero() if hasattr(v, "is_zero") else v == 0))
    rank = 0
    for c in range(ncols):
        pr = next((i for i in range(rank, nrows) if not is_zero(m[i][c])), None)
        if pr is None:
            continue
        m[rank], m[pr] = m[pr], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            if not is_zero(m[i][c]):
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank
