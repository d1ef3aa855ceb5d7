"""Batch experiment drivers, lemma-verification suites, and the extremal
example search.

Determinism: every trial derives its RNG from (seed, suite name, trial
index), so work-stealing parallelism never changes results.  CSV output
uses fixed, versioned columns; the runtime column is optional so that
byte-identical output under a fixed seed remains achievable.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import bounds, kernels, periodic, structure, windows, zeros
from .polycore import CoefficientSet, CosinePolynomial, ExponentialPolynomial
from .zeros import count_distinct_zeros, count_zeros_fast

CSV_SCHEMA = "coszero/1"


def trial_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{index}")


@dataclass
class VerifierResult:
    name: str
    passed: bool
    trials: int
    failures: list = dc_field(default_factory=list)
    details: str = ""
    runtime_s: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "schema": CSV_SCHEMA,
            "lemma": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "failures": [str(f) for f in self.failures[:20]],
            "details": self.details,
            "runtime_s": round(self.runtime_s, 3),
        }


def _timed(fn: Callable[[], VerifierResult]) -> VerifierResult:
    t0 = time.perf_counter()
    res = fn()
    res.runtime_s = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------- dirichlet

def verify_dirichlet(n_max: int = 2000, trials: int = 1000,
                     seed: int = 0) -> VerifierResult:
    """|int_J D_n| <= 10 for every n <= n_max and `trials` random J each.

    Fast numpy path with a rigorous a-priori error bound, plus interval
    cross-checks of a random sample against the closed-form enclosure.
    """
    def run():
        failures = []
        worst = 0.0
        for n in range(1, n_max + 1):
            rng = trial_rng(seed, "dirichlet", n)
            pts = np.array([sorted((rng.uniform(0, 2 * math.pi),
                                    rng.uniform(0, 2 * math.pi)))
                            for _ in range(trials)])
            vals, err = kernels.dirichlet_integral_batch(n, pts)
            m = float(np.abs(vals).max()) + err
            worst = max(worst, m)
            if m > 10.0:
                failures.append((n, m))
        # interval cross-check on a sample of (n, J) pairs
        rng = trial_rng(seed, "dirichlet-xcheck", 0)
        for _ in range(20):
            n = rng.randint(1, n_max)
            a = Fraction(rng.randint(0, 10 ** 6), 10 ** 6) * 2
            b = a + Fraction(rng.randint(0, 10 ** 6), 10 ** 6) * (2 - a)
            encl = kernels.integral_over_interval(kernels.dirichlet(n), a, b)
            if encl.abs_upper() > 10.0:
                failures.append((n, float(a), float(b), encl.abs_upper()))
        return VerifierResult("dirichlet", not failures, n_max * trials + 20,
                              failures, f"max |int| + err = {worst:.6f}")
    return _timed(run)


# ------------------------------------------------------------------ killing

def _random_rational_set(rng: random.Random, size: int = 3) -> list[Fraction]:
    out = set()
    while len(out) < size:
        out.add(Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
    return sorted(out)


def verify_killing(k_max: int = 6, trials: int = 200, seed: int = 0) -> VerifierResult:
    """S_k annihilates periodic windows: exact zero coefficients on
    [N + deg S_k, M] for random period-<=k patterns over 3-element sets."""
    def run():
        failures = []
        for i in range(trials):
            rng = trial_rng(seed, "killing", i)
            k = rng.randint(1, k_max)
            p = rng.randint(1, k)
            vals = _random_rational_set(rng)
            pattern = [rng.choice(vals) for _ in range(p)]
            d = k * (k + 1) // 2
            N, M = 0, d + p + rng.randint(10, 40)
            f = ExponentialPolynomial(
                {r: pattern[r % p] for r in range(N, M + 1)})
            rep = kernels.killing_check(f, k, N, M)
            if not rep.verified:
                failures.append((i, k, p, rep.failing_index))
        return VerifierResult("killing", not failures, trials, failures)
    return _timed(run)


# ------------------------------------------------------------ express-roots

def verify_express_roots(trials: int = 200, seed: int = 0) -> VerifierResult:
    """Exact reconstruction of random periodic sequences (period <= 6) from
    a matching kernel vector, on the middle range."""
    def run():
        failures = []
        for i in range(trials):
            rng = trial_rng(seed, "express", i)
            p = rng.randint(1, 6)
            vals = _random_rational_set(rng)
            pattern = [rng.choice(vals) for _ in range(p)]
            n = rng.randint(p + 8, p + 28)
            x = [pattern[r % p] for r in range(n)]
            # kernel vector for the order-p recurrence x(r+p) = x(r)
            v = [Fraction(0)] * (p + 1)
            v[0], v[p] = Fraction(-1), Fraction(1)
            try:
                expr = periodic.express_as_roots(x, v, allow_small_N=True)
                lo, hi = expr.valid_range
                for r in range(lo, hi + 1):
                    if expr.value_at(r) != x[r]:
                        failures.append((i, p, r))
                        break
            except (periodic.ReconstructionError, ValueError) as e:
                failures.append((i, p, str(e)))
        return VerifierResult("express-roots", not failures, trials, failures)
    return _timed(run)


# ------------------------------------------------------------------- diffop

def verify_diffop(q_max: int = 12, p_max: int = 12, d_max: int = 6) -> VerifierResult:
    """Kernel of Delta_{rho,p} on C_d[X] matches the rho^p = 1 dichotomy for
    all q <= q_max, p <= p_max, d <= d_max, over exact cyclotomic fields."""
    from .cyclotomic import CyclotomicField
    from math import gcd
    def run():
        failures = []
        n_checked = 0
        for q in range(1, q_max + 1):
            field = CyclotomicField(q)
            coprime = [a for a in range(1, q + 1) if gcd(a, q) == 1]
            exponents = {coprime[0], coprime[-1]}  # two primitive reps per q
            for a in exponents:
                rho = field.zeta_power(a % q)
                for p in range(1, p_max + 1):
                    unity = (a * p) % q == 0
                    for d in range(0, d_max + 1):
                        ker = periodic.kernel_of_difference(rho, p, d)
                        n_checked += 1
                        expected = 1 if unity else 0
                        if ker.dimension != expected or not ker.matches_prediction:
                            failures.append((q, a, p, d, ker.dimension, expected))
        return VerifierResult("diffop-kernel", not failures, n_checked, failures)
    return _timed(run)


# ------------------------------------------------------------------- cramer

def verify_cramer(n_max: int = 8, trials: int = 500, seed: int = 0) -> VerifierResult:
    """|x|_inf <= M^(n-1) n^(n/2) |b|_inf on random invertible +-1 systems."""
    def run():
        failures = []
        done = 0
        i = 0
        while done < trials:
            rng = trial_rng(seed, "cramer", i)
            i += 1
            n = rng.randint(1, n_max)
            A = [[rng.choice([-1, 1]) for _ in range(n)] for _ in range(n)]
            b = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
            try:
                chk = windows.cramer_bound_check(A, b)
            except windows.SingularMatrixError:
                continue
            done += 1
            if not chk.bound_ok:
                failures.append((i, n, A, b))
        return VerifierResult("cramer", not failures, trials, failures)
    return _timed(run)


# ---------------------------------------------------------------------- phi

def verify_phi(n_max: int = 10 ** 6) -> VerifierResult:
    def run():
        rep = periodic.euler_phi_check(n_max)
        return VerifierResult(
            "phi", rep.verified, n_max - 3, list(rep.failures),
            f"min ratio {rep.min_ratio:.4f} at n = {rep.argmin}")
    return _timed(run)


# ---------------------------------------------------------- window algebra

def verify_windows(trials: int = 100, seed: int = 0) -> VerifierResult:
    """Rank monotonicity in d, kernel orthogonality, and the root-of-unity
    linear-independence surrogate on small stacked matrices."""
    from .cyclotomic import CyclotomicField
    def run():
        failures = []
        for i in range(trials):
            rng = trial_rng(seed, "windows", i)
            vals = _random_rational_set(rng, size=rng.randint(2, 3))
            n = rng.randint(8, 20)
            x = [rng.choice(vals) for _ in range(n)]
            prev_rank = 0
            for d in range(1, min(6, n) + 1):
                ws = windows.window_rank(x, d)
                if ws.rank < prev_rank:
                    failures.append((i, "monotonicity", d))
                prev_rank = ws.rank
                for v in ws.kernel_basis:
                    for w in windows.windows(x, d):
                        if sum(a * b for a, b in zip(v, w)) != 0:
                            failures.append((i, "orthogonality", d))
                            break
        # linear independence of (rho_i^n n^j): stacked over Q(zeta_12)
        field = CyclotomicField(12)
        roots = [field.zeta_power(k) for k in (0, 1, 4, 6)]  # orders 1,12,3,2
        m_i = [2, 1, 1, 1]
        N = sum(m_i) + 2
        rows = []
        for rho, m in zip(roots, m_i):
            for j in range(m):
                rows.append([rho ** nn * field.rational(nn ** j)
                             for nn in range(1, N + 1)])
        rank = windows.field_rank(rows)
        if rank != len(rows):
            failures.append(("lin-ind", rank, len(rows)))
        return VerifierResult("windows", not failures, trials + 1, failures)
    return _timed(run)


# ------------------------------------------------- zero-count oracle agreement

def _random_simple_cosine(rng: random.Random, deg_max: int) -> Optional[CosinePolynomial]:
    n = rng.randint(3, deg_max)
    coeffs = [Fraction(rng.choice([-2, -1, -1, 0, 1, 1, 2]))
              for _ in range(n + 1)]
    if all(c == 0 for c in coeffs):
        return None
    f = CosinePolynomial(coeffs)
    if f.is_zero():
        return None
    return f


def oracle_equivalence_trial(args: tuple) -> Optional[tuple]:
    seed, i, deg_max = args
    rng = trial_rng(seed, "oracle", i)
    f = _random_simple_cosine(rng, deg_max)
    if f is None:
        return None
    cert = count_distinct_zeros(f, want_sign_changes=True)
    # restrict to the all-simple, no-endpoint-zero case where grid counting
    # must agree exactly
    if cert.zero_at_0 or cert.zero_at_pi:
        return None
    if cert.sign_change_count * 2 != cert.distinct_zero_count:
        return None  # tangential zeros present: fast path may undercount
    m = 1 << max(12, (8 * f.degree).bit_length())
    fast = count_zeros_fast(f, m)
    if fast.distinct_zero_count != cert.distinct_zero_count:
        return (i, cert.distinct_zero_count, fast.distinct_zero_count)
    return None


def verify_oracle_equivalence(trials: int = 100, deg_max: int = 40,
                              seed: int = 0, parallel: bool = True) -> VerifierResult:
    """Sturm count equals the refined dense-grid sign-change count on random
    polynomials with simple interior zeros."""
    def run():
        failures = []
        used = 0
        i = 0
        args = []
        while used < trials and i < trials * 8:
            args.append((seed, i, deg_max))
            i += 1
            used += 1
        results = _map_maybe_parallel(oracle_equivalence_trial, args, parallel)
        failures = [r for r in results if r is not None]
        return VerifierResult("oracle-equivalence", not failures, len(args), failures)
    return _timed(run)


# ------------------------------------------------------------- MPS inequality

def mps_trial(args: tuple) -> Optional[tuple]:
    seed, i, universe = args
    rng = trial_rng(seed, "mps", i)
    size = rng.randint(2, universe // 2)
    A = sorted(rng.sample(range(0, universe + 1), size))
    f = CosinePolynomial.from_frequency_set(A)
    bound = bounds.mps_bound(f)
    l1 = zeros.l1_norm_exact(f)
    from . import enclosure
    l1_lower = enclosure.lower(l1)
    if not l1_lower >= float(bound.value_exact):
        return (i, size, l1_lower, float(bound.value_exact))
    return None


def verify_mps(trials: int = 100, universe: int = 200, seed: int = 0,
               parallel: bool = True) -> VerifierResult:
    """Exact L1 (piecewise closed form, directed rounding) >= (1/60) sum |C_r|/r."""
    def run():
        args = [(seed, i, universe) for i in range(trials)]
        results = _map_maybe_parallel(mps_trial, args, parallel)
        failures = [r for r in results if r is not None]
        return VerifierResult("mps", not failures, trials, failures)
    return _timed(run)


# ------------------------------------------------------- companion positivity

def companion_trial(args: tuple) -> Optional[tuple]:
    seed, i, deg_max = args
    rng = trial_rng(seed, "companion", i)
    f = _random_simple_cosine(rng, deg_max)
    if f is None:
        return None
    try:
        P = zeros.companion(f)
    except zeros.IdenticallyZeroError:
        return None
    mn, tol = zeros.companion_product_min(f, P, grid_points=100_000)
    scale = float(f.l1_coefficients()) * zeros._exp_l1(P.exponential)
    if mn < -(tol + 1e-9 * max(scale, 1.0)):
        return (i, f.degree, mn, tol)
    return None


def verify_companion(trials: int = 100, deg_max: int = 30, seed: int = 0,
                     parallel: bool = True) -> VerifierResult:
    """min over a 1e5 grid of P*f >= -(expansion error + 1e-9 * scale)."""
    def run():
        args = [(seed, i, deg_max) for i in range(trials)]
        results = _map_maybe_parallel(companion_trial, args, parallel)
        failures = [r for r in results if r is not None]
        return VerifierResult("companion", not failures, trials, failures)
    return _timed(run)


# --------------------------------------------------------- structured case

def structured_trial(args: tuple) -> Optional[tuple]:
    seed, i = args
    rng = trial_rng(seed, "structured", i)
    P_cap = rng.randint(1, 3)
    l = rng.randint(1, 3)
    blocks = []
    start = 1
    M_half = 1
    for _ in range(l):
        p = rng.randint(1, P_cap)
        pattern = [Fraction(rng.randint(-2, 2) * 2) for _ in range(p)]
        if all(v == 0 for v in pattern):
            pattern[0] = Fraction(2)
        reps = rng.randint(6, 30)
        run_vals = (pattern * reps)[: p * reps]
        blocks.append((start, run_vals))
        M_half = max(M_half, max(abs(v) // 2 + (1 if abs(v) % 2 else 0) or 1
                                 for v in pattern))
        start += len(run_vals) + rng.randint(1, 6)
    err = [Fraction(rng.randint(-1, 1))]
    f, form = structure.assemble_structured_instance(blocks, err)
    M = max(max(abs(v) for v in b[1]) for b in blocks) / 2
    M = max(M, Fraction(1))
    K = max(form.error_term.l1_coefficients(), Fraction(1))
    try:
        zb = structure.structured_zero_bound(form, M, P_cap, K)
    except structure.HypothesisViolation as e:
        return (i, "hypothesis", str(e))
    cert = count_distinct_zeros(f, want_sign_changes=False)
    if zb.applicable and zb.value is not None:
        if cert.distinct_zero_count < zb.value:
            return (i, "violated", cert.distinct_zero_count, zb.value)
    # never-falsified floor: measured count must dominate the bound value
    if zb.value is not None and cert.distinct_zero_count < zb.value:
        return (i, "floor", cert.distinct_zero_count, zb.value)
    return None


def verify_structured(trials: int = 50, seed: int = 0,
                      parallel: bool = True) -> VerifierResult:
    """Synthetic structured forms: measured zeros >= structured_zero_bound
    (vacuously at desk scale; the assertion is still mandatory)."""
    def run():
        args = [(seed, i) for i in range(trials)]
        results = _map_maybe_parallel(structured_trial, args, parallel)
        failures = [r for r in results if r is not None]
        return VerifierResult("structured", not failures, trials, failures)
    return _timed(run)


# ---------------------------------------------------------- theorem-1.2 floor

def theorem2_floor_trial(args: tuple) -> Optional[tuple]:
    seed, i, max_size, grid = args
    rng = trial_rng(seed, "thm2", i)
    size = rng.randint(16, max_size)
    universe = max(4 * size, 64)
    A = sorted(rng.sample(range(0, universe), size))
    f = CosinePolynomial.from_frequency_set(A)
    m = grid
    while m < 4 * f.degree:
        m *= 2
    fast = count_zeros_fast(f, m)
    R = CoefficientSet([0, 1])
    bt = bounds.theorem2_bound(R, f0=len(A))
    if not bt.satisfied_by(fast.distinct_zero_count):
        return (i, size, fast.distinct_zero_count, bt.value)
    return None


def verify_theorem2_floor(trials: int = 100, max_size: int = 10 ** 5,
                          grid: int = 1 << 21, seed: int = 0,
                          parallel: bool = True) -> VerifierResult:
    """Every random f_A satisfies zeros >= theorem2_bound (bound ~0 at desk
    scale; the floor must never be falsified)."""
    def run():
        args = [(seed, i, max_size, grid) for i in range(trials)]
        results = _map_maybe_parallel(theorem2_floor_trial, args, parallel)
        failures = [r for r in results if r is not None]
        return VerifierResult("theorem2-floor", not failures, trials, failures)
    return _timed(run)


# -------------------------------------------------------------- verify_all

VERIFIERS: dict[str, Callable[..., VerifierResult]] = {
    "dirichlet": verify_dirichlet,
    "killing": verify_killing,
    "express": verify_express_roots,
    "diffop": verify_diffop,
    "cramer": verify_cramer,
    "phi": verify_phi,
    "windows": verify_windows,
    "oracle": verify_oracle_equivalence,
    "mps": verify_mps,
    "companion": verify_companion,
    "structured": verify_structured,
    "thm2": verify_theorem2_floor,
}

QUICK_OVERRIDES = {
    "dirichlet": dict(n_max=200, trials=100),
    "killing": dict(trials=40),
    "express": dict(trials=40),
    "cramer": dict(trials=100),
    "phi": dict(n_max=10 ** 5),
    "oracle": dict(trials=20),
    "mps": dict(trials=10, universe=80),
    "companion": dict(trials=20, deg_max=20),
    "structured": dict(trials=10),
    "thm2": dict(trials=10, max_size=2000, grid=1 << 16),
    "windows": dict(trials=30),
}


def verify_all(seed: int = 0, scale: str = "quick",
               only: Optional[Sequence[str]] = None) -> list[VerifierResult]:
    """Run every lemma verifier; ``scale`` is "quick" or "full" (the full
    acceptance-criteria sizes)."""
    if scale not in ("quick", "full"):
        raise ValueError("scale must be 'quick' or 'full'")
    names = list(only) if only else list(VERIFIERS)
    out = []
    for name in names:
        if name not in VERIFIERS:
            raise ValueError(f"unknown lemma verifier '{name}' "
                             f"(choose from {sorted(VERIFIERS)})")
        kwargs = {}
        if scale == "quick":
            kwargs.update(QUICK_OVERRIDES.get(name, {}))
        fn = VERIFIERS[name]
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            kwargs["seed"] = seed
        out.append(fn(**kwargs))
    return out


def _map_maybe_parallel(fn: Callable, args: list, parallel: bool,
                        max_workers: Optional[int] = None) -> list:
    if not parallel or len(args) <= 2:
        return [fn(a) for a in args]
    import os
    workers = max_workers or min(os.cpu_count() or 4, 8)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (workers * 4))))


# -------------------------------------------------------------------- sweep

@dataclass
class ExperimentRow:
    N: int
    seed: int
    distinct_zeros: int
    theorem2_bound: float
    mps_bound: float
    method: str               # "exact" | "fast"
    runtime_ms: Optional[float] = None

    @staticmethod
    def csv_columns(include_runtime: bool = True) -> list[str]:
        cols = ["schema", "N", "seed", "distinct_zeros", "theorem2_bound",
                "mps_bound", "method"]
        if include_runtime:
            cols.append("runtime_ms")
        return cols

    def csv_record(self, include_runtime: bool = True) -> list:
        rec = [CSV_SCHEMA, self.N, self.seed, self.distinct_zeros,
               f"{self.theorem2_bound:.6g}", f"{self.mps_bound:.9g}", self.method]
        if include_runtime:
            rec.append("" if self.runtime_ms is None else f"{self.runtime_ms:.1f}")
        return rec


FAMILIES = ("random-subset", "interval", "arithmetic-progression")


def _family_set(family: str, rng: random.Random, N: int) -> list[int]:
    if family == "interval":
        return list(range(N))
    if family == "arithmetic-progression":
        step = rng.randint(1, 4)
        start = rng.randint(0, 3)
        return [start + step * i for i in range(N)]
    if family == "random-subset":
        universe = max(4 * N, 8)
        return sorted(rng.sample(range(universe), N))
    raise ValueError(f"unknown family '{family}' (choose from {FAMILIES})")


def sweep(family: str, n_range: Iterable[int], trials: int, seed: int,
          exact_degree_cap: int = 256, grid: int = 1 << 18,
          include_runtime: bool = True) -> list[ExperimentRow]:
    """Chart zeros against the bound floors across a family of sets.

    Rows are deterministic given the seed (sorted by N, then trial); each
    row asserts zeros >= theorem2_bound, a violation being an
    implementation bug by definition.
    """
    rows = []
    for N in sorted(set(int(n) for n in n_range)):
        if N < 1:
            continue
        for t in range(trials):
            rng = trial_rng(seed, f"sweep:{family}:{N}", t)
            A = _family_set(family, rng, N)
            f = CosinePolynomial.from_frequency_set(A)
            t0 = time.perf_counter()
            if f.degree <= exact_degree_cap:
                cert = count_distinct_zeros(f, want_sign_changes=False)
                method = "exact"
            else:
                m = grid
                while m < 4 * f.degree:
                    m *= 2
                cert = count_zeros_fast(f, m)
                method = "fast"
            dt = (time.perf_counter() - t0) * 1000
            bt = bounds.theorem2_bound(CoefficientSet([0, 1]), f0=len(A))
            mb = bounds.mps_bound(f, exact_limit=2000)
            row = ExperimentRow(
                N=len(A), seed=seed, distinct_zeros=cert.distinct_zero_count,
                theorem2_bound=bt.value, mps_bound=float(mb.value_lower),
                method=method, runtime_ms=dt if include_runtime else None)
            if not bt.satisfied_by(cert.distinct_zero_count):
                raise AssertionError(
                    f"theorem2 floor falsified at N={N}, trial {t}: "
                    f"zeros={cert.distinct_zero_count} < bound={bt.value} "
                    "(implementation bug)")
            rows.append(row)
    return rows


def rows_to_csv(rows: Sequence[ExperimentRow], include_runtime: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")  # RFC 4180
    w.writerow(ExperimentRow.csv_columns(include_runtime))
    for r in rows:
        w.writerow(r.csv_record(include_runtime))
    return buf.getvalue()


def rows_to_plot_data(rows: Sequence[ExperimentRow]) -> str:
    """Two-column (N, zeros) gnuplot-ready data."""
    lines = [f"{r.N} {r.distinct_zeros}" for r in rows]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- search

@dataclass
class SearchState:
    current: tuple
    current_zeros: int
    best: tuple
    best_zeros: int
    iteration: int
    seed: int
    strategy: str
    exact_recount: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "schema": CSV_SCHEMA,
            "strategy": self.strategy,
            "seed": self.seed,
            "iterations": self.iteration,
            "best_zeros": self.best_zeros,
            "best_set": list(self.best),
            "exact_recount": self.exact_recount,
        }


def _search_objective(A: Sequence[int], grid_factor: int = 8) -> int:
    f = CosinePolynomial.from_frequency_set(A)
    m = 1 << max(8, (grid_factor * max(f.degree, 1)).bit_length())
    return count_zeros_fast(f, m).distinct_zero_count


def search_min_zeros(N: int, iterations: int, seed: int = 0,
                     strategy: str = "flip", universe: Optional[int] = None,
                     exact_recount_cap: int = 2000) -> SearchState:
    """Local search for A (|A| = N) minimizing the fast-path zero count.

    Strategies: "flip" (hill climb, accept non-worsening single swaps),
    "swap" (steepest descent over a sampled swap neighborhood), "anneal"
    (geometric schedule T_k = 2.0 * 0.995^k, accept worse moves with
    probability exp(-delta/T)).  The final best set gets an exact Sturm
    recount when its degree is within ``exact_recount_cap``.
    """
    if N < 2:
        raise ValueError("N >= 2 required")
    if strategy not in ("flip", "swap", "anneal"):
        raise ValueError("strategy must be flip | swap | anneal")
    rng = trial_rng(seed, f"search:{strategy}", 0)
    m_univ = universe or max(3 * N, 16)
    current = sorted(rng.sample(range(m_univ), N))
    cur_z = _search_objective(current)
    best, best_z = list(current), cur_z
    T = 2.0
    for it in range(1, iterations + 1):
        if strategy == "swap":
            cand_best, cand_z = None, None
            for _ in range(8):
                cand = _swap_neighbor(rng, current, m_univ)
                z = _search_objective(cand)
                if cand_z is None or z < cand_z:
                    cand_best, cand_z = cand, z
            nxt, nxt_z = cand_best, cand_z
            accept = nxt_z <= cur_z
        else:
            nxt = _swap_neighbor(rng, current, m_univ)
            nxt_z = _search_objective(nxt)
            if strategy == "flip":
                accept = nxt_z <= cur_z
            else:  # anneal
                delta = nxt_z - cur_z
                accept = delta <= 0 or rng.random() < math.exp(-delta / max(T, 1e-9))
                T *= 0.995
        if accept:
            current, cur_z = nxt, nxt_z
        if cur_z < best_z:
            best, best_z = list(current), cur_z
    exact = None
    f_best = CosinePolynomial.from_frequency_set(best)
    if f_best.degree <= exact_recount_cap:
        exact = count_distinct_zeros(f_best, want_sign_changes=False).distinct_zero_count
    return SearchState(current=tuple(current), current_zeros=cur_z,
                       best=tuple(best), best_zeros=best_z,
                       iteration=iterations, seed=seed, strategy=strategy,
                       exact_recount=exact)


def _swap_neighbor(rng: random.Random, A: Sequence[int], universe: int) -> list[int]:
    A = list(A)
    out_idx = rng.randrange(len(A))
    complement = [v for v in range(universe) if v not in set(A)]
    if not complement:
        return A
    A[out_idx] = rng.choice(complement)
    return sorted(A)


def exhaustive_min_zeros(N: int, universe: int) -> tuple[int, tuple]:
    """Brute-force oracle: global minimum of the exact zero count over all
    A subset of [0, universe] with |A| = N."""
    from itertools import combinations
    best, best_set = None, None
    for A in combinations(range(universe + 1), N):
        z = count_distinct_zeros(
            CosinePolynomial.from_frequency_set(A),
            want_sign_changes=False).distinct_zero_count
        if best is None or z < best:
            best, best_set = z, A
    return best, best_set
