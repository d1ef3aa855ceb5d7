"""coszero command line: count-zeros, decompose, bound, verify, sweep, search.

Examples
--------
  coszero count-zeros --input f.json --exact --json
  coszero count-zeros --input f.json --fast --grid 2^21
  coszero decompose --input f.json --companion --D 2 --json out.json
  coszero bound --which mps --input f.json
  coszero bound --which thm2 --f0 1e30 --set "0,1"
  coszero verify --lemma dirichlet --n-max 2000 --trials 1000 --seed 7
  coszero sweep --family interval --n-range 4:64 --trials 2 --seed 1 --out rows.csv
  coszero search --N 20 --iterations 200 --seed 3 --strategy anneal

COSZERO_PRECISION sets the default working mantissa bits for enclosures.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, harness, kernels, structure, zeros
from .polycore import CoefficientSet, CosinePolynomial, ExponentialPolynomial


def _parse_grid(s: str) -> int:
    if "^" in s:
        base, exp = s.split("^")
        return int(base) ** int(exp)
    return int(s)


def _load_poly(path: str) -> CosinePolynomial:
    return CosinePolynomial.from_json_file(path)


def _cmd_count_zeros(args) -> int:
    f = _load_poly(args.input)
    if args.fast:
        m = _parse_grid(args.grid) if args.grid else 1 << max(10, (4 * f.degree).bit_length())
        cert = zeros.count_zeros_fast(f, m)
    else:
        cert = zeros.count_distinct_zeros(f, want_sign_changes=not args.no_sign_changes)
    payload = {
        "schema": "coszero/1",
        "distinct_zeros": cert.distinct_zero_count,
        "sign_changes": cert.sign_change_count,
        "method": cert.method,
        "lower_bound_only": cert.is_lower_bound,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        kind = "at least " if cert.is_lower_bound else ""
        print(f"distinct zeros in [0, 2pi): {kind}{cert.distinct_zero_count} "
              f"({cert.method})")
        if cert.sign_change_count is not None:
            print(f"sign changes in (0, pi): {cert.sign_change_count}")
    return 0


def _cmd_decompose(args) -> int:
    f = _load_poly(args.input)
    if args.Q:
        q_poly = _load_poly(args.Q).to_exponential()
        rep = structure.correlation_report(f, q_poly, args.D)
        d_eff = q_poly.degree + kernels.sk(args.D).degree
    else:
        comp = zeros.companion(f)
        rep = structure.correlation_report(f, comp.exponential, args.D)
        d_eff = rep.q_degree
    B = [r for r in rep.support if r >= 0]
    threshold = None if args.threshold in (None, "auto") else int(args.threshold)
    form = structure.reduce_to_structure(f, B, max(d_eff, 1),
                                         length_threshold=threshold)
    rf = structure.to_rational_function_form(form)
    payload = {
        "schema": "coszero/1",
        "support_size": rep.support_size,
        "blocks": [
            {"interval": list(b.interval), "period": b.period,
             "pattern": [str(v) for v in b.pattern()]}
            for b in form.blocks
        ],
        "exceptional_set_size": form.exceptional_set_size,
        "error_sup_bound": str(form.error_sup_bound),
        "rational_function_terms": [
            {"N": t.N, "M": t.M, "p": t.p, "partial_period": t.partial_period,
             "Q": {str(r): str(c) for r, c in sorted(t.Q.coeffs.items())}}
            for t in rf.terms
        ],
        "heuristic_threshold": form.heuristic_threshold,
    }
    text = json.dumps(payload, indent=2)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.json_out}")
    else:
        print(text)
    return 0


def _cmd_bound(args) -> int:
    if args.which == "mps":
        f = _load_poly(args.input)
        mb = bounds.mps_bound(f)
        rep = bounds.BoundReport(
            "mps", {"n_frequencies": mb.n_frequencies, "mode": mb.mode},
            float(mb.value_lower),
            notes="(1/60) sum |C_r|/r over sorted support")
    elif args.which == "thm2":
        R = CoefficientSet([Fraction(s) for s in args.set.split(",")])
        bt = bounds.theorem2_bound(R, f0=Fraction(args.f0))
        rep = bounds.BoundReport(
            "thm2", {"f0": args.f0, "R": args.set},
            bt.value, notes=bt.note or f"floor argument {bt.floor_arg}")
    elif args.which == "lemma42":
        R = CoefficientSet([Fraction(s) for s in args.set.split(",")])
        lb = bounds.lemma42_support_bound(args.k, R, Fraction(args.epsilon))
        rep = bounds.BoundReport(
            "lemma42", {"k": args.k, "R": args.set, "epsilon": args.epsilon},
            lb.support_loglog_bound,
            notes=f"deg(Q) <= {lb.degree_bound:.6g}")
    else:
        raise SystemExit(f"unknown bound '{args.which}'")
    print(json.dumps(rep.to_json_dict()))
    return 0


def _cmd_verify(args) -> int:
    only = None if args.lemma == "all" else [args.lemma]
    kwargs = {}
    results = harness.verify_all(seed=args.seed, scale=args.scale, only=only)
    # single-lemma runs honor explicit size flags
    if only and (args.n_max or args.trials or args.k_max):
        name = only[0]
        fn = harness.VERIFIERS[name]
        kw = {}
        argnames = fn.__code__.co_varnames[: fn.__code__.co_argcount]
        if args.n_max and "n_max" in argnames:
            kw["n_max"] = args.n_max
        if args.trials and "trials" in argnames:
            kw["trials"] = args.trials
        if args.k_max and "k_max" in argnames:
            kw["k_max"] = args.k_max
        if "seed" in argnames:
            kw["seed"] = args.seed
        results = [fn(**kw)]
    all_ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        all_ok &= res.passed
        line = (f"[{status}] {res.name:<18} trials={res.trials:<9} "
                f"t={res.runtime_s:.1f}s {res.details}")
        print(line)
        if not res.passed:
            for fail in res.failures[:5]:
                print(f"         counterexample: {fail}")
    if args.json:
        print(json.dumps([r.to_json_dict() for r in results]))
    return 0 if all_ok else 1


def _cmd_sweep(args) -> int:
    lo, hi = (int(v) for v in args.n_range.split(":"))
    rows = harness.sweep(args.family, range(lo, hi + 1), args.trials, args.seed,
                         include_runtime=not args.no_runtime)
    csv_text = harness.rows_to_csv(rows, include_runtime=not args.no_runtime)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(csv_text)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(csv_text)
    if args.plot_data:
        with open(args.plot_data, "w") as fh:
            fh.write(harness.rows_to_plot_data(rows))
        print(f"wrote plot data to {args.plot_data}")
    return 0


def _cmd_search(args) -> int:
    st = harness.search_min_zeros(args.N, args.iterations, seed=args.seed,
                                  strategy=args.strategy)
    print(json.dumps(st.to_json_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coszero", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count-zeros", help="count distinct zeros in [0, 2pi)")
    p.add_argument("--input", required=True, help="polynomial JSON file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="Sturm path (default)")
    g.add_argument("--fast", action="store_true", help="FFT grid lower bound")
    p.add_argument("--grid", help="grid size for --fast, e.g. 2^21")
    p.add_argument("--no-sign-changes", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_count_zeros)

    p = sub.add_parser("decompose", help="periodic-block structure of f")
    p.add_argument("--input", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--companion", action="store_true",
                   help="use the companion polynomial as P (default)")
    g.add_argument("--Q", help="JSON file with an explicit multiplier polynomial")
    p.add_argument("--D", type=int, default=1, help="S_D kernel index")
    p.add_argument("--threshold", default="auto",
                   help="gap length threshold (auto = |R|^d + 3d)")
    p.add_argument("--json", dest="json_out", help="write JSON here")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("bound", help="evaluate a bound formula")
    p.add_argument("--which", required=True, choices=["thm2", "mps", "lemma42"])
    p.add_argument("--input", help="polynomial JSON (mps)")
    p.add_argument("--f0", help="|f(0)| (thm2)")
    p.add_argument("--set", default="0,1", help="coefficient set, comma-separated")
    p.add_argument("--k", type=int, default=1, help="degree parameter (lemma42)")
    p.add_argument("--epsilon", default="1", help="correlation epsilon (lemma42)")
    p.set_defaults(fn=_cmd_bound)

    p = sub.add_parser("verify", help="run lemma verifiers")
    p.add_argument("--lemma", default="all",
                   choices=["all"] + sorted(harness.VERIFIERS))
    p.add_argument("--scale", default="quick", choices=["quick", "full"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-max", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("sweep", help="zeros vs bounds across a set family")
    p.add_argument("--family", required=True, choices=list(harness.FAMILIES))
    p.add_argument("--n-range", required=True, help="LO:HI inclusive")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--plot-data", help="two-column gnuplot data path")
    p.add_argument("--no-runtime", action="store_true",
                   help="omit runtime column (byte-reproducible output)")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("search", help="local search minimizing zero count")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", default="flip", choices=["flip", "swap", "anneal"])
    p.set_defaults(fn=_cmd_search)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
