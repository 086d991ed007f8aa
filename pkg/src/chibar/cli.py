"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 hard verification failure,
3 advisory deviations only.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import asymptotics, census, sampling, verify

log = logging.getLogger("chibar")

EXACT_MAX_N = 9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_orders(text: str) -> list[int]:
    """Orders from ``"7"``, ``"2,5,9"``, ``"10..13"``, ``"10..50:5"`` or
    ``"100..100000:log13"`` (13 log-spaced integers)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." not in part:
            out.append(int(part))
            continue
        span, _, step = part.partition(":")
        lo, hi = (int(x) for x in span.split(".."))
        if hi < lo:
            raise UsageError(f"empty range {part!r}")
        if step.startswith("log"):
            k = int(step[3:])
            vals = np.unique(np.rint(np.geomspace(lo, hi, k)).astype(int))
            out.extend(int(v) for v in vals)
        else:
            out.extend(range(lo, hi + 1, int(step) if step else 1))
    if not out or min(out) < 1:
        raise UsageError(f"orders must be positive integers: {text!r}")
    return out


def parse_probs(text: str) -> list[float]:
    ps = [float(x) for x in text.split(",") if x.strip()]
    if not ps or any(not 0.0 <= p <= 1.0 for p in ps):
        raise UsageError(f"probabilities must lie in [0, 1]: {text!r}")
    return ps


def _emit(text: str, out) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        census.write_atomic(out, text)


# --------------------------------------------------------------------------
# subcommands


def cmd_census(args) -> int:
    c = census.build_census(args.n, threads=args.threads, max_order=args.max_order)
    poly = census_polynomial(c)
    if args.out is None:
        sys.stdout.write(c.to_csv())
        sys.stdout.write(poly.to_json() + "\n")
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    census.write_atomic(out / f"census_n{args.n}.csv", c.to_csv())
    census.write_atomic(out / f"poly_n{args.n}.json", poly.to_json() + "\n")
    totals = c.chi_totals()
    print(f"n={args.n}: {c.total()} graphs; chromatic totals " + " ".join(f"{k}:{v}" for k, v in totals.items()))
    return 0


def census_polynomial(c: census.ChromaticCensus) -> census.ExpectationPolynomial:
    if c.n == 1:
        return census.ExpectationPolynomial(1, (1,))
    return census.census_to_polynomial(c)


def cmd_poly(args) -> int:
    if args.source == "census":
        c = census.build_census(args.n, threads=args.threads, max_order=args.max_order)
        poly = census_polynomial(c)
    else:
        poly = census.exact_polynomial(args.n)
    _emit(poly.to_json() + "\n", args.out)
    return 0


def _estimate(method: str, n: int, p: float, args) -> sampling.McEstimate:
    if method == "mc-ac":
        return sampling.mc_ac(n, p, args.s, args.seed, args.threads, max_order=args.max_order)
    return sampling.mc_ircm(n, p, args.s, args.seed, args.t_start, args.threads,
                            per_sample=args.per_sample, max_iterations=args.max_iterations)


def cmd_estimate(args) -> int:
    rows = []
    tag = sampling.MC_AC if args.method == "mc-ac" else sampling.MC_IRCM
    for n in parse_orders(args.n):
        for p in parse_probs(args.p):
            try:
                rows.append(_estimate(args.method, n, p, args))
            except (ValueError, OverflowError) as exc:
                log.error("%s n=%d p=%g failed: %s", tag, n, p, exc)
                rows.append([tag, str(n), repr(p), str(args.s), str(args.seed), "", "", ""])
    _emit(sampling.results_csv(rows), args.out)
    return 0


def cmd_recurrence(args) -> int:
    n0, chi0 = _initial_term(args, [args.p], [args.mc_ircm_max_n])[args.p]
    tr = asymptotics.recurrence_trajectory(n0, chi0, args.p, args.n_end, clamp=args.clamp)
    _emit(tr.to_csv(), args.out)
    return 0


def cmd_bounds(args) -> int:
    rows = []
    for p in parse_probs(args.p):
        for n in parse_orders(args.n):
            try:
                rows.append(asymptotics.bollobas_bounds(n, p, args.inner_log))
            except ValueError as exc:
                log.warning("skipping n=%d p=%g: %s", n, p, exc)
    _emit(asymptotics.bounds_csv(rows), args.out)
    return 0


def _ircm_mean(args, n: int, p: float) -> float:
    key = (n, p)
    memo = args.__dict__.setdefault("_ircm_memo", {})
    if key not in memo:
        memo[key] = sampling.mc_ircm(n, p, args.s, args.seed, args.t_start, args.threads,
                                     per_sample=args.per_sample, max_iterations=args.max_iterations).mean
    return memo[key]


def _initial_term(args, ps: list[float], orders: list[int] | None = None) -> dict[float, tuple[int, float]]:
    source = args.initial
    if source == "exact-n9":
        poly = census.exact_polynomial(EXACT_MAX_N)
        return {p: (EXACT_MAX_N, poly(p)) for p in ps}
    if source == "user":
        if args.initial_n is None or args.initial_value is None:
            raise UsageError("--initial user needs --initial-n and --initial-value")
        return {p: (args.initial_n, args.initial_value) for p in ps}
    if source == "ircm-max":
        candidates = [n for n in (orders or []) if n <= args.mc_ircm_max_n]
        if not candidates:
            raise UsageError("--initial ircm-max needs an order <= --mc-ircm-max-n in --n")
        m = max(candidates)
        return {p: (m, _ircm_mean(args, m, p)) for p in ps}
    raise UsageError(f"unknown initial source {source!r}")


COMPARE_HEADER = ["n", "p", "exact", "mc_ac", "mc_ircm", "recurrence", "lower", "upper"]


def cmd_compare(args) -> int:
    orders = sorted(set(parse_orders(args.n)))
    ps = parse_probs(args.p)
    inits = _initial_term(args, ps, orders)
    lines = [",".join(COMPARE_HEADER)]
    for p in ps:
        n0, chi0 = inits[p]
        top = max(orders)
        tr = asymptotics.recurrence_trajectory(n0, chi0, p, max(top, n0), clamp=args.clamp)
        for n in orders:
            cells = {"n": str(n), "p": repr(p)}
            if n <= EXACT_MAX_N:
                cells["exact"] = repr(census.exact_polynomial(n)(p))
            if n <= args.mc_ac_max_n:
                cells["mc_ac"] = repr(sampling.mc_ac(n, p, args.s, args.seed, args.threads).mean)
            if n <= args.mc_ircm_max_n:
                cells["mc_ircm"] = repr(_ircm_mean(args, n, p))
            if n >= n0:
                cells["recurrence"] = repr(tr.value_at(n))
            if n >= 3 and 0.0 < p < 1.0:
                try:
                    b = asymptotics.bollobas_bounds(n, p, args.inner_log)
                    cells["lower"], cells["upper"] = repr(b.lower), repr(b.upper)
                except ValueError as exc:
                    log.warning("no bounds at n=%d p=%g: %s", n, p, exc)
            lines.append(",".join(cells.get(h, "") for h in COMPARE_HEADER))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    out = Path(args.out)
    results = verify.run_checks(out, threads=args.threads, seed=args.seed,
                                oracle_samples=args.oracle_samples, s=args.s)
    report = verify.report_csv(results)
    census.write_atomic(out / "report.csv", report)
    for r in results:
        if not r.passed:
            print(f"{r.severity.upper()} FAIL {r.name}: {r.detail}", file=sys.stderr)
    code = verify.exit_code(results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed; report at {out / 'report.csv'}")
    return code


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chibar", description="Expected chromatic numbers of binomial random graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=True):
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--out", default=None, help="output path (stdout if omitted)")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    def mc_flags(sp):
        sp.add_argument("--s", type=int, default=sampling.DEFAULT_SAMPLES, help="samples per estimate")
        sp.add_argument("--t-start", type=int, default=sampling.DEFAULT_T_START)
        sp.add_argument("--per-sample", action="store_true", help="per-sample doubling instead of global")
        sp.add_argument("--max-iterations", type=int, default=1 << 32)

    def initial_flags(sp):
        sp.add_argument("--initial", choices=["exact-n9", "ircm-max", "user"], default="exact-n9")
        sp.add_argument("--initial-n", type=int)
        sp.add_argument("--initial-value", type=float)
        sp.add_argument("--clamp", action="store_true", help="clip the keep-probability to [0, 1]")

    sp = sub.add_parser("census", help="census of all graphs of one order + polynomial")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-order", type=int, default=None)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("poly", help="expectation polynomial as JSON")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--source", choices=["fixture", "census"], default="fixture")
    sp.add_argument("--max-order", type=int, default=None)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("estimate", help="Monte Carlo estimates")
    sp.add_argument("--method", choices=["mc-ac", "mc-ircm"], required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--max-order", type=int, default=sampling.MC_AC_MAX_ORDER)
    common(sp)
    mc_flags(sp)
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("recurrence", help="recurrence trajectory")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--n-end", type=int, required=True)
    initial_flags(sp)
    common(sp)
    mc_flags(sp)
    sp.add_argument("--mc-ircm-max-n", type=int, default=0)
    sp.set_defaults(func=cmd_recurrence)

    sp = sub.add_parser("bounds", help="Bollobás bounds")
    sp.add_argument("--n", required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--inner-log", choices=list(asymptotics.CONVENTIONS), default=asymptotics.NATURAL)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("compare", help="all methods side by side")
    sp.add_argument("--n", required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--mc-ac-max-n", type=int, default=0)
    sp.add_argument("--mc-ircm-max-n", type=int, default=0)
    sp.add_argument("--inner-log", choices=list(asymptotics.CONVENTIONS), default=asymptotics.NATURAL)
    initial_flags(sp)
    common(sp)
    mc_flags(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("verify", help="run the self-check suite")
    sp.add_argument("--oracle-samples", type=int, default=2000)
    sp.add_argument("--s", type=int, default=sampling.DEFAULT_SAMPLES)
    common(sp)
    sp.set_defaults(func=cmd_verify, out="verify-out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chibar: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"chibar: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
