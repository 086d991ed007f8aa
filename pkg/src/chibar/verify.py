"""Self-check suite behind ``chibar verify``.

Hard checks are exact statements (census cells, polynomial coefficients,
solver agreement); advisory checks are statistical or depend on a log
convention.  Every emitted file is read back and compared with what was
written.  Detail strings carry no timings, so reports are reproducible.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import asymptotics, census, coloring, graph, ircm, sampling

HARD = "hard"
ADVISORY = "advisory"
REPORT_HEADER = ["check", "severity", "status", "detail"]

# Published MC&AC means for the advisory spot check.
MC_AC_SPOT = [(10, 0.5, 3.98541)]
MC_IRCM_SPOT = [(9, 0.5, 3.76068)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    severity: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def check_fixtures() -> list[CheckResult]:
    out = []
    for n in range(2, 10):
        try:
            census.load_fixture(n)
            out.append(CheckResult(f"fixture_invariants_n{n}", HARD, True))
        except (census.CensusFixtureError, OSError) as exc:
            out.append(CheckResult(f"fixture_invariants_n{n}", HARD, False, str(exc)))
    return out


def check_census(out_dir: Path, threads: int, max_n: int = 7) -> tuple[list[CheckResult], dict]:
    out = []
    computed = {}
    for n in range(2, max_n + 1):
        c = census.build_census(n, threads=threads)
        computed[n] = c
        path = out_dir / f"census_n{n}.csv"
        census.write_atomic(path, c.to_csv())
        reread = census.ingest_census_fixture(path)
        out.append(CheckResult(f"census_roundtrip_n{n}", HARD, reread == c))
        try:
            fixture = census.load_fixture(n, validate=False)
        except (census.CensusFixtureError, OSError) as exc:
            out.append(CheckResult(f"census_vs_fixture_n{n}", HARD, False, str(exc)))
            continue
        cells = c.diff(fixture)
        detail = "; ".join(f"cell (edges={m}, chromatic={chi}): computed {a}, fixture {b}" for m, chi, a, b in cells)
        out.append(CheckResult(f"census_vs_fixture_n{n}", HARD, not cells, detail))
    return out, computed


def check_polynomials(out_dir: Path, computed: dict) -> list[CheckResult]:
    out = []
    printed = census.printed_polynomials()
    for n in range(2, 10):
        try:
            source = computed[n] if n in computed else census.load_fixture(n)
        except (census.CensusFixtureError, OSError) as exc:
            out.append(CheckResult(f"polynomial_n{n}", HARD, False, str(exc)))
            continue
        poly = census.census_to_polynomial(source)
        path = out_dir / f"poly_n{n}.json"
        census.write_atomic(path, poly.to_json())
        same = census.ExpectationPolynomial.from_json(path.read_text(encoding="utf-8")) == poly
        bad = [k for k in range(max(len(poly.coeffs), len(printed[n])))
               if (poly.coeffs[k] if k < len(poly.coeffs) else 0) != (printed[n][k] if k < len(printed[n]) else 0)]
        detail = "" if not bad else "mismatched powers " + ",".join(map(str, bad))
        out.append(CheckResult(f"polynomial_n{n}", HARD, same and not bad, detail))
    return out


def check_oracle(seed: int, samples: int) -> list[CheckResult]:
    out = []
    for n in range(1, 6):
        bad = [g.index for g in graph.enumerate_all(n)
               if coloring.chi_exact(g).chi != coloring.chi_bruteforce(g).chi]
        out.append(CheckResult(f"oracle_exhaustive_n{n}", HARD, not bad,
                               "" if not bad else f"graph indices {bad[:5]}"))
    bad = []
    for i in range(samples):
        g = graph.sample_gnp(7, 0.5, seed, i)
        if coloring.chi_exact(g).chi != coloring.chi_bruteforce(g).chi:
            bad.append(i)
    out.append(CheckResult("oracle_sampled_n7", HARD, not bad, "" if not bad else f"sample ids {bad[:5]}"))
    return out


def check_ircm_soundness(seed: int) -> list[CheckResult]:
    bad = []
    for n in range(2, 6):
        for g in graph.enumerate_all(n):
            r = ircm.ircm_until_stable(g, 64, seed, sample_id=g.index)
            if r.color_count < coloring.chi_exact(g).chi:
                bad.append((n, g.index))
    return [CheckResult("ircm_upper_bound_exhaustive", HARD, not bad, "" if not bad else f"(n, index) {bad[:5]}")]


def check_recurrence() -> list[CheckResult]:
    ref = 4.0 - 3.0 * math.exp(4.5 * math.log(2.0 / 3.0))
    got = asymptotics.recurrence_step(3.0, 9, 0.5)
    fixed = asymptotics.recurrence_step(1.0, 5, 0.0)
    return [
        CheckResult("recurrence_step", HARD, abs(got - ref) <= 1e-12, f"{got!r} vs {ref!r}"),
        CheckResult("recurrence_p0_fixed_point", HARD, fixed == 1.0, repr(fixed)),
    ]


def check_bounds_claim(out_dir: Path) -> list[CheckResult]:
    out = []
    rows = []
    for p in (0.3, 0.5, 0.7):
        tr = asymptotics.recurrence_trajectory(9, census.exact_polynomial(9)(p), p, 100_000)
        for n in (1_000, 10_000, 100_000):
            b = asymptotics.bollobas_bounds(n, p)
            v = tr.value_at(n)
            rows.append(b)
            out.append(CheckResult(f"recurrence_inside_bounds_p{p}_n{n}", ADVISORY, b.contains(v),
                                   f"{b.lower:.6f} < {v:.6f} < {b.upper:.6f}"))
    path = out_dir / "bounds.csv"
    text = asymptotics.bounds_csv(rows)
    census.write_atomic(path, text)
    out.append(CheckResult("bounds_csv_roundtrip", HARD, path.read_text(encoding="utf-8") == text))
    return out


def check_monte_carlo(out_dir: Path, seed: int, threads: int, s: int) -> list[CheckResult]:
    out = []
    estimates = []
    for n, p, ref in MC_AC_SPOT:
        e = sampling.mc_ac(n, p, s, seed, threads)
        estimates.append(e)
        out.append(CheckResult(f"mc_ac_n{n}_p{p}", ADVISORY, abs(e.mean - ref) <= 0.05,
                               f"mean {e.mean:.5f} vs published {ref}"))
    for n, p, ref in MC_IRCM_SPOT:
        e = sampling.mc_ircm(n, p, s, seed, threads=threads)
        estimates.append(e)
        dominated = bool(np.all(e.values >= sampling.mc_ac(n, p, s, seed, threads).values))
        out.append(CheckResult(f"mc_ircm_n{n}_p{p}", ADVISORY, abs(e.mean - ref) <= 0.05,
                               f"mean {e.mean:.5f} vs published {ref}"))
        out.append(CheckResult(f"mc_ircm_dominates_exact_n{n}", HARD, dominated))
    path = out_dir / "estimates.csv"
    text = sampling.results_csv(estimates)
    census.write_atomic(path, text)
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    out.append(CheckResult("estimates_csv_roundtrip", HARD,
                           rows[0] == sampling.RESULTS_HEADER and len(rows) == len(estimates) + 1))
    return out


def run_checks(out_dir, threads: int = 1, seed: int = 0, oracle_samples: int = 2000, s: int = 16384,
               census_max_n: int = 7) -> list[CheckResult]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = check_fixtures()
    census_results, computed = check_census(out_dir, threads, census_max_n)
    results += census_results
    results += check_polynomials(out_dir, computed)
    results += check_oracle(seed, oracle_samples)
    results += check_ircm_soundness(seed)
    results += check_recurrence()
    results += check_bounds_claim(out_dir)
    results += check_monte_carlo(out_dir, seed, threads, s)
    return results


def report_csv(results: list[CheckResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for r in results:
        w.writerow([r.name, r.severity, r.status, r.detail])
    return buf.getvalue()


def exit_code(results: list[CheckResult]) -> int:
    if any(not r.passed and r.severity == HARD for r in results):
        return 2
    if any(not r.passed for r in results):
        return 3
    return 0
