"""Acceptance criteria 1-10.

Each test records one line for the end-of-run acceptance table.  Hard
thresholds are asserted; advisory thresholds are reported only.  Set
``CHIBAR_ACCEPTANCE_FULL=1`` to run every IRCM cell at s = 16384 with no
iteration ceiling (hours on one core).
"""

import math
import os
import time
import warnings

import mpmath
import numpy as np
import pytest

from chibar import asymptotics, census, coloring, graph, ircm, sampling
from chibar.cli import main

FULL = os.environ.get("CHIBAR_ACCEPTANCE_FULL") == "1"
SEED = 20240601

MC_AC_TABLE = {
    (10, 0.3): 3.05609, (10, 0.5): 3.98541, (10, 0.7): 5.18646,
    (11, 0.3): 3.17175, (11, 0.5): 4.18091, (11, 0.7): 5.50482,
    (12, 0.3): 3.28790, (12, 0.5): 4.37830, (12, 0.7): 5.78979,
    (13, 0.3): 3.41375, (13, 0.5): 4.56677, (13, 0.7): 6.08941,
    (14, 0.3): 3.53948, (14, 0.5): 4.76459,
    (15, 0.3): 3.67120,
}

MC_IRCM_TABLE = {
    (7, 0.3): 2.57208, (7, 0.5): 3.28235, (7, 0.7): 4.14459,
    (20, 0.3): 4.13464, (20, 0.5): 5.73358, (20, 0.7): 7.86962,
    (40, 0.3): 5.84442, (40, 0.5): 8.33148, (40, 0.7): 11.99114,
    (50, 0.7): 13.83203,
}


def ircm_config(n):
    """(samples, iteration ceiling) per order; large orders are cut down to desk scale."""
    if FULL or n <= 20:
        return 16384, ircm.DEFAULT_MAX_ITERATIONS
    return 1024, 1 << 23


def _status(hard_ok, advisory_ok=True):
    if not hard_ok:
        return "FAIL"
    return "PASS" if advisory_ok else "ADVISORY-FAIL"


def _report(record, key, status, detail):
    record(key, status, detail)
    print(f"{key}: {status} {detail}")


def test_c1_census_small_orders(record_criterion):
    t0 = time.perf_counter()
    diffs = {n: census.build_census(n).diff(census.load_fixture(n)) for n in range(2, 7)}
    elapsed = time.perf_counter() - t0
    ok = not any(diffs.values()) and census.load_fixture(5).count(1, 2) == 10
    _report(record_criterion, "C1 census n=2..6", _status(ok, elapsed <= 60), f"{elapsed:.1f}s")
    assert ok, diffs


def test_c2_census_order_seven(record_criterion):
    t0 = time.perf_counter()
    c = census.build_census(7)
    elapsed = time.perf_counter() - t0
    cells = c.diff(census.load_fixture(7))
    totals = [c.chi_totals()[k] for k in range(1, 8)]
    ok = not cells and totals == [1, 103236, 1353810, 605545, 34139, 420, 1]
    _report(record_criterion, "C2 census n=7", _status(ok, elapsed <= 1800), f"{elapsed:.1f}s")
    assert ok, cells[:5]


def test_c3_polynomial_coefficients(record_criterion):
    printed = census.printed_polynomials()
    bad = []
    for n in range(2, 10):
        source = census.build_census(n) if n <= 7 else census.load_fixture(n)
        if census.census_to_polynomial(source).coeffs != printed[n]:
            bad.append(n)
    _report(record_criterion, "C3 polynomials n=2..9", _status(not bad), f"mismatch {bad}" if bad else "")
    assert not bad


def test_c4_oracle_equivalence(record_criterion):
    checked = 0
    bad = []
    for n in range(1, 7):
        for g in graph.enumerate_all(n):
            checked += 1
            if coloring.chi_exact(g).chi != coloring.chi_bruteforce(g).chi:
                bad.append(g.to_line())
    for i in range(10_000):
        g = graph.sample_gnp(7, 0.5, SEED, i)
        checked += 1
        if coloring.chi_exact(g).chi != coloring.chi_bruteforce(g).chi:
            bad.append(g.to_line())
    _report(record_criterion, "C4 oracle equivalence", _status(not bad), f"{checked} graphs")
    assert checked == 32768 + 1024 + 64 + 8 + 2 + 1 + 10_000
    assert not bad, bad[:5]


def test_c5_mc_ac_table(record_criterion):
    t0 = time.perf_counter()
    worst, worst_cell = 0.0, None
    for (n, p), ref in MC_AC_TABLE.items():
        e = sampling.mc_ac(n, p, 16384, SEED)
        dev = abs(e.mean - ref)
        print(f"  MC&AC n={n} p={p}: {e.mean:.5f} (ref {ref}, se {e.stderr:.4f})")
        if dev > worst:
            worst, worst_cell = dev, (n, p)
    elapsed = time.perf_counter() - t0
    status = _status(worst <= 0.15, worst <= 0.05 and elapsed <= 1200)
    _report(record_criterion, "C5 MC&AC 15 cells", status, f"max |dev| {worst:.4f} at {worst_cell}, {elapsed:.0f}s")
    assert worst <= 0.15


def test_c6_mc_ircm_table(record_criterion):
    worst, worst_cell = 0.0, None
    notes = []
    for (n, p), ref in MC_IRCM_TABLE.items():
        s, ceiling = ircm_config(n)
        t0 = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ircm.NonConvergenceWarning)
            e = sampling.mc_ircm(n, p, s, SEED, max_iterations=ceiling)
        dev = abs(e.mean - ref)
        print(f"  MC&IRCM n={n} p={p} s={s}: {e.mean:.5f} (ref {ref}) t_final={e.t_final} "
              f"converged={e.converged} {time.perf_counter() - t0:.0f}s")
        if not e.converged:
            notes.append(f"n={n},p={p}")
        if dev > worst:
            worst, worst_cell = dev, (n, p)
    detail = f"max |dev| {worst:.4f} at {worst_cell}"
    if notes:
        detail += "; ceiling hit " + " ".join(notes)
    _report(record_criterion, "C6 MC&IRCM 10 cells", _status(worst <= 0.25, worst <= 0.10), detail)
    assert worst <= 0.25


def test_c7_ircm_soundness(record_criterion):
    below = []
    for n in range(2, 6):
        for g in graph.enumerate_all(n):
            if ircm.ircm_until_stable(g, 64, SEED, sample_id=g.index).color_count < coloring.chi_exact(g).chi:
                below.append(g.to_line())
    agree = None
    for n in (9, 12):
        for p in (0.3, 0.5, 0.7):
            exact = sampling.mc_ac(n, p, 10_000, SEED).values
            heur = sampling.mc_ircm(n, p, 10_000, SEED, per_sample=True).values
            below += [f"n={n} p={p} sample {i}" for i in np.flatnonzero(heur < exact)]
            if (n, p) == (9, 0.5):
                agree = float(np.mean(heur == exact))
    status = _status(not below, agree >= 0.95)
    _report(record_criterion, "C7 IRCM soundness", status, f"equal on {agree:.2%} at n=9 p=0.5")
    assert not below, below[:5]


def test_c8_recurrence_step(record_criterion):
    mpmath.mp.dps = 40
    ref = float(4 - 3 * mpmath.power(mpmath.mpf(2) / 3, mpmath.mpf("4.5")))
    got = asymptotics.recurrence_step(3.0, 9, 0.5)
    fixed = asymptotics.recurrence_trajectory(1, 1.0, 0.0, 1000).values
    ok = abs(got - ref) <= 1e-12 and np.all(fixed == 1.0)
    _report(record_criterion, "C8 recurrence step", _status(ok), f"|err| {abs(got - ref):.1e}")
    assert ok


def test_c9_bounds_and_claim(record_criterion):
    ordered = all(
        asymptotics.bollobas_bounds(n, p).lower < asymptotics.bollobas_bounds(n, p).upper
        for p in (0.1, 0.3, 0.5, 0.7, 0.9)
        for n in [asymptotics.n_valid(p) + 1, 100, 1000, 10_000, 100_000, 10**6]
    )
    outside = []
    for p in (0.3, 0.5, 0.7):
        tr = asymptotics.recurrence_trajectory(9, census.exact_polynomial(9)(p), p, 100_000)
        for n in (1_000, 10_000, 100_000):
            b = asymptotics.bollobas_bounds(n, p)
            v = tr.value_at(n)
            print(f"  p={p} n={n}: {b.lower:.3f} < {v:.3f} < {b.upper:.3f}")
            if not b.contains(v):
                outside.append((p, n))
    status = "PASS" if ordered and not outside else "ADVISORY-FAIL"
    _report(record_criterion, "C9 bounds and recurrence claim", status,
            f"outside at {outside}" if outside else "9/9 inside")
    assert ordered


@pytest.mark.slow
def test_c10_verify_determinism(tmp_path, record_criterion):
    codes = []
    for t in (1, 2):
        codes.append(main(["verify", "--out", str(tmp_path / f"t{t}"), "--threads", str(t), "--seed", str(SEED)]))
    names = sorted(p.name for p in (tmp_path / "t1").iterdir())
    same = names == sorted(p.name for p in (tmp_path / "t2").iterdir()) and all(
        (tmp_path / "t1" / f).read_bytes() == (tmp_path / "t2" / f).read_bytes() for f in names
    )
    hard_ok = same and all(c in (0, 3) for c in codes)
    _report(record_criterion, "C10 verify determinism", _status(hard_ok),
            f"{len(names)} files identical, exit codes {codes}")
    assert hard_ok
