"""Monte Carlo estimates of the expected chromatic number.

Sample ``i`` is the G(n, p) graph of stream ``(seed, i)``, so MC&AC and
MC&IRCM runs with the same seed see the same graphs.  Per-sample work is done
in nogil numba kernels over contiguous sample blocks; outputs never depend on
the number of threads.
"""

from __future__ import annotations

import io
import csv
import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ._rng import GRAPH_STREAM, IRCM_STREAM, stream_keys
from .coloring import chi_kernel
from .graph import KERNEL_MAX_ORDER, OrderTooLargeError, check_probability, sample_adjacency
from .ircm import (
    DEFAULT_MAX_ITERATIONS,
    NonConvergenceWarning,
    frozen_mask,
    initial_coloring,
    ircm_batch,
)

log = logging.getLogger(__name__)

MC_AC = "MC&AC"
MC_IRCM = "MC&IRCM"
DEFAULT_SAMPLES = 16384
DEFAULT_T_START = 256
#: Default largest order for MC&AC (exact colouring of every sample).
MC_AC_MAX_ORDER = 20

RESULTS_HEADER = ["method", "n", "p", "s", "seed", "mean", "stddev", "t_final"]


@dataclass(frozen=True)
class McEstimate:
    """Sample average of per-graph colour counts."""

    method: str
    n: int
    p: float
    s: int
    seed: int
    mean: float
    stddev: float
    values: np.ndarray = field(repr=False, compare=False)
    t_final: int | None = None
    converged: bool = True
    params: dict = field(default_factory=dict, compare=False)

    @property
    def stderr(self) -> float:
        return self.stddev / math.sqrt(self.s)

    def csv_row(self) -> list[str]:
        return [
            self.method,
            str(self.n),
            repr(float(self.p)),
            str(self.s),
            str(self.seed),
            repr(self.mean),
            repr(self.stddev),
            "" if self.t_final is None else str(self.t_final),
        ]


def summarize(values: np.ndarray) -> tuple[float, float]:
    """Exact mean of integer samples and their sample standard deviation."""
    s = len(values)
    total = int(values.sum())
    mean = total / s
    if s < 2:
        return mean, 0.0
    sq = int((values.astype(np.int64) ** 2).sum())
    # exact integer numerator keeps the result independent of summation order
    var = (sq * s - total * total) / (s * (s - 1))
    return mean, math.sqrt(var)


def results_csv(estimates) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESULTS_HEADER)
    for e in estimates:
        w.writerow(e.csv_row() if isinstance(e, McEstimate) else e)
    return buf.getvalue()


def _blocks(s: int, threads: int) -> list[tuple[int, int]]:
    nblocks = max(1, min(s, 8 * max(1, threads)))
    edges = np.linspace(0, s, nblocks + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_blocks(fn, s: int, threads: int) -> None:
    blocks = _blocks(s, threads)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(lambda ab: fn(*ab), blocks))
    else:
        for a, b in blocks:
            fn(a, b)


@njit(cache=True, nogil=True)
def _sample_block(n, p, keys, adjs):
    for s in range(keys.shape[0]):
        sample_adjacency(n, p, keys[s], adjs[s])


@njit(cache=True, nogil=True)
def _chi_block(n, adjs, out):
    colors = np.empty(n, dtype=np.int64)
    work = np.empty((4, n), dtype=np.int64)
    for s in range(adjs.shape[0]):
        out[s] = chi_kernel(adjs[s], n, colors, work)


def _check(n: int, p: float, s: int) -> None:
    if n < 1:
        raise ValueError("order must be a positive integer")
    if s < 1:
        raise ValueError("sample count must be a positive integer")
    check_probability(p)
    if n > KERNEL_MAX_ORDER:
        raise OrderTooLargeError(f"order {n} exceeds {KERNEL_MAX_ORDER}")


def sample_adjacencies(n: int, p: float, s: int, seed: int, threads: int = 1) -> np.ndarray:
    """Neighbour masks of samples ``0 .. s-1``, shape ``(s, n)``."""
    keys = stream_keys(seed, GRAPH_STREAM, s)
    adjs = np.zeros((s, n), dtype=np.uint64)
    _run_blocks(lambda a, b: _sample_block(n, float(p), keys[a:b], adjs[a:b]), s, threads)
    return adjs


def mc_ac(n: int, p: float, s: int = DEFAULT_SAMPLES, seed: int = 0, threads: int = 1,
          max_order: int = MC_AC_MAX_ORDER) -> McEstimate:
    """MC&AC: average exact chromatic number over ``s`` sampled graphs."""
    _check(n, p, s)
    if n > max_order:
        raise OrderTooLargeError(f"MC&AC of order {n} exceeds the cap {max_order}")
    adjs = sample_adjacencies(n, p, s, seed, threads)
    values = np.zeros(s, dtype=np.int64)
    _run_blocks(lambda a, b: _chi_block(n, adjs[a:b], values[a:b]), s, threads)
    mean, sd = summarize(values)
    return McEstimate(MC_AC, n, float(p), s, seed, mean, sd, values)


def mc_ircm(
    n: int,
    p: float,
    s: int = DEFAULT_SAMPLES,
    seed: int = 0,
    t_start: int = DEFAULT_T_START,
    threads: int = 1,
    per_sample: bool = False,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> McEstimate:
    """MC&IRCM: average IRCM colour count over ``s`` sampled graphs.

    By default the doubling rule is global: every sample runs ``t_start``
    iterations, then all budgets double together until a doubling leaves the
    colour count of every sample unchanged.  With ``per_sample=True`` each
    sample stops on its own doubling, which gives exactly
    :func:`~chibar.ircm.ircm_until_stable` per sample.

    Samples whose colouring admits no move at all are skipped; this cannot
    change any result.
    """
    _check(n, p, s)
    if t_start < 1:
        raise ValueError("t_start must be a positive integer")
    params = {"t_start": t_start, "per_sample": per_sample, "max_iterations": max_iterations}
    if n == 1:
        values = np.ones(s, dtype=np.int64)
        return McEstimate(MC_IRCM, n, float(p), s, seed, 1.0, 0.0, values, t_start, True, params)

    adjs = sample_adjacencies(n, p, s, seed, threads)
    c0, k0 = initial_coloring(n)
    colors = np.tile(c0, (s, 1))
    classes = np.tile(k0, (s, 1))
    keys = stream_keys(seed, IRCM_STREAM, s)
    hs = np.zeros(s, dtype=np.uint64)
    counts = np.full(s, n, dtype=np.int64)
    active = np.ones(s, dtype=np.bool_)
    frozen = np.zeros(s, dtype=np.bool_)
    t_done = np.zeros(s, dtype=np.int64)

    def advance(steps):
        run = active & ~frozen

        def block(a, b):
            ircm_batch(adjs[a:b], n, colors[a:b], classes[a:b], keys[a:b], hs[a:b], run[a:b], steps, counts[a:b])
            frozen_mask(adjs[a:b], n, colors[a:b], classes[a:b], frozen[a:b])

        _run_blocks(block, s, threads)
        t_done[active] += steps

    advance(t_start)
    t = t_start
    converged = True
    while active.any():
        if 2 * t > max_iterations:
            converged = False
            break
        before = counts.copy()
        advance(t)
        t *= 2
        changed = counts != before
        log.debug("MC&IRCM n=%d p=%g t=%d: %d samples changed, mean %.5f", n, p, t, int(changed.sum()), counts.mean())
        if per_sample:
            active &= changed
        elif not changed.any():
            break
    if not converged:
        warnings.warn(f"MC&IRCM n={n} p={p} reached the iteration ceiling {max_iterations}", NonConvergenceWarning, stacklevel=2)
    mean, sd = summarize(counts)
    return McEstimate(MC_IRCM, n, float(p), s, seed, mean, sd, counts.copy(), int(t_done.max()), converged, params)
