"""Iterated random colour matching (IRCM).

Every vertex starts in its own colour, the colour id being the vertex index.
Each iteration draws an ordered pair of distinct vertices ``(a, b)``
uniformly; if their colours differ, ``a`` takes the colour of ``b`` when no
neighbour of ``a`` already has it, otherwise ``b`` takes the colour of ``a``
under the same condition, otherwise nothing changes.  Colours are never
renumbered, so the number of colours in use can only fall.

Pair selection is driven by the counter-based stream of ``(seed, sample_id)``;
a run is a pure function of the graph, the iteration count and that stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit, uint64

from ._rng import IRCM_STREAM, counter_draw, stream_key
from .graph import KERNEL_MAX_ORDER, LabeledGraph, OrderTooLargeError

#: Default iteration ceiling for the doubling rule.
DEFAULT_MAX_ITERATIONS = 1 << 32


class NonConvergenceWarning(RuntimeWarning):
    """The doubling rule hit its iteration ceiling before stabilising."""


@njit(cache=True, nogil=True)
def ircm_advance(adj, n, colors, classes, key, h, steps):
    """Run ``steps`` iterations in place and return the new stream position.

    ``h`` counts consumed 32-bit halves of the stream; the pair is drawn from
    one half by multiply-shift with rejection, which is exactly uniform over
    the ``n(n-1)`` ordered pairs.
    """
    nm1 = uint64(n - 1)
    m = uint64(n) * nm1
    reject_below = uint64(0x100000000) % m
    one = uint64(1)
    for _ in range(steps):
        while True:
            z = counter_draw(key, h >> uint64(1))
            if h & one:
                x = z & uint64(0xFFFFFFFF)
            else:
                x = z >> uint64(32)
            h += one
            prod = x * m
            if (prod & uint64(0xFFFFFFFF)) >= reject_below:
                break
        r = prod >> uint64(32)
        a = r // nm1
        b = r - a * nm1
        if b >= a:
            b += one
        ca = colors[a]
        cb = colors[b]
        if ca != cb:
            if adj[a] & classes[cb] == 0:
                classes[ca] &= ~(one << a)
                classes[cb] |= one << a
                colors[a] = cb
            elif adj[b] & classes[ca] == 0:
                classes[cb] &= ~(one << b)
                classes[ca] |= one << b
                colors[b] = ca
    return h


@njit(cache=True, nogil=True)
def count_colors(classes):
    c = 0
    for i in range(classes.shape[0]):
        if classes[i]:
            c += 1
    return c


@njit(cache=True, nogil=True)
def is_frozen(adj, n, colors, classes):
    """True when no vertex may join any other colour in use, so no future
    iteration can change the colouring."""
    for v in range(n):
        a = adj[v]
        own = colors[v]
        for c in range(n):
            if c != own and classes[c] and (a & classes[c]) == 0:
                return False
    return True


@njit(cache=True, nogil=True)
def ircm_batch(adjs, n, colors, classes, keys, hs, active, steps, counts):
    """Advance every active sample by ``steps`` iterations."""
    for s in range(adjs.shape[0]):
        if active[s]:
            hs[s] = ircm_advance(adjs[s], n, colors[s], classes[s], keys[s], hs[s], steps)
            counts[s] = count_colors(classes[s])


@njit(cache=True, nogil=True)
def frozen_mask(adjs, n, colors, classes, out):
    for s in range(adjs.shape[0]):
        out[s] = is_frozen(adjs[s], n, colors[s], classes[s])


def initial_coloring(n: int) -> tuple[np.ndarray, np.ndarray]:
    colors = np.arange(n, dtype=np.int64)
    classes = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
    return colors, classes


class ColoringState:
    """Working state of one IRCM run: colours, iteration count and stream position."""

    def __init__(self, graph: LabeledGraph, seed: int, sample_id: int = 0):
        if graph.n > KERNEL_MAX_ORDER:
            raise OrderTooLargeError(f"order {graph.n} exceeds {KERNEL_MAX_ORDER}")
        self.graph = graph
        self.adj = graph.adjacency_masks()
        self.colors, self.classes = initial_coloring(graph.n)
        self.key = stream_key(seed, IRCM_STREAM, sample_id)
        self.t = 0
        self._h = np.uint64(0)

    @property
    def distinct_count(self) -> int:
        return int(np.count_nonzero(self.classes))

    def advance(self, steps: int) -> int:
        """Run ``steps`` more iterations; returns the colour count afterwards."""
        if steps < 0:
            raise ValueError("steps must be nonnegative")
        if steps and self.graph.n > 1:
            self._h = np.uint64(
                ircm_advance(self.adj, self.graph.n, self.colors, self.classes, self.key, self._h, steps)
            )
        self.t += steps
        return self.distinct_count

    def coloring(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.colors)

    def is_proper(self) -> bool:
        return all(self.colors[i] != self.colors[j] for i, j in self.graph.edge_list())

    def is_frozen(self) -> bool:
        return bool(is_frozen(self.adj, self.graph.n, self.colors, self.classes))


@dataclass(frozen=True)
class IRCMResult:
    color_count: int
    trace: list[tuple[int, int]] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class StableResult:
    color_count: int
    t_final: int
    converged: bool = True


def _validate(g: LabeledGraph, t: int, name: str) -> None:
    if t < 1:
        raise ValueError(f"{name} must be a positive integer")
    if g.n > KERNEL_MAX_ORDER:
        raise OrderTooLargeError(f"order {g.n} exceeds {KERNEL_MAX_ORDER}")


def ircm_run(g: LabeledGraph, t_max: int, seed: int, trace: bool = False, sample_id: int = 0) -> IRCMResult:
    """Exactly ``t_max`` IRCM iterations; returns the final number of colours.

    With ``trace=True`` the colour count after every power-of-two iteration
    count ``t <= t_max`` is recorded as ``(t, count)`` pairs.
    """
    _validate(g, t_max, "t_max")
    if g.n == 1:
        return IRCMResult(1, [(1 << k, 1) for k in range(t_max.bit_length())] if trace else None)
    state = ColoringState(g, seed, sample_id)
    if not trace:
        return IRCMResult(state.advance(t_max))
    points = []
    t = 1
    while t <= t_max:
        points.append((t, state.advance(t - state.t)))
        t *= 2
    return IRCMResult(state.advance(t_max - state.t), points)


def ircm_until_stable(
    g: LabeledGraph,
    t_start: int,
    seed: int,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    sample_id: int = 0,
) -> StableResult:
    """Double the iteration budget until a doubling brings no decrease.

    The same random stream is continued across doublings.  If the next
    doubling would pass ``max_iterations`` the best count so far is returned
    with ``converged=False``.
    """
    _validate(g, t_start, "t_start")
    state = ColoringState(g, seed, sample_id)
    count = state.advance(t_start)
    while True:
        if 2 * state.t > max_iterations:
            return StableResult(count, state.t, False)
        new = state.advance(state.t)
        if new == count:
            return StableResult(new, state.t, True)
        count = new


def trace_csv(trace: list[tuple[int, int]]) -> str:
    return "t,color_count\n" + "".join(f"{t},{c}\n" for t, c in trace)
