"""Exact chromatic numbers of single graphs.

Two independent solvers are provided.  :func:`chi_bruteforce` scans vertex
colour assignments and is kept as the reference; :func:`chi_exact` runs an
iterative-deepening k-colourability search with saturation-degree vertex
ordering and is the one used for censuses and sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit, uint64

from .graph import KERNEL_MAX_ORDER, LabeledGraph, OrderTooLargeError

#: Largest order accepted by the assignment-scanning solver (8**8 patterns).
BRUTEFORCE_MAX_ORDER = 8


@dataclass(frozen=True)
class ChromaticResult:
    """Chromatic number ``chi`` and, optionally, a proper colouring achieving it.

    ``witness[v]`` is the colour of vertex ``v`` in ``1 .. chi``.
    """

    chi: int
    witness: tuple[int, ...] | None = None


def is_proper(g: LabeledGraph, colors) -> bool:
    return all(colors[i] != colors[j] for i, j in g.edge_list())


# --------------------------------------------------------------------------
# assignment scan


@njit(cache=True, nogil=True)
def _proper(assign, eu, ev):
    for e in range(eu.shape[0]):
        if assign[eu[e]] == assign[ev[e]]:
            return False
    return True


@njit(cache=True, nogil=True)
def _chi_scan(n, eu, ev, witness):
    """Smallest ``k`` such that some assignment of ``[k]`` to the vertices is proper."""
    assign = np.zeros(n, dtype=np.int64)
    for k in range(1, n + 1):
        assign[:] = 0
        while True:
            if _proper(assign, eu, ev):
                witness[:] = assign
                return k
            # odometer step over [k]**n
            pos = 0
            while pos < n:
                assign[pos] += 1
                if assign[pos] < k:
                    break
                assign[pos] = 0
                pos += 1
            if pos == n:
                break
    return n


def chi_bruteforce(g: LabeledGraph, max_order: int = BRUTEFORCE_MAX_ORDER) -> ChromaticResult:
    """Chromatic number by scanning colour assignments.

    For ``k = 1, 2, ...`` every map from the vertices to ``k`` colours is
    checked for properness; the first ``k`` admitting one is returned.  This
    finds the same minimum as scanning all ``n**n`` assignments at once.
    """
    if g.n > max_order:
        raise OrderTooLargeError(f"brute-force colouring of order {g.n} exceeds the cap {max_order}")
    edges = np.array(g.edge_list(), dtype=np.int64).reshape(-1, 2)
    witness = np.zeros(g.n, dtype=np.int64)
    chi = _chi_scan(g.n, edges[:, 0].copy(), edges[:, 1].copy(), witness)
    return ChromaticResult(int(chi), tuple(int(c) + 1 for c in witness))


# --------------------------------------------------------------------------
# saturation-ordered backtracking


@njit(cache=True, nogil=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - uint64(1)
        c += 1
    return c


@njit(cache=True, nogil=True)
def _select_vertex(adj, n, colors, classes, used):
    # maximal saturation, lowest index on ties
    best = -1
    best_sat = -1
    for v in range(n):
        if colors[v] >= 0:
            continue
        sat = 0
        a = adj[v]
        for c in range(used):
            if a & classes[c]:
                sat += 1
        if sat > best_sat:
            best_sat = sat
            best = v
    return best


@njit(cache=True, nogil=True)
def _k_colorable(adj, n, k, colors, classes, stack_v, stack_c):
    """Backtracking test for a proper colouring with at most ``k`` colours.

    On success ``colors`` holds it (colours ``0 .. k-1``).
    """
    for v in range(n):
        colors[v] = -1
    for c in range(k):
        classes[c] = uint64(0)
    used = 0
    depth = 0
    stack_v[0] = _select_vertex(adj, n, colors, classes, used)
    stack_c[0] = 0
    while depth >= 0:
        v = stack_v[depth]
        c = stack_c[depth]
        old = colors[v]
        if old >= 0:
            classes[old] &= ~(uint64(1) << uint64(v))
            colors[v] = -1
            if classes[old] == 0 and old == used - 1:
                used -= 1
        # colours are opened in order, so a fresh colour is always ``used``
        limit = used + 1
        if limit > k:
            limit = k
        a = adj[v]
        while c < limit and (a & classes[c]) != 0:
            c += 1
        if c >= limit:
            depth -= 1
            continue
        colors[v] = c
        classes[c] |= uint64(1) << uint64(v)
        if c == used:
            used += 1
        stack_c[depth] = c + 1
        if depth == n - 1:
            return True
        depth += 1
        stack_v[depth] = _select_vertex(adj, n, colors, classes, used)
        stack_c[depth] = 0
    return False


@njit(cache=True, nogil=True)
def _greedy_dsatur(adj, n, colors, classes):
    for v in range(n):
        colors[v] = -1
    used = 0
    for _ in range(n):
        v = _select_vertex(adj, n, colors, classes, used)
        a = adj[v]
        c = 0
        while c < used and (a & classes[c]) != 0:
            c += 1
        if c == used:
            classes[c] = uint64(0)
            used += 1
        colors[v] = c
        classes[c] |= uint64(1) << uint64(v)
    return used


@njit(cache=True, nogil=True)
def _greedy_clique(adj, n):
    # clique grown from each vertex, taking the lowest-index common neighbour
    best = 1
    for s in range(n):
        cand = adj[s]
        size = 1
        while cand:
            low = cand & (~cand + uint64(1))
            v = 0
            while (uint64(1) << uint64(v)) != low:
                v += 1
            cand &= adj[v]
            size += 1
        if size > best:
            best = size
    return best


@njit(cache=True, nogil=True)
def chi_kernel(adj, n, colors, work):
    """Chromatic number of the graph with neighbour masks ``adj``.

    ``colors`` receives an optimal colouring; ``work`` is scratch space of
    shape ``(4, n)``.
    """
    has_edge = False
    for v in range(n):
        if adj[v]:
            has_edge = True
            break
    if not has_edge:
        for v in range(n):
            colors[v] = 0
        return 1
    classes = work[0].view(np.uint64)
    stack_v = work[1]
    stack_c = work[2]
    best = work[3]
    ub = _greedy_dsatur(adj, n, best, classes)
    lb = _greedy_clique(adj, n)
    if lb < 2:
        lb = 2
    for k in range(lb, ub):
        if _k_colorable(adj, n, k, colors, classes, stack_v, stack_c):
            return k
    for v in range(n):
        colors[v] = best[v]
    return ub


def chi_exact(g: LabeledGraph) -> ChromaticResult:
    """Exact chromatic number with a witness colouring (orders up to 64)."""
    if g.n > KERNEL_MAX_ORDER:
        raise OrderTooLargeError(f"order {g.n} exceeds {KERNEL_MAX_ORDER}")
    colors = np.empty(g.n, dtype=np.int64)
    work = np.empty((4, g.n), dtype=np.int64)
    chi = chi_kernel(g.adjacency_masks(), g.n, colors, work)
    return ChromaticResult(int(chi), tuple(int(c) + 1 for c in colors))
