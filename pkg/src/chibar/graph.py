"""Simple labeled graphs on ``n`` vertices stored as edge bitsets.

Vertices are ``0 .. n-1``.  The ``C(n,2)`` vertex pairs ``(i, j)`` with
``i < j`` are numbered in lexicographic order, and bit ``k`` of the edge
bitset is set iff pair ``k`` is an edge.  The bitset read as an integer is the
graph index, so graphs of order ``n`` correspond one-to-one with integers in
``[0, 2**C(n,2))``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from numba import njit, uint64

from ._rng import GRAPH_STREAM, counter_uniform, stream_key

#: Default largest order accepted by exhaustive enumeration (2**21 graphs).
EXHAUSTIVE_MAX_ORDER = 7
#: Largest order whose adjacency fits the 64-bit vertex masks used by kernels.
KERNEL_MAX_ORDER = 64

GraphIndex = int


class OrderTooLargeError(ValueError):
    """Raised when a graph order exceeds the cap of an exhaustive method."""


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Lexicographic index of the vertex pair ``{i, j}`` among order-``n`` pairs."""
    if i == j:
        raise ValueError("self-loops are not allowed")
    if i > j:
        i, j = j, i
    if i < 0 or j >= n:
        raise IndexError(f"pair ({i}, {j}) out of range for order {n}")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def pair_list(n: int) -> np.ndarray:
    """``(C(n,2), 2)`` array of vertex pairs in pair-index order."""
    iu, ju = np.triu_indices(n, 1)
    return np.stack([iu, ju], axis=1).astype(np.int64)


def pair_of(k: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`pair_index`."""
    if not 0 <= k < num_pairs(n):
        raise IndexError(f"pair index {k} out of range for order {n}")
    i = 0
    row = n - 1
    while k >= row:
        k -= row
        i += 1
        row -= 1
    return i, i + 1 + k


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable labeled graph of order ``n`` with edge bitset ``edges``."""

    n: int
    edges: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be a positive integer")
        if self.edges < 0 or self.edges >> num_pairs(self.n):
            raise ValueError(f"edge bitset out of range for order {self.n}")

    @classmethod
    def from_index(cls, index: GraphIndex, n: int) -> LabeledGraph:
        return cls(n, int(index))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> LabeledGraph:
        bits = 0
        for i, j in edges:
            bits |= 1 << pair_index(i, j, n)
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> LabeledGraph:
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> LabeledGraph:
        return cls(n, (1 << num_pairs(n)) - 1)

    @property
    def index(self) -> GraphIndex:
        return self.edges

    @property
    def num_pairs(self) -> int:
        return num_pairs(self.n)

    def edge_count(self) -> int:
        return self.edges.bit_count()

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            if not 0 <= i < self.n:
                raise IndexError(f"vertex {i} out of range for order {self.n}")
            return False
        return bool(self.edges >> pair_index(i, j, self.n) & 1)

    def edge_list(self) -> list[tuple[int, int]]:
        out = []
        k = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.edges >> k & 1:
                    out.append((i, j))
                k += 1
        return out

    def add_edge(self, i: int, j: int) -> LabeledGraph:
        return LabeledGraph(self.n, self.edges | 1 << pair_index(i, j, self.n))

    def adjacency_masks(self) -> np.ndarray:
        """Per-vertex neighbour bitmasks as a ``uint64`` array (``n <= 64``)."""
        if self.n > KERNEL_MAX_ORDER:
            raise OrderTooLargeError(f"order {self.n} exceeds {KERNEL_MAX_ORDER}")
        masks = [0] * self.n
        for i, j in self.edge_list():
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return np.array(masks, dtype=np.uint64)

    def to_line(self) -> str:
        """Serialize as ``n:<int> e:<hex>`` (bit k of the hex value is pair k)."""
        return f"n:{self.n} e:{self.edges:x}"

    @classmethod
    def from_line(cls, line: str) -> LabeledGraph:
        try:
            n_part, e_part = line.split()
            if not (n_part.startswith("n:") and e_part.startswith("e:")):
                raise ValueError
            return cls(int(n_part[2:]), int(e_part[2:], 16))
        except ValueError as exc:
            raise ValueError(f"malformed graph line: {line!r}") from exc

    def to_edge_list(self) -> str:
        return "".join(f"{i} {j}\n" for i, j in self.edge_list())

    @classmethod
    def from_edge_list(cls, n: int, text: str) -> LabeledGraph:
        edges = []
        for line in text.splitlines():
            if line.strip():
                i, j = line.split()
                edges.append((int(i), int(j)))
        return cls.from_edges(n, edges)


def check_exhaustive_order(n: int, max_order: int | None, what: str) -> None:
    cap = EXHAUSTIVE_MAX_ORDER if max_order is None else max_order
    if n > cap:
        raise OrderTooLargeError(f"{what} of order {n} exceeds the cap {cap}; raise max_order to override")
    if n > EXHAUSTIVE_MAX_ORDER:
        warnings.warn(f"{what} of order {n} enumerates 2**{num_pairs(n)} graphs and will run for hours", RuntimeWarning, stacklevel=3)


def enumerate_all(n: int, max_order: int | None = None) -> Iterator[LabeledGraph]:
    """Yield every labeled graph of order ``n`` in ascending index order."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    check_exhaustive_order(n, max_order, "enumeration")
    for idx in range(1 << num_pairs(n)):
        yield LabeledGraph(n, idx)


def graph_probability(g: LabeledGraph, p: float) -> float:
    """Probability ``p**|E| (1-p)**(C(n,2)-|E|)`` of ``g`` under G(n, p)."""
    check_probability(p)
    m = g.edge_count()
    return p**m * (1.0 - p) ** (g.num_pairs - m)


def check_probability(p: float) -> None:
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p}")


@njit(cache=True, nogil=True)
def sample_pair_bits(n, p, key):
    """Edge indicator per pair: pair ``k`` is present iff draw ``k`` < ``p``."""
    npairs = n * (n - 1) // 2
    bits = np.zeros(npairs, dtype=np.bool_)
    for k in range(npairs):
        bits[k] = counter_uniform(key, uint64(k)) < p
    return bits


@njit(cache=True, nogil=True)
def sample_adjacency(n, p, key, adj):
    """Fill ``adj`` with per-vertex neighbour masks of a G(n, p) draw."""
    for v in range(n):
        adj[v] = uint64(0)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if counter_uniform(key, uint64(k)) < p:
                adj[i] |= uint64(1) << uint64(j)
                adj[j] |= uint64(1) << uint64(i)
            k += 1


def sample_gnp(n: int, p: float, seed: int, sample_id: int = 0) -> LabeledGraph:
    """Draw a binomial random graph G(n, p).

    The result depends only on ``(n, p, seed, sample_id)``: pair ``k`` is an
    edge iff the ``k``-th uniform draw of the stream keyed by
    ``(seed, sample_id)`` is below ``p``.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    check_probability(p)
    bits = sample_pair_bits(n, float(p), stream_key(seed, GRAPH_STREAM, sample_id))
    edges = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return LabeledGraph(n, edges)


def binomial_row_counts(n: int) -> list[int]:
    """Number of order-``n`` graphs with ``m`` edges, for ``m = 0 .. C(n,2)``."""
    N = num_pairs(n)
    return [math.comb(N, m) for m in range(N + 1)]
