"""Chromatic censuses of all labeled graphs of an order and the exact
expected-chromatic-number polynomial derived from them.

A census ``count[m][chi]`` holds the number of labeled graphs of order ``n``
with ``m`` edges and chromatic number ``chi``.  Weighting each graph by
``p**m (1-p)**(N-m)``, ``N = C(n,2)``, turns the census into a polynomial in
``p`` with integer coefficients.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np
from numba import njit, uint64

from .coloring import chi_kernel
from .graph import check_exhaustive_order, check_probability, num_pairs, pair_list

FIXTURE_ENV = "CHIBAR_FIXTURES"
CENSUS_HEADER = ["n", "edges", "chromatic", "count"]


class CensusFixtureError(ValueError):
    """Malformed census CSV or a census violating its counting invariants."""


@dataclass(frozen=True)
class ChromaticCensus:
    """Graph counts by edge count and chromatic number for order ``n``.

    ``counts[m][chi - 1]`` is the number of graphs with ``m`` edges and
    chromatic number ``chi``; entries are Python ints.
    """

    n: int
    counts: tuple[tuple[int, ...], ...]

    def count(self, edges: int, chi: int) -> int:
        return self.counts[edges][chi - 1]

    def chi_totals(self) -> dict[int, int]:
        return {chi: sum(row[chi - 1] for row in self.counts) for chi in range(1, self.n + 1)}

    def row_totals(self) -> list[int]:
        return [sum(row) for row in self.counts]

    def total(self) -> int:
        return sum(self.row_totals())

    def as_array(self) -> np.ndarray:
        return np.array(self.counts, dtype=object)

    def violations(self) -> list[str]:
        """Human-readable list of broken counting invariants (empty if none)."""
        n, N = self.n, num_pairs(self.n)
        out = []
        if len(self.counts) != N + 1 or any(len(r) != n for r in self.counts):
            return [f"table shape must be ({N + 1}, {n})"]
        for m, row in enumerate(self.counts):
            if any(c < 0 for c in row):
                out.append(f"row edges={m}: negative count")
            if sum(row) != math.comb(N, m):
                out.append(f"row edges={m}: total {sum(row)} != C({N},{m}) = {math.comb(N, m)}")
            if m >= 1 and row[0] != 0:
                out.append(f"cell (edges={m}, chromatic=1): {row[0]} != 0")
        if self.counts[0][0] != 1:
            out.append("cell (edges=0, chromatic=1) must be 1")
        if self.counts[N][n - 1] != 1:
            out.append(f"cell (edges={N}, chromatic={n}) must be 1")
        return out

    def diff(self, other: ChromaticCensus) -> list[tuple[int, int, int, int]]:
        """Cells ``(edges, chi, mine, theirs)`` where two censuses disagree."""
        if self.n != other.n:
            raise ValueError("censuses of different orders")
        out = []
        for m, (a, b) in enumerate(zip(self.counts, other.counts)):
            for chi, (x, y) in enumerate(zip(a, b), start=1):
                if x != y:
                    out.append((m, chi, x, y))
        return out

    def merge(self, other: ChromaticCensus) -> ChromaticCensus:
        if self.n != other.n:
            raise ValueError("censuses of different orders")
        return ChromaticCensus(
            self.n,
            tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.counts, other.counts)),
        )

    # -- CSV --------------------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CENSUS_HEADER)
        for m, row in enumerate(self.counts):
            for chi, c in enumerate(row, start=1):
                if c:
                    w.writerow([self.n, m, chi, c])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, validate: bool = True) -> ChromaticCensus:
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise CensusFixtureError("empty census file") from None
        if [h.strip() for h in header] != CENSUS_HEADER:
            raise CensusFixtureError(f"bad header {header!r}, expected {','.join(CENSUS_HEADER)}")
        cells = {}
        order = None
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise CensusFixtureError(f"line {lineno}: expected 4 fields, got {len(row)}")
            try:
                n, m, chi, c = (int(x) for x in row)
            except ValueError:
                raise CensusFixtureError(f"line {lineno}: non-integer field in {row!r}") from None
            if order is None:
                order = n
            if n != order:
                raise CensusFixtureError(f"line {lineno}: order {n} differs from {order}")
            if not (0 <= m <= num_pairs(n) and 1 <= chi <= n):
                raise CensusFixtureError(f"line {lineno}: cell (edges={m}, chromatic={chi}) out of range")
            if (m, chi) in cells:
                raise CensusFixtureError(f"line {lineno}: duplicate cell (edges={m}, chromatic={chi})")
            cells[m, chi] = c
        if order is None:
            raise CensusFixtureError("census file has no rows")
        N = num_pairs(order)
        counts = tuple(
            tuple(cells.get((m, chi), 0) for chi in range(1, order + 1)) for m in range(N + 1)
        )
        census = cls(order, counts)
        if validate:
            problems = census.violations()
            if problems:
                raise CensusFixtureError("; ".join(problems))
        return census


@njit(cache=True, nogil=True)
def _census_block(n, pu, pv, lo, hi, counts):
    npairs = pu.shape[0]
    adj = np.zeros(n, dtype=np.uint64)
    colors = np.empty(n, dtype=np.int64)
    work = np.empty((4, n), dtype=np.int64)
    for idx in range(lo, hi):
        for v in range(n):
            adj[v] = uint64(0)
        m = 0
        for k in range(npairs):
            if (idx >> k) & 1:
                adj[pu[k]] |= uint64(1) << uint64(pv[k])
                adj[pv[k]] |= uint64(1) << uint64(pu[k])
                m += 1
        chi = chi_kernel(adj, n, colors, work)
        counts[m, chi - 1] += 1


def build_census(n: int, threads: int = 1, max_order: int | None = None, blocks: int | None = None) -> ChromaticCensus:
    """Count every labeled graph of order ``n`` by edge count and chromatic number.

    The index space is cut into contiguous blocks whose partial tables are
    summed, so the result does not depend on ``threads``.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    check_exhaustive_order(n, max_order, "census")
    N = num_pairs(n)
    total = 1 << N
    pairs = pair_list(n)
    pu, pv = pairs[:, 0].copy(), pairs[:, 1].copy()
    if blocks is None:
        blocks = max(1, min(64, total // 4096))
    edges = np.linspace(0, total, blocks + 1).astype(np.int64)
    parts = np.zeros((blocks, N + 1, n), dtype=np.int64)

    def run(b):
        _census_block(n, pu, pv, int(edges[b]), int(edges[b + 1]), parts[b])

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(run, range(blocks)))
    else:
        for b in range(blocks):
            run(b)
    counts = parts.sum(axis=0)
    return ChromaticCensus(n, tuple(tuple(int(c) for c in row) for row in counts))


# --------------------------------------------------------------------------
# expectation polynomial


@dataclass(frozen=True)
class ExpectationPolynomial:
    """Expected chromatic number of G(n, p) as exact integer coefficients of
    ``p**k``, ascending."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, p: float) -> float:
        return evaluate_polynomial(self, p)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "coeffs": [str(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> ExpectationPolynomial:
        obj = json.loads(text)
        return cls(int(obj["n"]), tuple(int(c) for c in obj["coeffs"]))


def census_to_polynomial(c: ChromaticCensus) -> ExpectationPolynomial:
    """Expand ``sum chi * count[m][chi] * p**m (1-p)**(N-m)`` in integers."""
    N = num_pairs(c.n)
    coeffs = [0] * (N + 1)
    for m, row in enumerate(c.counts):
        weight = sum(chi * cnt for chi, cnt in enumerate(row, start=1))
        if not weight:
            continue
        for j in range(N - m + 1):
            term = weight * math.comb(N - m, j)
            coeffs[m + j] += -term if j & 1 else term
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return ExpectationPolynomial(c.n, tuple(coeffs))


def evaluate_polynomial(poly: ExpectationPolynomial, p: float) -> float:
    """Horner evaluation at ``p``.

    Runs in exact rational arithmetic on the binary value of ``p``; the large
    alternating coefficients at ``n >= 8`` cancel badly in floating point.
    """
    check_probability(p)
    x = Fraction(p)
    acc = Fraction(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return float(acc)


# --------------------------------------------------------------------------
# shipped fixtures


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("chibar") / "data"))


def fixture_path(n: int) -> Path:
    return fixture_dir() / f"census_n{n}.csv"


def ingest_census_fixture(path, validate: bool = True) -> ChromaticCensus:
    """Load a census CSV (``n,edges,chromatic,count``) and check its invariants."""
    text = Path(path).read_text(encoding="utf-8")
    return ChromaticCensus.from_csv(text, validate=validate)


def load_fixture(n: int, validate: bool = True) -> ChromaticCensus:
    return ingest_census_fixture(fixture_path(n), validate=validate)


def printed_polynomials() -> dict[int, tuple[int, ...]]:
    """Published coefficient lists for orders 1..9, ascending degree."""
    path = fixture_dir() / "printed_polynomials.json"
    raw = json.loads(path.read_text(encoding="utf-8"))
    return {int(k): tuple(int(c) for c in v) for k, v in raw.items()}


def exact_polynomial(n: int) -> ExpectationPolynomial:
    """Expectation polynomial from the shipped census (n = 1 is the constant 1)."""
    if n == 1:
        return ExpectationPolynomial(1, (1,))
    return census_to_polynomial(load_fixture(n))


def write_atomic(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    os.replace(tmp, path)
