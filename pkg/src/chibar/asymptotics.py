"""Large-order estimates: the vertex-addition recurrence and Bollobás' bounds.

Adding a vertex joined to about ``n p`` of ``n`` existing vertices keeps the
expected colour count ``c`` with probability ``q = c ((c-1)/c)**(n p)`` and
raises it by one otherwise, so ``c_{n+1} = c_n + 1 - q_n``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .graph import check_probability

NATURAL = "natural"
BASE_D = "base-d"
BASE_2 = "base-2"
CONVENTIONS = (NATURAL, BASE_D, BASE_2)


def q_factor(chi: float, n: int, p: float) -> float:
    """Probability that the new vertex sees at most ``chi - 1`` colours (0**0 = 1)."""
    if chi < 1:
        raise ValueError(f"expected chromatic number must be >= 1, got {chi}")
    return chi * ((chi - 1.0) / chi) ** (n * p)


def recurrence_step(chi: float, n: int, p: float, clamp: bool = False) -> float:
    """One step ``n -> n + 1`` of the recurrence.

    With ``clamp`` the keep-probability is clipped to ``[0, 1]`` first; unclamped
    it can exceed 1 when ``n p`` is small and the estimate then decreases.
    """
    check_probability(p)
    q = q_factor(chi, n, p)
    if clamp:
        q = min(max(q, 0.0), 1.0)
    return chi + 1.0 - q


@dataclass(frozen=True)
class RecurrenceTrajectory:
    """Values ``chi_bar`` for ``n = n0 .. n_end`` and the ``q`` used at each ``n``."""

    p: float
    n0: int
    chi0: float
    clamp: bool
    ns: np.ndarray
    values: np.ndarray
    qs: np.ndarray

    @property
    def final(self) -> float:
        return float(self.values[-1])

    def value_at(self, n: int) -> float:
        if not self.n0 <= n <= self.ns[-1]:
            raise IndexError(f"order {n} outside trajectory [{self.n0}, {self.ns[-1]}]")
        return float(self.values[n - self.n0])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,chi_bar,q\n")
        for n, v, q in zip(self.ns, self.values, self.qs):
            buf.write(f"{int(n)},{float(v)!r},{float(q)!r}\n")
        return buf.getvalue()


def recurrence_trajectory(n0: int, chi0: float, p: float, n_end: int, clamp: bool = False) -> RecurrenceTrajectory:
    """Iterate :func:`recurrence_step` from ``(n0, chi0)`` up to order ``n_end``."""
    if n0 < 1:
        raise ValueError("n0 must be a positive integer")
    if n_end < n0:
        raise ValueError("n_end must be >= n0")
    check_probability(p)
    if chi0 < 1:
        raise ValueError(f"initial value must be >= 1, got {chi0}")
    count = n_end - n0 + 1
    values = np.empty(count)
    qs = np.empty(count)
    chi = float(chi0)
    for i in range(count):
        n = n0 + i
        q = q_factor(chi, n, p)
        if clamp:
            q = min(max(q, 0.0), 1.0)
        values[i] = chi
        qs[i] = q
        chi = chi + 1.0 - q
    return RecurrenceTrajectory(float(p), n0, float(chi0), clamp, np.arange(n0, n_end + 1), values, qs)


@dataclass(frozen=True)
class BollobasBounds:
    n: int
    p: float
    d: float
    lower: float
    upper: float
    inner_log_base: str = NATURAL

    def contains(self, value: float) -> bool:
        return self.lower < value < self.upper


def _inner_log(x: float, d: float, convention: str) -> float:
    if convention == NATURAL:
        return math.log(x)
    if convention == BASE_D:
        return math.log(x) / math.log(d)
    if convention == BASE_2:
        return math.log2(x)
    raise ValueError(f"unknown log convention {convention!r}; choose from {CONVENTIONS}")


def bollobas_bounds(n: int, p: float, inner_log_base: str = NATURAL) -> BollobasBounds:
    """Lower and upper bounds ``n / (2 log_d n) (1 + c log_d(log n) / log n)``,
    ``c = 1, 3``, with ``d = 1/(1-p)``.

    ``inner_log_base`` selects the base of the bare ``log n`` in the
    correction term.
    """
    if n < 3:
        raise ValueError("bounds need n >= 3")
    if not 0.0 < p < 1.0:
        raise ValueError(f"bounds need 0 < p < 1, got {p}")
    d = 1.0 / (1.0 - p)
    ln_d = math.log(d)
    lead = n / (2.0 * math.log(n) / ln_d)
    inner = _inner_log(n, d, inner_log_base)
    if inner <= 0.0:
        raise ValueError(f"log n is not positive under {inner_log_base!r} for n={n}, p={p}")
    ratio = (math.log(inner) / ln_d) / inner
    return BollobasBounds(n, float(p), d, lead * (1.0 + ratio), lead * (1.0 + 3.0 * ratio), inner_log_base)


def n_valid(p: float, inner_log_base: str = NATURAL) -> int:
    """Smallest ``n >= 3`` from which ``lower <= upper`` (the inner log is >= 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"bounds need 0 < p < 1, got {p}")
    d = 1.0 / (1.0 - p)
    n = 3
    while _inner_log(n, d, inner_log_base) < 1.0:
        n += 1
    return n


def bounds_csv(bounds) -> str:
    buf = io.StringIO()
    buf.write("n,p,lower,upper,convention\n")
    for b in bounds:
        buf.write(f"{b.n},{b.p!r},{b.lower!r},{b.upper!r},{b.inner_log_base}\n")
    return buf.getvalue()
