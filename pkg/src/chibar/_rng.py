"""Counter-based random draws usable from both Python and numba kernels.

Every draw is a pure function of ``(key, counter)``: a stream key is derived
from ``(seed, stream tag, sample id)`` and the counter enumerates draws within
that stream.  The mixing function is the SplitMix64 finalizer.
"""

import numpy as np
from numba import njit, uint64

MASK64 = (1 << 64) - 1

# Stream tags keep graph sampling and IRCM pair selection independent.
GRAPH_STREAM = 0x6772617068
IRCM_STREAM = 0x6972636D


@njit(cache=True, nogil=True)
def mix64(z):
    z = (z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)
    return z ^ (z >> uint64(31))


@njit(cache=True, nogil=True)
def counter_draw(key, counter):
    """Raw 64-bit draw number ``counter`` of stream ``key``."""
    return mix64(key + (counter + uint64(1)) * uint64(0x9E3779B97F4A7C15))


@njit(cache=True, nogil=True)
def counter_uniform(key, counter):
    """Uniform double in [0, 1) with 53 random bits."""
    return (counter_draw(key, counter) >> uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True, nogil=True)
def _derive_key(seed, tag, sample_id):
    k = mix64(seed + uint64(0x9E3779B97F4A7C15))
    k = mix64((k ^ tag) + uint64(0x9E3779B97F4A7C15))
    return mix64((k + sample_id) + uint64(0x9E3779B97F4A7C15))


@njit(cache=True, nogil=True)
def _derive_keys(seed, tag, count):
    out = np.empty(count, dtype=np.uint64)
    for i in range(count):
        out[i] = _derive_key(seed, tag, uint64(i))
    return out


def stream_key(seed: int, tag: int, sample_id: int) -> np.uint64:
    """Key of the stream for ``(seed, tag, sample_id)``.

    Distinct argument triples give unrelated streams; the key never depends on
    how work is split across threads.
    """
    if sample_id < 0:
        raise ValueError("sample_id must be nonnegative")
    return np.uint64(
        _derive_key(np.uint64(seed & MASK64), np.uint64(tag), np.uint64(sample_id))
    )


def stream_keys(seed: int, tag: int, count: int) -> np.ndarray:
    """Keys for sample ids ``0 .. count-1``."""
    return _derive_keys(np.uint64(seed & MASK64), np.uint64(tag), count)
