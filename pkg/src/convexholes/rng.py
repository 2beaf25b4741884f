"""Counter-based random streams (Philox4x32-10).

Every random draw is a pure function of (master_seed, trial, draw_index), so
trials can run in any order, on any number of workers, and still produce
bit-identical output.  One draw yields 128 random bits.
"""
from __future__ import annotations

import numba
import numpy as np
from numba import njit

_M32 = np.uint64(0xFFFFFFFF)
_MUL0 = np.uint64(0xD2511F53)
_MUL1 = np.uint64(0xCD9E8D57)
_WEYL0 = np.uint64(0x9E3779B9)
_WEYL1 = np.uint64(0xBB67AE85)

_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(numba.types.UniTuple(numba.uint64, 4)(numba.uint64, numba.uint64, numba.uint64),
      cache=True, nogil=True, inline="always")
def _philox_words(master_seed, trial, index):
    """Return the four 32-bit output words of Philox4x32-10.

    Counter = (index lo, index hi, trial lo, trial hi); key = master_seed.
    """
    c0 = index & _M32
    c1 = (index >> np.uint64(32)) & _M32
    c2 = trial & _M32
    c3 = (trial >> np.uint64(32)) & _M32
    k0 = master_seed & _M32
    k1 = (master_seed >> np.uint64(32)) & _M32
    for _ in range(10):
        p0 = _MUL0 * c0
        p1 = _MUL1 * c2
        hi0 = (p0 >> np.uint64(32)) & _M32
        lo0 = p0 & _M32
        hi1 = (p1 >> np.uint64(32)) & _M32
        lo1 = p1 & _M32
        n0 = hi1 ^ c1 ^ k0
        n1 = lo1
        n2 = hi0 ^ c3 ^ k1
        n3 = lo0
        c0, c1, c2, c3 = n0, n1, n2, n3
        k0 = (k0 + _WEYL0) & _M32
        k1 = (k1 + _WEYL1) & _M32
    return c0, c1, c2, c3


@njit(numba.types.UniTuple(numba.uint64, 2)(numba.uint64, numba.uint64, numba.uint64),
      cache=True, nogil=True, inline="always")
def _draw_u64_pair(master_seed, trial, index):
    """Two independent uniform 64-bit words from one counter position."""
    w0, w1, w2, w3 = _philox_words(master_seed, trial, index)
    a = w0 | (w1 << np.uint64(32))
    b = w2 | (w3 << np.uint64(32))
    return a, b


@njit(numba.float64(numba.uint64), cache=True, nogil=True, inline="always")
def _u64_to_unit(u):
    """Uniform double in [0, 1) using the top 53 bits."""
    return float(u >> np.uint64(11)) * _INV_2_53


def draw_u64_pair(master_seed: int, trial: int, index: int) -> tuple[int, int]:
    """Python-facing wrapper around the jitted draw (used by tests and the
    slow exact sampling path)."""
    a, b = _draw_u64_pair(np.uint64(master_seed), np.uint64(trial), np.uint64(index))
    return int(a), int(b)


def draw_unit_pair(master_seed: int, trial: int, index: int) -> tuple[float, float]:
    a, b = draw_u64_pair(master_seed, trial, index)
    return (a >> 11) * _INV_2_53, (b >> 11) * _INV_2_53
