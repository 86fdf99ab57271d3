"""numba-compiled kernels; same contracts as the numpy path."""

import numpy as np
from numba import njit


@njit(inline="always")
def _popcount(x):
    # valid for 0 <= x < 2**32
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return ((x * 0x01010101) & 0xFFFFFFFF) >> 24


@njit(cache=True, nogil=True)
def fwht(a, targets):
    size = a.shape[0]
    for t in targets:
        h = 1 << t
        for base in range(0, size, 2 * h):
            for j in range(base, base + h):
                u = a[j]
                v = a[j + h]
                a[j] = u + v
                a[j + h] = u - v


@njit(cache=True, nogil=True)
def s_phase(a, mask):
    for x in range(a.shape[0]):
        k = _popcount(x & mask) & 3
        if k == 0:
            continue
        v = a[x]
        if k == 1:
            a[x] = complex(-v.imag, v.real)
        elif k == 2:
            a[x] = -v
        else:
            a[x] = complex(v.imag, -v.real)


@njit(cache=True, nogil=True)
def residue_counts(z, start, stop, skip_a, skip_b):
    counts = np.zeros(4, dtype=np.int64)
    for x in range(start, stop):
        if x == skip_a or x == skip_b:
            continue
        r = (_popcount(x) + 2 * (_popcount(x & z) & 1)) & 3
        counts[r] += 1
    return counts
