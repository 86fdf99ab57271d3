"""Pure-numpy kernels. Reference path and fallback when numba is disabled."""

import numpy as np

_PHASES = np.array([1, 1j, -1, -1j], dtype=np.complex128)
_CHUNK = 1 << 20


def fwht(a, targets):
    """Unnormalised in-place Walsh-Hadamard butterflies on each target qubit."""
    for t in targets:
        h = 1 << int(t)
        v = a.reshape(-1, 2, h)
        lo, hi = v[:, 0, :], v[:, 1, :]
        lo += hi
        # hi <- (lo + hi) - 2 hi, no temporary
        hi *= -2
        hi += lo


def s_phase(a, mask):
    """Multiply ``a[x]`` by ``i**popcount(x & mask)`` in place."""
    for start in range(0, a.shape[0], _CHUNK):
        stop = min(start + _CHUNK, a.shape[0])
        idx = np.arange(start, stop, dtype=np.int64)
        k = np.bitwise_count(idx & mask) & 3
        a[start:stop] *= _PHASES[k]


def residue_counts(z, start, stop, skip_a, skip_b):
    """Count ``x`` in ``[start, stop)`` by ``(w(x) + 2*(x.z mod 2)) mod 4``.

    ``skip_a``/``skip_b`` are excluded from the count; pass -1 for none.
    """
    counts = np.zeros(4, dtype=np.int64)
    for lo in range(start, stop, _CHUNK):
        hi = min(lo + _CHUNK, stop)
        x = np.arange(lo, hi, dtype=np.int64)
        r = (np.bitwise_count(x) + 2 * (np.bitwise_count(x & z) & 1)) & 3
        keep = (x != skip_a) & (x != skip_b)
        counts += np.bincount(r[keep], minlength=4)
    return counts
