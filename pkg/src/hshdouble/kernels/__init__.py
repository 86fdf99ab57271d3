"""Hot loops behind a backend switch.

Set ``HSHDOUBLE_DISABLE_NUMBA=1`` to force the pure-numpy path. numba is
also skipped when it cannot be imported. Both implementations are always
importable as :mod:`._numpy` and :mod:`._numba` so they can be benchmarked
and cross-checked side by side.

All kernels work in place on 1-D contiguous arrays whose length is a power
of two, with basis indices below ``2**32``.
"""

import os

from . import _numpy as numpy_kernels

_DISABLED = os.environ.get("HSHDOUBLE_DISABLE_NUMBA", "").strip().lower() in (
    "1", "true", "yes", "on")

numba_kernels = None
if not _DISABLED:
    try:
        from . import _numba as numba_kernels
    except ImportError:  # pragma: no cover - numba missing
        numba_kernels = None

_active = numba_kernels if numba_kernels is not None else numpy_kernels

BACKEND = "numba" if _active is numba_kernels else "numpy"

fwht = _active.fwht
s_phase = _active.s_phase
residue_counts = _active.residue_counts

__all__ = ["BACKEND", "fwht", "s_phase", "residue_counts",
           "numpy_kernels", "numba_kernels"]
