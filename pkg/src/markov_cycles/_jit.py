"""Optional numba acceleration.

Set ``MARKOV_CYCLES_DISABLE_JIT=1`` to run the pure numpy/Python kernels.
Numba being absent has the same effect.
"""

from __future__ import annotations

import os

_FLAG = "MARKOV_CYCLES_DISABLE_JIT"

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_ENABLED = numba is not None and os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes")


def njit(fn):
    """Compile ``fn`` with ``numba.njit`` when enabled, else return it unchanged."""
    if not JIT_ENABLED:
        return fn
    return numba.njit(cache=True)(fn)
