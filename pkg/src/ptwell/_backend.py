"""Kernel backend selection.

Numba-compiled kernels are used when numba imports and the environment
variable ``PTWELL_DISABLE_NUMBA`` is unset or falsy. Setting it to ``1``
forces the vectorised numpy path.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

DISABLE_FLAG = "PTWELL_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
NUMBA_DISABLED = os.environ.get(DISABLE_FLAG, "").strip().lower() not in _FALSY
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def njit(func):
    """Compile ``func`` lazily with numba, or return it untouched."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
