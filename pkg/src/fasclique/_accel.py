"""Optional numba acceleration.

Kernels are written once as plain Python over numpy arrays.  When numba is
importable and ``FASCLIQUE_NUMBA`` is not set to ``0``, the decorated
functions are compiled with ``njit``; otherwise callers get the numpy path.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("FASCLIQUE_NUMBA", "1") != "0"


def njit(func):
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)
