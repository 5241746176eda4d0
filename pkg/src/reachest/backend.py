"""Selects the numeric kernel backend.

Hot inner loops (Dijkstra sweeps, the per-pair critical-radius scan,
brute-force distance statistics) exist twice: as numba ``@njit`` kernels
and as numpy/scipy fallbacks.  Set ``REACHEST_DISABLE_NUMBA=1`` before
importing the package to force the fallback path.  Kernel threading is
controlled by numba's usual ``NUMBA_NUM_THREADS`` variable.
"""

import os

DISABLE_NUMBA_ENV = "REACHEST_DISABLE_NUMBA"


def numba_requested() -> bool:
    return os.environ.get(DISABLE_NUMBA_ENV, "").strip() in ("", "0")


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def use_numba() -> bool:
    return numba_requested() and numba_available()
