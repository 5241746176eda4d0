"""Backend dispatch for the hot kernels.

The choice is made once at import time; set REACHEST_DISABLE_NUMBA=1
before importing reachest to force the numpy/scipy path.
"""

from . import backend

if backend.use_numba():
    from . import _kernels_numba as _impl

    BACKEND = "numba"
else:
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"

crit_radius_scalar = _impl.crit_radius_scalar
dijkstra_rows = _impl.dijkstra_rows
reach_scan = _impl.reach_scan
nn_statistic = _impl.nn_statistic
directed_max_min = _impl.directed_max_min
