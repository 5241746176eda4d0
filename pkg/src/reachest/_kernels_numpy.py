"""numpy/scipy fallbacks for the hot kernels.

Shortest paths go through scipy.sparse.csgraph; the critical-radius
bisection is vectorized with masked updates so it follows exactly the
same iteration sequence as the scalar numba kernel.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

_CHUNK = 512


_Q_AT_ONE = np.pi / 2.0 - 1.0


def _asin_excess_ratio(x):
    """(arcsin(x) - x) / x without cancellation for small x (series branch)."""
    x = np.asarray(x, dtype=float)
    direct = x > 0.5
    out = np.empty_like(x)
    xd = np.minimum(x[direct], 1.0)
    out[direct] = (np.arcsin(xd) - xd) / np.where(xd > 0, xd, 1.0)
    xs = x[~direct]
    x2 = xs * xs
    coeff = 1.0 / 6.0
    term = coeff * x2
    total = term.copy()
    for n in range(2, 60):
        coeff *= (2.0 * n - 1.0) ** 2 / (2.0 * n * (2.0 * n + 1.0))
        term = coeff * x2**n
        total += term
        if (term <= 1e-17 * total).all():
            break
    out[~direct] = total
    return out


def crit_radius_vec(e, g, kappa, tol):
    """Vectorized bisection in x = e/(2r); same semantics as the scalar kernel."""
    e = np.asarray(e, dtype=float)
    g = np.asarray(g, dtype=float)
    out = np.full(e.shape, np.inf)
    t = (g - kappa * e) / (kappa * e)
    low_regime = t >= _Q_AT_ONE
    out[low_regime] = e[low_regime] / 2.0
    mid_regime = ~low_regime & (t > 0.0)
    tt = t[mid_regime]
    if tt.size:
        lo = np.zeros_like(tt)
        hi = np.ones_like(tt)
        for _ in range(200):
            open_ = (hi - lo) > tol * lo
            if not open_.any():
                break
            mid = 0.5 * (lo + hi)
            shrink_lo = open_ & (_asin_excess_ratio(mid) < tt)
            lo = np.where(shrink_lo, mid, lo)
            hi = np.where(open_ & ~shrink_lo, mid, hi)
        out[mid_regime] = e[mid_regime] / (lo + hi)
    return out


def crit_radius_scalar(e, g, kappa, tol):
    return float(crit_radius_vec(np.array([e]), np.array([g]), kappa, tol)[0])


def dijkstra_rows(indptr, indices, weights, n, sources):
    graph = csr_matrix((weights, indices, indptr), shape=(n, n))
    out = _sp_dijkstra(graph, directed=False, indices=sources)
    return np.atleast_2d(out)


def reach_scan(points, indptr, indices, weights, kappa, tol):
    n = points.shape[0]
    geo = dijkstra_rows(indptr, indices, weights, n, np.arange(n))
    best_r = np.full(n, np.inf)
    best_j = np.full(n, -1, np.int64)
    active = np.zeros(n, np.int64)
    disconnected = np.zeros(n, np.uint8)
    zero_chords = np.zeros(n, np.int64)
    for s in range(n - 1):
        chord = np.linalg.norm(points[s + 1 :] - points[s], axis=1)
        g = geo[s, s + 1 :]
        zero = chord == 0.0
        zero_chords[s] = int(zero.sum())
        far = ~zero & np.isinf(g)
        disconnected[s] = 1 if far.any() else 0
        r = np.full(chord.shape, np.inf)
        r[far] = chord[far] / 2.0
        rest = ~zero & ~far
        r[rest] = crit_radius_vec(chord[rest], g[rest], kappa, tol)
        finite = np.isfinite(r)
        active[s] = int(finite.sum())
        if finite.any():
            k = int(np.argmin(np.where(finite, r, np.inf)))
            best_r[s] = r[k]
            best_j[s] = s + 1 + k
    return best_r, best_j, active, disconnected, zero_chords


def nn_statistic(points):
    n = points.shape[0]
    worst = -1.0
    for start in range(0, n, _CHUNK):
        block = points[start : start + _CHUNK]
        d2 = ((block[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
        d2[d2 == 0.0] = np.inf
        mins = d2.min(axis=1)
        finite = np.isfinite(mins)
        if finite.any():
            worst = max(worst, float(np.sqrt(mins[finite].max())))
    return worst


def directed_max_min(a, b):
    worst = 0.0
    for start in range(0, a.shape[0], _CHUNK):
        block = a[start : start + _CHUNK]
        d2 = ((block[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
        worst = max(worst, float(np.sqrt(d2.min(axis=1).max())))
    return worst
