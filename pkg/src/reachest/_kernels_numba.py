"""Numba implementations of the hot kernels.

All kernels take plain arrays (point matrix, CSR adjacency) so they stay
cacheable and backend-swappable; the wrappers in :mod:`reachest.kernels`
pick between this module and :mod:`reachest._kernels_numpy`.
"""

import math

import numpy as np
from numba import njit, prange


_Q_AT_ONE = math.pi / 2.0 - 1.0


@njit(cache=True)
def _asin_excess_ratio(x):
    """(arcsin(x) - x) / x, computed without cancellation for small x."""
    if x > 0.5:
        return (math.asin(x) - x) / x
    x2 = x * x
    coeff = 1.0 / 6.0
    term = coeff * x2
    total = term
    n = 1
    while term > 1e-17 * total and n < 60:
        n += 1
        coeff *= (2.0 * n - 1.0) ** 2 / (2.0 * n * (2.0 * n + 1.0))
        term = coeff * x2 ** n
        total += term
    return total


@njit(cache=True)
def crit_radius_scalar(e, g, kappa, tol):
    """Largest r for which g <= 2*kappa*r*arcsin(e/(2r)) still holds.

    h(r) = 2*kappa*r*arcsin(e/(2r)) decreases from kappa*pi*e/2 (r -> e/2)
    to kappa*e (r -> inf), so the feasible set in r is (e/2, r*].
    Returns +inf when the constraint is never violated and e/2 when it is
    violated for every r (including g = +inf for disconnected pairs).

    Solved in x = e/(2r): (arcsin(x) - x)/x is increasing, and the target
    (g - kappa*e)/(kappa*e) is exact in the delicate near-straight regime,
    which keeps the root well conditioned for small chords.
    """
    t = (g - kappa * e) / (kappa * e)
    if t <= 0.0:
        return np.inf
    if t >= _Q_AT_ONE:
        return e / 2.0
    lo = 0.0
    hi = 1.0
    for _ in range(200):
        if hi - lo <= tol * lo:
            break
        mid = 0.5 * (lo + hi)
        if _asin_excess_ratio(mid) < t:
            lo = mid
        else:
            hi = mid
    return e / (lo + hi)


@njit(cache=True)
def _dijkstra_one(indptr, indices, weights, source, n, cap):
    """Single-source shortest paths, binary heap with lazy deletion."""
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    heap_d = np.empty(cap)
    heap_v = np.empty(cap, np.int64)
    heap_d[0] = 0.0
    heap_v[0] = source
    size = 1
    while size > 0:
        d0 = heap_d[0]
        v = heap_v[0]
        size -= 1
        heap_d[0] = heap_d[size]
        heap_v[0] = heap_v[size]
        i = 0
        while True:
            left = 2 * i + 1
            if left >= size:
                break
            child = left
            right = left + 1
            if right < size and heap_d[right] < heap_d[left]:
                child = right
            if heap_d[child] < heap_d[i]:
                heap_d[i], heap_d[child] = heap_d[child], heap_d[i]
                heap_v[i], heap_v[child] = heap_v[child], heap_v[i]
                i = child
            else:
                break
        if d0 > dist[v]:
            continue
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            nd = d0 + weights[k]
            if nd < dist[w]:
                dist[w] = nd
                i = size
                heap_d[i] = nd
                heap_v[i] = w
                size += 1
                while i > 0:
                    parent = (i - 1) // 2
                    if heap_d[parent] > heap_d[i]:
                        heap_d[parent], heap_d[i] = heap_d[i], heap_d[parent]
                        heap_v[parent], heap_v[i] = heap_v[i], heap_v[parent]
                        i = parent
                    else:
                        break
    return dist


@njit(cache=True, parallel=True)
def dijkstra_rows(indptr, indices, weights, n, sources):
    out = np.empty((sources.shape[0], n))
    cap = weights.shape[0] + n + 1
    for t in prange(sources.shape[0]):
        out[t] = _dijkstra_one(indptr, indices, weights, sources[t], n, cap)
    return out


@njit(cache=True, parallel=True)
def reach_scan(points, indptr, indices, weights, kappa, tol):
    """Fused all-sources Dijkstra + per-pair critical-radius minimum.

    Returns per-source arrays (minimum radius, arg j, active-pair count,
    disconnected flag, zero-chord pair count); the caller reduces them.
    """
    n = points.shape[0]
    dim = points.shape[1]
    cap = weights.shape[0] + n + 1
    best_r = np.full(n, np.inf)
    best_j = np.full(n, -1, np.int64)
    active = np.zeros(n, np.int64)
    disconnected = np.zeros(n, np.uint8)
    zero_chords = np.zeros(n, np.int64)
    for s in prange(n - 1):
        dist = _dijkstra_one(indptr, indices, weights, s, n, cap)
        for j in range(s + 1, n):
            e2 = 0.0
            for c in range(dim):
                t = points[s, c] - points[j, c]
                e2 += t * t
            e = math.sqrt(e2)
            if e == 0.0:
                zero_chords[s] += 1
                continue
            g = dist[j]
            if g == np.inf:
                disconnected[s] = 1
                r = e / 2.0
            else:
                r = crit_radius_scalar(e, g, kappa, tol)
            if r != np.inf:
                active[s] += 1
                if r < best_r[s]:
                    best_r[s] = r
                    best_j[s] = j
    return best_r, best_j, active, disconnected, zero_chords


@njit(cache=True)
def nn_statistic(points):
    """max over i of the distance to the nearest point at distance > 0.

    Returns -1.0 when no point has a distinct neighbour.
    """
    n = points.shape[0]
    dim = points.shape[1]
    worst = -1.0
    for i in range(n):
        nearest = np.inf
        for j in range(n):
            if j == i:
                continue
            d2 = 0.0
            for c in range(dim):
                t = points[i, c] - points[j, c]
                d2 += t * t
            if 0.0 < d2 < nearest:
                nearest = d2
        if nearest < np.inf:
            d = math.sqrt(nearest)
            if d > worst:
                worst = d
    return worst


@njit(cache=True, parallel=True)
def directed_max_min(a, b):
    """max over rows of a of the distance to the nearest row of b."""
    n = a.shape[0]
    dim = a.shape[1]
    mins = np.empty(n)
    for i in prange(n):
        nearest = np.inf
        for j in range(b.shape[0]):
            d2 = 0.0
            for c in range(dim):
                t = a[i, c] - b[j, c]
                d2 += t * t
            if d2 < nearest:
                nearest = d2
        mins[i] = math.sqrt(nearest)
    return mins.max()
