"""Point clouds, a uniform-grid spatial index and elementary set distances."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from . import kernels

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointCloud:
    """An ordered finite sample in R^D, stored as an (n, D) float array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError("points must be an (n, D) array with D >= 1")
        if not np.isfinite(pts).all():
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


def as_points(cloud) -> np.ndarray:
    return cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=float)


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


@dataclass
class GridIndex:
    """Uniform grid over a point cloud; cell side defaults to the query radius.

    Range queries are exact (candidate cells are scanned, then filtered by
    true distance, ties at the radius included).
    """

    points: np.ndarray
    cell: float
    origin: np.ndarray = field(init=False)
    cells: dict = field(init=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.cell <= 0:
            raise ValueError("cell side must be positive")
        self.origin = self.points.min(axis=0)
        keys = np.floor((self.points - self.origin) / self.cell).astype(np.int64)
        cells: dict = {}
        for i, key in enumerate(map(tuple, keys)):
            cells.setdefault(key, []).append(i)
        self.cells = {k: np.asarray(v, dtype=np.int64) for k, v in cells.items()}

    def _key(self, q: np.ndarray) -> tuple:
        return tuple(np.floor((q - self.origin) / self.cell).astype(np.int64))

    def range_query(self, q, radius: float) -> np.ndarray:
        """Ids of all points at Euclidean distance <= radius from q."""
        q = np.asarray(q, dtype=float)
        if q.shape != (self.points.shape[1],):
            raise ValueError("query dimension mismatch")
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        reach_cells = int(np.ceil(radius / self.cell)) if radius > 0 else 0
        center = self._key(q)
        candidates = []
        for offset in itertools.product(range(-reach_cells, reach_cells + 1), repeat=len(center)):
            ids = self.cells.get(tuple(c + o for c, o in zip(center, offset)))
            if ids is not None:
                candidates.append(ids)
        if not candidates:
            return np.empty(0, dtype=np.int64)
        ids = np.concatenate(candidates)
        d = np.linalg.norm(self.points[ids] - q, axis=1)
        return np.sort(ids[d <= radius])

    def nearest(self, q) -> int:
        """Id of the closest point to q (exact, expanding shell search)."""
        q = np.asarray(q, dtype=float)
        center = self._key(q)
        dim = len(center)
        far_corner = np.maximum(np.abs(q - self.origin), np.abs(q - self.points.max(axis=0)))
        max_shell = int(np.ceil(np.linalg.norm(far_corner) / self.cell)) + 2
        best = -1
        best_d = np.inf
        for shell in range(max_shell + 1):
            for offset in itertools.product(range(-shell, shell + 1), repeat=dim):
                if shell > 0 and max(abs(o) for o in offset) != shell:
                    continue
                ids = self.cells.get(tuple(c + o for c, o in zip(center, offset)))
                if ids is None:
                    continue
                d = np.linalg.norm(self.points[ids] - q, axis=1)
                k = int(np.argmin(d))
                if d[k] < best_d:
                    best_d = float(d[k])
                    best = int(ids[k])
            # every point in an unvisited cell lies at distance >= shell*cell
            if best >= 0 and best_d <= shell * self.cell:
                break
        return best


def hausdorff_distance(a, b) -> float:
    """max of the two directed max-min distances between finite point sets."""
    pa, pb = as_points(a), as_points(b)
    if pa.size == 0 or pb.size == 0:
        raise ValueError("hausdorff_distance requires nonempty point sets")
    if pa.shape[1] != pb.shape[1]:
        raise ValueError("dimension mismatch")
    return max(kernels.directed_max_min(pa, pb), kernels.directed_max_min(pb, pa))


def nn_statistic(cloud) -> float:
    """max over points of the distance to the nearest distinct point."""
    pts = as_points(cloud)
    if pts.shape[0] < 2:
        raise ValueError("nn_statistic requires at least 2 points")
    value = kernels.nn_statistic(pts)
    if value < 0:
        raise ValueError("nn_statistic undefined: all points coincide")
    return float(value)
