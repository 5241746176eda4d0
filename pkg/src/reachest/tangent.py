"""Tangent-space comparison estimator: local-PCA frames, the chord-squared
over twice-normal-distance infimum, and the projection operator-norm error."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import as_points

_ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class TangentFrame:
    """Affine tangent estimate at a base point: d' orthonormal basis rows."""

    base: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        base = np.asarray(self.base, dtype=float)
        basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if base.ndim != 1:
            raise ValueError("base must be a single point")
        d_prime, ambient = basis.shape
        if ambient != base.shape[0]:
            raise ValueError("basis/base dimension mismatch")
        if not 1 <= d_prime < ambient:
            raise ValueError("need 1 <= d' < D")
        gram = basis @ basis.T
        if np.abs(gram - np.eye(d_prime)).max() > _ORTHO_TOL:
            raise ValueError("basis is not orthonormal")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "basis", basis)

    def projection_matrix(self) -> np.ndarray:
        return self.basis.T @ self.basis


def subspace_distance(v, frame: TangentFrame) -> float:
    """Norm of the component of v orthogonal to the frame's span."""
    v = np.asarray(v, dtype=float)
    if v.shape != frame.base.shape:
        raise ValueError("dimension mismatch")
    coeffs = frame.basis @ v
    return float(np.linalg.norm(v - frame.basis.T @ coeffs))


def default_neighbor_count(n: int, d_prime: int) -> int:
    """PCA neighborhood size; grows like sqrt(n), floored at d' + 2."""
    return max(d_prime + 2, math.ceil(1.35 * math.sqrt(n)))


def local_pca_tangent(cloud, i: int, k: int, d_prime: int) -> TangentFrame:
    """Top-d' principal directions of the k nearest neighbors of point i."""
    pts = as_points(cloud)
    n = pts.shape[0]
    if k < d_prime + 1:
        raise ValueError("k must be at least d' + 1")
    if n <= k:
        raise ValueError("cloud must have more than k points")
    d = np.linalg.norm(pts - pts[i], axis=1)
    d[i] = np.inf
    neighbors = pts[np.argpartition(d, k)[:k]]
    centered = neighbors - neighbors.mean(axis=0)
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    if singular.shape[0] < d_prime or singular[d_prime - 1] <= _ORTHO_TOL * max(1.0, singular[0]):
        raise ValueError(f"degenerate neighborhood at point {i}: covariance rank < {d_prime}")
    return TangentFrame(base=pts[i], basis=vt[:d_prime])


def local_pca_frames(cloud, d_prime: int, k: int | None = None) -> list[TangentFrame]:
    pts = as_points(cloud)
    if k is None:
        k = default_neighbor_count(pts.shape[0], d_prime)
    return [local_pca_tangent(pts, i, k, d_prime) for i in range(pts.shape[0])]


def tangent_reach(cloud, frames, delta: float = 0.0) -> float:
    """inf over ordered pairs (i, j), ||Xj - Xi|| >= delta, of
    chord^2 / (2 * distance of the chord to the tangent at Xi).

    Zero-denominator pairs are skipped; +inf when no pair qualifies.
    """
    pts = as_points(cloud)
    n = pts.shape[0]
    if len(frames) != n:
        raise ValueError("one frame per point required")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    best = math.inf
    for i, frame in enumerate(frames):
        diffs = pts - pts[i]
        norms = np.linalg.norm(diffs, axis=1)
        coeffs = diffs @ frame.basis.T
        # explicit residual; norms^2 - |coeffs|^2 would cancel catastrophically
        residual = diffs - coeffs @ frame.basis
        denom = 2.0 * np.linalg.norm(residual, axis=1)
        mask = (norms >= delta) & (norms > 0.0) & (denom > 0.0)
        if mask.any():
            best = min(best, float((norms[mask] ** 2 / denom[mask]).min()))
    return best


def tangent_error(true_frames, est_frames) -> float:
    """max over points of the operator norm of the projection difference."""
    if len(true_frames) != len(est_frames):
        raise ValueError("frame lists must have equal length")
    worst = 0.0
    for ft, fe in zip(true_frames, est_frames):
        diff = ft.projection_matrix() - fe.projection_matrix()
        worst = max(worst, float(np.linalg.svd(diff, compute_uv=False)[0]))
    return worst


def frames_to_csv(frames, path) -> None:
    """Inspection dump: point id, then basis vectors row-major."""
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        ambient = frames[0].base.shape[0] if frames else 0
        d_prime = frames[0].basis.shape[0] if frames else 0
        writer.writerow(["point_id"] + [f"b{r}_{c}" for r in range(d_prime) for c in range(ambient)])
        for i, frame in enumerate(frames):
            writer.writerow([i] + [repr(float(v)) for v in frame.basis.ravel()])
