"""Seeded samplers and oracles for the test shapes.

Each model bundles a sampler, a membership predicate, optional geodesic /
projection / tangent oracles, the known true reach and a dense reference
grid for covering-radius diagnostics. Samplers are bit-reproducible: the
seed (an int or a sequence, e.g. (master_seed, replicate_id)) feeds
numpy's default_rng, so per-replicate streams are independent.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .geometry import PointCloud, as_points
from .tangent import TangentFrame

MEMBERSHIP_TOL = 1e-12
GRID_SIZE = 10_000


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    ambient_dim: int
    intrinsic_dim: int | None
    true_reach: float
    sample: Callable[[int, object], PointCloud]
    membership_residual: Callable[[np.ndarray], np.ndarray]
    reference_grid: np.ndarray = field(repr=False)
    geodesic: Callable[[np.ndarray, np.ndarray], float] | None = None
    project: Callable[[np.ndarray], np.ndarray] | None = None
    tangent_at: Callable[[np.ndarray], TangentFrame] | None = None

    def contains(self, points, tol: float = MEMBERSHIP_TOL) -> bool:
        res = self.membership_residual(np.atleast_2d(as_points(points)))
        return bool((res <= tol).all())


def annulus_model(r: float) -> ManifoldModel:
    """Unit-area planar ring r^2 < x^2 + y^2 < r^2 + 1/pi; reach = r."""
    if r <= 0:
        raise ValueError("inner radius must be positive")
    outer2 = r * r + 1.0 / math.pi

    def sample(n, seed) -> PointCloud:
        rng = np.random.default_rng(seed)
        # inverse-CDF radius for the uniform law on the ring
        rho = np.sqrt(r * r + rng.random(n) / math.pi)
        theta = rng.random(n) * 2.0 * math.pi
        return PointCloud(np.c_[rho * np.cos(theta), rho * np.sin(theta)])

    def residual(pts: np.ndarray) -> np.ndarray:
        rho2 = (pts**2).sum(axis=1)
        return np.maximum(r * r - rho2, rho2 - outer2)

    def project(p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        norm = np.linalg.norm(p)
        if norm == 0.0:
            return np.array([r, 0.0])
        clipped = min(max(norm, r), math.sqrt(outer2))
        return p * (clipped / norm)

    # deterministic grid, uniform in the (area-fraction, angle) parametrization
    side = int(round(math.sqrt(GRID_SIZE)))
    u = (np.arange(side) + 0.5) / side
    theta = 2.0 * math.pi * (np.arange(side) + 0.5) / side
    rho = np.sqrt(r * r + u / math.pi)
    rg, tg = np.meshgrid(rho, theta)
    grid = np.c_[(rg * np.cos(tg)).ravel(), (rg * np.sin(tg)).ravel()]

    return ManifoldModel(
        name=f"annulus:r={r:g}",
        ambient_dim=2,
        intrinsic_dim=None,
        true_reach=r,
        sample=sample,
        membership_residual=residual,
        reference_grid=grid,
        project=project,
    )


def circle_model(radius: float = 1.0) -> ManifoldModel:
    """Circle of radius R with exact geodesic and tangent oracles; reach = R."""
    if radius <= 0:
        raise ValueError("radius must be positive")

    def sample(n, seed) -> PointCloud:
        rng = np.random.default_rng(seed)
        theta = rng.random(n) * 2.0 * math.pi
        return PointCloud(radius * np.c_[np.cos(theta), np.sin(theta)])

    def residual(pts: np.ndarray) -> np.ndarray:
        return np.abs(np.linalg.norm(pts, axis=1) - radius)

    def geodesic(x, y) -> float:
        tx = math.atan2(x[1], x[0])
        ty = math.atan2(y[1], y[0])
        wrapped = abs((tx - ty + math.pi) % (2.0 * math.pi) - math.pi)
        return radius * wrapped

    def project(p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        norm = np.linalg.norm(p)
        if norm == 0.0:
            return np.array([radius, 0.0])
        return p * (radius / norm)

    def tangent_at(p) -> TangentFrame:
        theta = math.atan2(p[1], p[0])
        return TangentFrame(base=np.asarray(p, dtype=float), basis=np.array([[-math.sin(theta), math.cos(theta)]]))

    theta = 2.0 * math.pi * np.arange(GRID_SIZE) / GRID_SIZE
    grid = radius * np.c_[np.cos(theta), np.sin(theta)]

    return ManifoldModel(
        name=f"circle:R={radius:g}",
        ambient_dim=2,
        intrinsic_dim=1,
        true_reach=radius,
        sample=sample,
        membership_residual=residual,
        reference_grid=grid,
        geodesic=geodesic,
        project=project,
        tangent_at=tangent_at,
    )


def half_ellipse_model() -> ManifoldModel:
    """Right half of x^2 + 4y^2 = 1, a manifold with boundary; reach = 1/4."""

    def sample(n, seed) -> PointCloud:
        rng = np.random.default_rng(seed)
        xy = rng.standard_normal((n, 2))
        z = np.c_[np.abs(xy[:, 0]), xy[:, 1]]
        norm_e = np.sqrt(z[:, 0] ** 2 + 4.0 * z[:, 1] ** 2)
        return PointCloud(z / norm_e[:, None])

    def residual(pts: np.ndarray) -> np.ndarray:
        on_curve = np.abs(pts[:, 0] ** 2 + 4.0 * pts[:, 1] ** 2 - 1.0)
        return np.maximum(on_curve, -pts[:, 0])

    def tangent_at(p) -> TangentFrame:
        direction = np.array([-4.0 * p[1], p[0]])
        return TangentFrame(base=np.asarray(p, dtype=float), basis=(direction / np.linalg.norm(direction))[None, :])

    t = np.linspace(-math.pi / 2.0, math.pi / 2.0, GRID_SIZE)
    grid = np.c_[np.cos(t), 0.5 * np.sin(t)]

    return ManifoldModel(
        name="half-ellipse",
        ambient_dim=2,
        intrinsic_dim=1,
        true_reach=0.25,
        sample=sample,
        membership_residual=residual,
        reference_grid=grid,
        tangent_at=tangent_at,
    )


_MODEL_PATTERNS = [
    (re.compile(r"^annulus:r=([0-9.eE+-]+)$"), lambda m: annulus_model(float(m.group(1)))),
    (re.compile(r"^circle:R=([0-9.eE+-]+)$"), lambda m: circle_model(float(m.group(1)))),
    (re.compile(r"^circle$"), lambda m: circle_model(1.0)),
    (re.compile(r"^half-ellipse$"), lambda m: half_ellipse_model()),
]


def parse_model(model_id: str) -> ManifoldModel:
    for pattern, factory in _MODEL_PATTERNS:
        match = pattern.match(model_id.strip())
        if match:
            return factory(match)
    raise ValueError(
        f"unknown model id {model_id!r}; expected annulus:r=R, circle:R=R or half-ellipse"
    )


def covering_radius(cloud, model: ManifoldModel) -> float:
    """max over the reference grid of the distance to the nearest sample point."""
    if model.reference_grid is None or len(model.reference_grid) == 0:
        raise ValueError("model has no reference grid")
    return float(kernels.directed_max_min(model.reference_grid, as_points(cloud)))


def analytic_frames(cloud, model: ManifoldModel) -> list[TangentFrame]:
    if model.tangent_at is None:
        raise ValueError(f"model {model.name} has no tangent oracle")
    pts = as_points(cloud)
    return [model.tangent_at(p) for p in pts]
