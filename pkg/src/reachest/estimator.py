"""The graph-geodesic plug-in reach estimator and its epsilon selection rules.

The estimator's sup over r is computed exactly as a minimum of per-pair
critical radii: for a pair with chord e and graph distance g the constraint
g <= 2*r*kappa*arcsin(e/(2r)) holds exactly on (e/2, r*], so the estimate
is the smallest r* over pairs (+inf when no pair is ever violated).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._kernels_numpy import crit_radius_vec
from .geometry import as_points, nn_statistic
from .graph import build_graph

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12

WARN_DISCONNECTED = "disconnected-graph"
WARN_DUPLICATES = "duplicate-points-skipped"


@dataclass(frozen=True)
class ReachEstimate:
    """Result of the plug-in estimator; value is +inf for convex-like samples."""

    value: float
    epsilon: float
    inflation: float
    critical_pair: tuple[int, int] | None
    n_active_pairs: int
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": self.value if math.isfinite(self.value) else "inf",
            "epsilon": self.epsilon,
            "inflation": self.inflation,
            "critical_pair": list(self.critical_pair) if self.critical_pair else None,
            "n_active_pairs": self.n_active_pairs,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReachEstimate":
        value = d["value"]
        pair = d.get("critical_pair")
        return cls(
            value=math.inf if value == "inf" else float(value),
            epsilon=float(d["epsilon"]),
            inflation=float(d["inflation"]),
            critical_pair=tuple(pair) if pair else None,
            n_active_pairs=int(d.get("n_active_pairs", 0)),
            warnings=tuple(d.get("warnings", ())),
        )


def pair_critical_radius(e, g, kappa: float = 1.0, tol: float = DEFAULT_TOL):
    """Largest r keeping g <= 2*kappa*r*arcsin(e/(2r)); array friendly.

    Returns +inf when the pair never violates the constraint and e/2 when
    it always does (g >= kappa*pi*e/2, in particular g = +inf).
    """
    e_arr = np.atleast_1d(np.asarray(e, dtype=float))
    g_arr = np.atleast_1d(np.asarray(g, dtype=float))
    if kappa < 1.0:
        raise ValueError("inflation kappa must be >= 1")
    if (e_arr <= 0).any():
        raise ValueError("chord length must be positive")
    if (g_arr < e_arr * (1.0 - 1e-12)).any():
        raise ValueError("graph distance below chord: inconsistent inputs")
    out = crit_radius_vec(e_arr, np.maximum(g_arr, e_arr), kappa, tol)
    if np.isscalar(e) or np.ndim(e) == 0:
        return float(out[0])
    return out


def estimate_reach(
    cloud,
    epsilon: float,
    kappa: float | None = None,
    tol: float = DEFAULT_TOL,
) -> ReachEstimate:
    """Plug-in reach estimate: min over distinct-point pairs of the critical radius.

    kappa defaults to the paper's inflation 1 + epsilon^2; pass kappa
    explicitly to decouple it (e.g. for scale-equivariance checks).
    """
    pts = as_points(cloud)
    if pts.shape[0] < 2:
        raise ValueError("need at least 2 points")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if kappa is None:
        kappa = 1.0 + epsilon**2
    graph = build_graph(pts, epsilon)
    best_r, best_j, active, disconnected, zero_chords = kernels.reach_scan(
        pts, graph.indptr, graph.indices, graph.weights, kappa, tol
    )
    n_pairs = pts.shape[0] * (pts.shape[0] - 1) // 2
    if int(zero_chords.sum()) == n_pairs:
        raise ValueError("fewer than 2 distinct points")
    warnings = []
    if disconnected.any():
        warnings.append(WARN_DISCONNECTED)
        log.warning("epsilon-graph is disconnected; estimate degrades to chord/2 pairs")
    if zero_chords.sum() > 0:
        warnings.append(WARN_DUPLICATES)
        log.warning("skipped %d zero-chord pairs", int(zero_chords.sum()))
    i = int(np.argmin(best_r))
    value = float(best_r[i])
    pair = (i, int(best_j[i])) if math.isfinite(value) else None
    return ReachEstimate(
        value=value,
        epsilon=float(epsilon),
        inflation=float(kappa),
        critical_pair=pair,
        n_active_pairs=int(active.sum()),
        warnings=tuple(warnings),
    )


def estimate_reach_from_geodesics(
    cloud,
    geodesics: np.ndarray,
    epsilon: float,
    kappa: float = 1.0,
    tol: float = DEFAULT_TOL,
) -> ReachEstimate:
    """Same reduction with a caller-supplied geodesic matrix (oracle route)."""
    pts = as_points(cloud)
    n = pts.shape[0]
    geodesics = np.asarray(geodesics, dtype=float)
    if geodesics.shape != (n, n):
        raise ValueError("geodesic matrix shape mismatch")
    iu = np.triu_indices(n, 1)
    chord = np.linalg.norm(pts[iu[0]] - pts[iu[1]], axis=1)
    g = geodesics[iu]
    keep = chord > 0.0
    radii = crit_radius_vec(chord[keep], np.maximum(g[keep], chord[keep]), kappa, tol)
    warnings = []
    if (~keep).any():
        warnings.append(WARN_DUPLICATES)
    if np.isinf(g[keep]).any():
        warnings.append(WARN_DISCONNECTED)
    finite = np.isfinite(radii)
    if finite.any():
        k = int(np.argmin(np.where(finite, radii, np.inf)))
        value = float(radii[k])
        pair = (int(iu[0][keep][k]), int(iu[1][keep][k]))
    else:
        value = math.inf
        pair = None
    return ReachEstimate(
        value=value,
        epsilon=float(epsilon),
        inflation=float(kappa),
        critical_pair=pair,
        n_active_pairs=int(finite.sum()),
        warnings=tuple(warnings),
    )


def epsilon_nn(cloud, multiplier: float = 1.0) -> float:
    """sqrt of the max nearest-distinct-neighbor distance, times a multiplier."""
    if multiplier <= 0:
        raise ValueError("multiplier must be positive")
    return multiplier * math.sqrt(nn_statistic(cloud))


def _default_beta(n: int) -> float:
    return math.log(math.log(max(n, 27)))


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


@dataclass(frozen=True)
class EpsilonTheoryParams:
    """Parameters of the rate-driven epsilon rule c*(log n / n)^(1/(3d))*beta_n.

    d is the dimension used in the exponent (the intrinsic dimension for
    manifold data). lam is the standardness radius, recorded only.
    """

    c: float
    eta: float = 1.0
    lam: float = 1.0
    d: int = 2
    beta: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.d < 1 or int(self.d) != self.d:
            raise ValueError("d must be a positive integer")
        if self.eta <= 0 or self.c <= 0:
            raise ValueError("c and eta must be positive")
        floor = (2.0 / (self.eta * unit_ball_volume(self.d))) ** (1.0 / self.d)
        if self.c <= floor:
            raise ValueError(f"c must exceed (2/(eta*omega_d))^(1/d) = {floor:.6g}")

    def beta_n(self, n: int) -> float:
        fn = self.beta if self.beta is not None else _default_beta
        return float(fn(n))


def epsilon_theory(n: int, params: EpsilonTheoryParams) -> float:
    if n < 2:
        raise ValueError("n must be >= 2")
    return params.c * (math.log(n) / n) ** (1.0 / (3.0 * params.d)) * params.beta_n(n)
