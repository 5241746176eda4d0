"""Reach estimation for compact sets from finite point samples."""

from .backend import use_numba
from .bias import BiasCorrectedEstimate, bias_corrected_reach, split_sample, violation_fraction
from .estimator import (
    EpsilonTheoryParams,
    ReachEstimate,
    epsilon_nn,
    epsilon_theory,
    estimate_reach,
    estimate_reach_from_geodesics,
    pair_critical_radius,
)
from .geometry import GridIndex, PointCloud, euclidean_distance, hausdorff_distance, nn_statistic
from .graph import NeighborhoodGraph, augmented_geodesic, build_graph, graph_geodesics
from .io import load_cloud, save_cloud
from .models import (
    ManifoldModel,
    analytic_frames,
    annulus_model,
    circle_model,
    covering_radius,
    half_ellipse_model,
    parse_model,
)
from .tangent import (
    TangentFrame,
    default_neighbor_count,
    local_pca_frames,
    local_pca_tangent,
    subspace_distance,
    tangent_error,
    tangent_reach,
)

__version__ = "0.1.0"

__all__ = [
    "BiasCorrectedEstimate",
    "EpsilonTheoryParams",
    "GridIndex",
    "ManifoldModel",
    "NeighborhoodGraph",
    "PointCloud",
    "ReachEstimate",
    "TangentFrame",
    "analytic_frames",
    "annulus_model",
    "augmented_geodesic",
    "bias_corrected_reach",
    "build_graph",
    "circle_model",
    "covering_radius",
    "default_neighbor_count",
    "epsilon_nn",
    "epsilon_theory",
    "estimate_reach",
    "estimate_reach_from_geodesics",
    "euclidean_distance",
    "graph_geodesics",
    "half_ellipse_model",
    "hausdorff_distance",
    "load_cloud",
    "local_pca_frames",
    "local_pca_tangent",
    "nn_statistic",
    "pair_critical_radius",
    "parse_model",
    "save_cloud",
    "split_sample",
    "subspace_distance",
    "tangent_error",
    "tangent_reach",
    "use_numba",
    "violation_fraction",
]
