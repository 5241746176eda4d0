"""The epsilon-neighborhood graph and its geodesic (shortest-path) distances."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import GridIndex, PointCloud, as_points


@dataclass
class NeighborhoodGraph:
    """Undirected graph with an edge (i, j) iff 0 < ||Xi - Xj|| <= epsilon.

    Adjacency is stored in CSR form (indptr/indices/weights); edge weights
    are the Euclidean distances. Immutable after construction.
    """

    points: np.ndarray
    epsilon: float
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    component_labels: np.ndarray

    @property
    def vertex_count(self) -> int:
        return self.points.shape[0]

    @property
    def edge_count(self) -> int:
        return self.weights.shape[0] // 2

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def to_edge_csv(self, path) -> None:
        """Debug dump as an i, j, length edge list (each edge once)."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["i", "j", "length"])
            for i in range(self.vertex_count):
                for k in range(self.indptr[i], self.indptr[i + 1]):
                    j = int(self.indices[k])
                    if i < j:
                        writer.writerow([i, j, repr(float(self.weights[k]))])


def _component_labels(n: int, indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    labels = np.full(n, -1, dtype=np.int64)
    current = 0
    stack = []
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = current
        stack.append(start)
        while stack:
            v = stack.pop()
            for w in indices[indptr[v] : indptr[v + 1]]:
                if labels[w] < 0:
                    labels[w] = current
                    stack.append(int(w))
        current += 1
    return labels


def _csr_from_pairs(n: int, src: np.ndarray, dst: np.ndarray, w: np.ndarray):
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst.astype(np.int64), w.astype(float)


def build_graph(cloud, epsilon: float) -> NeighborhoodGraph:
    """Builds the epsilon-graph via fixed-radius grid queries."""
    pts = as_points(cloud)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if pts.shape[0] < 2:
        raise ValueError("need at least 2 points")
    n = pts.shape[0]
    index = GridIndex(pts, cell=epsilon)
    src_parts, dst_parts, w_parts = [], [], []
    for i in range(n):
        ids = index.range_query(pts[i], epsilon)
        ids = ids[ids > i]
        if ids.size == 0:
            continue
        d = np.linalg.norm(pts[ids] - pts[i], axis=1)
        keep = d > 0.0  # zero-chord pairs carry no edge
        ids, d = ids[keep], d[keep]
        src_parts.append(np.full(ids.shape, i, dtype=np.int64))
        dst_parts.append(ids)
        w_parts.append(d)
    if src_parts:
        src = np.concatenate(src_parts)
        dst = np.concatenate(dst_parts)
        w = np.concatenate(w_parts)
        src, dst, w = np.r_[src, dst], np.r_[dst, src], np.r_[w, w]
    else:
        src = dst = np.empty(0, dtype=np.int64)
        w = np.empty(0)
    indptr, indices, weights = _csr_from_pairs(n, src, dst, w)
    labels = _component_labels(n, indptr, indices)
    return NeighborhoodGraph(pts, float(epsilon), indptr, indices, weights, labels)


def graph_geodesics(graph: NeighborhoodGraph, sources=None) -> np.ndarray:
    """Exact shortest-path distances; +inf across components.

    With sources=None returns the full n x n matrix, otherwise one row per
    requested source id.
    """
    n = graph.vertex_count
    if sources is None:
        sources = np.arange(n, dtype=np.int64)
    else:
        sources = np.asarray(sources, dtype=np.int64)
    return kernels.dijkstra_rows(graph.indptr, graph.indices, graph.weights, n, sources)


def augmented_geodesic(graph: NeighborhoodGraph, x, y) -> float:
    """Geodesic distance with x and y added as temporary vertices.

    x and y connect to sample points (and to each other) by the same
    epsilon rule as the graph's edges.
    """
    pts = graph.points
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (pts.shape[1],) or y.shape != (pts.shape[1],):
        raise ValueError("dimension mismatch")
    n = pts.shape[0]
    eps = graph.epsilon
    extra_src, extra_dst, extra_w = [], [], []
    for vid, p in ((n, x), (n + 1, y)):
        d = np.linalg.norm(pts - p, axis=1)
        ids = np.nonzero((d <= eps) & (d > 0.0))[0]
        extra_src.extend([vid] * len(ids))
        extra_dst.extend(ids.tolist())
        extra_w.extend(d[ids].tolist())
        # coincident sample points attach with a zero-length edge
        zero = np.nonzero(d == 0.0)[0]
        extra_src.extend([vid] * len(zero))
        extra_dst.extend(zero.tolist())
        extra_w.extend([0.0] * len(zero))
    dxy = float(np.linalg.norm(x - y))
    if dxy <= eps:
        extra_src.append(n)
        extra_dst.append(n + 1)
        extra_w.append(dxy)
    base_src = np.repeat(np.arange(n, dtype=np.int64), np.diff(graph.indptr))
    src = np.r_[base_src, extra_src, extra_dst].astype(np.int64)
    dst = np.r_[graph.indices, extra_dst, extra_src].astype(np.int64)
    w = np.r_[graph.weights, extra_w, extra_w]
    indptr, indices, weights = _csr_from_pairs(n + 2, src, dst, w)
    row = kernels.dijkstra_rows(indptr, indices, weights, n + 2, np.array([n], dtype=np.int64))
    return float(row[0, n + 1])
