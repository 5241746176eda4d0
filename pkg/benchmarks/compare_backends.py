"""Times the numba kernels against the numpy/scipy fallbacks.

Both implementations are imported directly (bypassing the import-time
dispatch), so a single process measures both paths on identical inputs.

Usage: python benchmarks/compare_backends.py [--n 1500] [--repeats 3]
"""

import argparse
import time

import numpy as np

from reachest import _kernels_numpy as np_impl
from reachest.estimator import epsilon_nn
from reachest.graph import build_graph
from reachest.models import annulus_model

try:
    from reachest import _kernels_numba as nb_impl
except ImportError:
    nb_impl = None


def bench(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1500, help="sample size")
    parser.add_argument("--repeats", type=int, default=3, help="timed repeats, best-of")
    args = parser.parse_args()

    cloud = annulus_model(0.5).sample(args.n, seed=0)
    pts = cloud.points
    eps = epsilon_nn(cloud)
    graph = build_graph(cloud, eps)
    kappa = 1.0 + eps**2
    sources = np.arange(min(args.n, 200), dtype=np.int64)
    grid = annulus_model(0.5).reference_grid

    cases = {
        "reach_scan": lambda impl: impl.reach_scan(
            pts, graph.indptr, graph.indices, graph.weights, kappa, 1e-12
        ),
        f"dijkstra_rows ({len(sources)} sources)": lambda impl: impl.dijkstra_rows(
            graph.indptr, graph.indices, graph.weights, args.n, sources
        ),
        "nn_statistic": lambda impl: impl.nn_statistic(pts),
        "directed_max_min (grid -> sample)": lambda impl: impl.directed_max_min(grid, pts),
    }

    backends = [("numpy", np_impl)]
    if nb_impl is not None:
        # trigger compilation outside the timed region
        for fn in cases.values():
            fn(nb_impl)
        backends.append(("numba", nb_impl))
    else:
        print("numba unavailable; timing the numpy fallback only")

    print(f"n = {args.n}, epsilon = {eps:.4f}, edges = {graph.edge_count}, best of {args.repeats}")
    print(f"{'kernel':<36} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for label, fn in cases.items():
        times = [bench(lambda impl=impl: fn(impl), args.repeats)[0] for _, impl in backends]
        ratio = f"{times[0] / times[-1]:10.1f}x" if len(times) == 2 else ""
        print(f"{label:<36} " + " ".join(f"{t * 1e3:10.1f}ms" for t in times) + ratio)


if __name__ == "__main__":
    main()
