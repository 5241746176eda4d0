import math

import numpy as np
import pytest

from reachest.estimator import (
    EpsilonTheoryParams,
    ReachEstimate,
    WARN_DISCONNECTED,
    WARN_DUPLICATES,
    epsilon_nn,
    epsilon_theory,
    estimate_reach,
    estimate_reach_from_geodesics,
    pair_critical_radius,
    unit_ball_volume,
)
from reachest.graph import build_graph, graph_geodesics
from reachest.models import circle_model

from oracles import oracle_critical_radius


def test_pair_critical_radius_endpoints():
    # g = kappa*e: the constraint holds for every r
    assert pair_critical_radius(1.0, 1.0) == math.inf
    assert pair_critical_radius(2.0, 3.0, kappa=1.5) == math.inf
    # g = kappa*pi*e/2: violated for every r, the infimum radius e/2 remains
    assert pair_critical_radius(1.0, math.pi / 2.0) == pytest.approx(0.5, rel=1e-12)
    assert pair_critical_radius(1.0, 10.0) == 0.5
    assert pair_critical_radius(1.0, math.inf) == 0.5


def test_pair_critical_radius_against_root_finder():
    rng = np.random.default_rng(21)
    for _ in range(300):
        e = float(rng.uniform(0.01, 5.0))
        kappa = float(rng.uniform(1.0, 1.4))
        g = float(e * kappa * rng.uniform(1.0 + 1e-6, math.pi / 2.0 - 1e-6))
        got = pair_critical_radius(e, g, kappa)
        want = oracle_critical_radius(e, g, kappa)
        assert got == pytest.approx(want, rel=1e-10)


def test_pair_critical_radius_circle_chords_are_exact():
    # chord 2R*sin(theta/2) and arc R*theta invert to r* = R; the attainable
    # accuracy is set by the rounding of the inputs themselves, which grows
    # like eps/theta^2 as the pair degenerates
    for theta in (1e-4, 1e-2, 0.5, 1.5, 3.0):
        e = 2.0 * math.sin(theta / 2.0)
        tol = max(1e-11, 30.0 * 2.3e-16 / theta**2)
        assert pair_critical_radius(e, theta) == pytest.approx(1.0, abs=tol)


def test_pair_critical_radius_vectorized_matches_scalar():
    e = np.array([1.0, 1.0, 0.3, 2.0])
    g = np.array([1.0, 1.2, 0.35, math.pi])
    out = pair_critical_radius(e, g)
    for k in range(4):
        assert out[k] == pair_critical_radius(float(e[k]), float(g[k]))


def test_pair_critical_radius_validation():
    with pytest.raises(ValueError):
        pair_critical_radius(0.0, 1.0)
    with pytest.raises(ValueError):
        pair_critical_radius(1.0, 0.5)
    with pytest.raises(ValueError):
        pair_critical_radius(1.0, 1.5, kappa=0.9)
    # tiny float noise below the chord is forgiven
    assert pair_critical_radius(1.0, 1.0 - 1e-14) == math.inf


def test_estimate_reach_square_is_infinite():
    # four corners of a square: all geodesics equal chords, no violation
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    result = estimate_reach(pts, epsilon=1.6)
    assert result.value == math.inf
    assert result.critical_pair is None
    assert result.n_active_pairs == 0


def test_estimate_reach_circle_with_kappa_one():
    model = circle_model(1.0)
    theta = 2.0 * math.pi * np.arange(60) / 60
    pts = np.c_[np.cos(theta), np.sin(theta)]
    result = estimate_reach(pts, epsilon=0.2, kappa=1.0)
    # dense equispaced circle: the estimate is close to (slightly above) R
    assert 1.0 <= result.value < 1.01
    assert result.inflation == 1.0


def test_estimate_reach_default_inflation_and_result_fields():
    pts = np.random.default_rng(0).normal(size=(30, 2))
    eps = epsilon_nn(pts)
    result = estimate_reach(pts, eps)
    assert result.inflation == pytest.approx(1.0 + eps**2)
    assert result.epsilon == eps
    if math.isfinite(result.value):
        i, j = result.critical_pair
        assert 0 <= i < j < 30


def test_estimate_reach_warnings():
    far = np.array([[0.0, 0.0], [1.0, 0.0], [50.0, 0.0]])
    result = estimate_reach(far, epsilon=2.0)
    assert WARN_DISCONNECTED in result.warnings
    dup = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    result = estimate_reach(dup, epsilon=2.0)
    assert WARN_DUPLICATES in result.warnings
    with pytest.raises(ValueError):
        estimate_reach(np.zeros((5, 2)), epsilon=1.0)  # all points coincide
    with pytest.raises(ValueError):
        estimate_reach(np.zeros((1, 2)), epsilon=1.0)
    with pytest.raises(ValueError):
        estimate_reach(far, epsilon=0.0)


def test_estimate_from_geodesics_matches_graph_route():
    rng = np.random.default_rng(4)
    pts = rng.normal(size=(25, 2))
    eps = epsilon_nn(pts)
    kappa = 1.0 + eps**2
    geod = graph_geodesics(build_graph(pts, eps))
    a = estimate_reach(pts, eps, kappa=kappa)
    b = estimate_reach_from_geodesics(pts, geod, eps, kappa=kappa)
    assert b.value == pytest.approx(a.value, rel=1e-12)
    assert b.critical_pair == a.critical_pair
    with pytest.raises(ValueError):
        estimate_reach_from_geodesics(pts, geod[:5, :5], eps)


def test_reach_estimate_dict_roundtrip():
    for value in (0.37, math.inf):
        est = ReachEstimate(value, 0.2, 1.04, (1, 5) if value != math.inf else None, 9, ("x",))
        again = ReachEstimate.from_dict(est.to_dict())
        assert again == est


def test_epsilon_nn_scaling():
    pts = np.array([[0.0, 0.0], [4.0, 0.0], [4.0, 3.0]])
    # farthest nearest-neighbor distance is 4 -> sqrt is 2
    assert epsilon_nn(pts) == pytest.approx(2.0)
    assert epsilon_nn(pts, multiplier=1.5) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        epsilon_nn(pts, multiplier=0.0)


def test_unit_ball_volume():
    assert unit_ball_volume(1) == pytest.approx(2.0)
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)


def test_epsilon_theory_rule():
    params = EpsilonTheoryParams(c=1.0, d=2)
    n = 1000
    want = (math.log(n) / n) ** (1.0 / 6.0) * math.log(math.log(n))
    assert epsilon_theory(n, params) == pytest.approx(want)
    # custom slowly-growing factor
    params2 = EpsilonTheoryParams(c=1.0, d=2, beta=lambda n: 2.0)
    assert epsilon_theory(n, params2) == pytest.approx(2.0 * (math.log(n) / n) ** (1.0 / 6.0))
    with pytest.raises(ValueError):
        epsilon_theory(1, params)


def test_epsilon_theory_constant_floor():
    # c must exceed (2/(eta*omega_d))^(1/d); for d=2, eta=1 that is sqrt(2/pi)
    floor = math.sqrt(2.0 / math.pi)
    with pytest.raises(ValueError):
        EpsilonTheoryParams(c=floor, d=2)
    EpsilonTheoryParams(c=floor * 1.01, d=2)
    with pytest.raises(ValueError):
        EpsilonTheoryParams(c=1.0, d=0)
    with pytest.raises(ValueError):
        EpsilonTheoryParams(c=1.0, eta=-1.0)
