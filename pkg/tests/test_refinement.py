import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipsel import geometry as geo
from lipsel.geometry import Box, Polygon
from lipsel.maps import SetMap
from lipsel.metric_space import PseudoMetric
from lipsel.oracle import optimal_selection
from lipsel.random_instances import random_box_map, random_polygon_map, random_segment_map
from lipsel.refinement import (balanced_refine, core_check, iterate_refine, max_stage_change,
                               stabilization_check)

seeds = st.integers(0, 2**32 - 1)


def pair_map(A, B, rho=1.0, kind=""):
    return SetMap(PseudoMetric(("x", "y"), [[0, rho], [rho, 0]]), {"x": A, "y": B}, kind)


def contained(A, B, tol=1e-7):
    """A subset of B for bounded polygonal sets (vertex test)."""
    return all(B.contains(v, tol) for v in geo.as_polygon(A).vertices)


def test_compatible_singletons_unchanged():
    F = pair_map(Polygon([(0, 0)]), Polygon([(2, 0)]))
    G = balanced_refine(F, 2.0)
    assert np.allclose(G["x"].vertices, [[0, 0]]) and np.allclose(G["y"].vertices, [[2, 0]])


def test_zero_lambda_intersects_glued_points_only():
    m = PseudoMetric(("a", "b", "c"), [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    F = SetMap(m, {"a": Box((0, 2), (0, 2)), "b": Box((1, 3), (1, 3)), "c": Box((5, 6), (5, 6))})
    G = balanced_refine(F, 0.0)
    # at lambda = 0 every term is F(z) itself: the global intersection,
    # which is empty here because F(c) is far away
    assert G.empty_points == ["a", "b", "c"]
    H = balanced_refine(F.restrict(["a", "b"]), 0.0)
    assert H["a"] == Box((1, 2), (1, 2)) and H["b"] == Box((1, 2), (1, 2))


def test_far_boxes_empty_out():
    F = pair_map(Box((0, 1), (0, 1)), Box((3, 4), (3, 4)))
    assert balanced_refine(F, 1.0).empty_points == ["x", "y"]


def test_negative_lambda_rejected():
    with pytest.raises(ValueError):
        balanced_refine(pair_map(Box((0, 1), (0, 1)), Box((0, 1), (0, 1))), -1.0)


def test_single_point_space_is_fixed():
    F = SetMap(PseudoMetric(("p",), [[0]]), {"p": Polygon([(0, 0), (1, 0), (0, 1)])})
    trace = iterate_refine(F, [1, 3, 15])
    assert all(np.allclose(st["p"].vertices, F["p"].vertices) for st in trace.stages)


def test_core_check_examples():
    F = pair_map(Box((0, 1), (0, 1)), Box((0, 1), (0, 1)))
    assert core_check(F, 1.0).worst_ratio == 0
    G = pair_map(Box((0, 1), (0, 1)), Box((2, 3), (2, 3)))
    rep = core_check(G, 15.0)
    assert rep.worst_ratio == pytest.approx(2.0) and rep.worst_pair == ("x", "y") and rep.ok


def test_core_check_flags_glued_points_apart():
    G = pair_map(Box((0, 1), (0, 1)), Box((0, 2), (0, 1)), rho=0.0)
    assert not core_check(G, 15.0).zero_distance_ok


def test_stabilization_examples():
    single = SetMap(PseudoMetric(("p",), [[0]]), {"p": Box((0, 1), (0, 1))})
    assert stabilization_check(single, [1, 3], 15)
    # a spread instance with optimum 1 cannot survive refinement at 0.01
    F = pair_map(Polygon([(0, 0)]), Polygon([(1, 0)]))
    assert optimal_selection(F).lambda_star == pytest.approx(1.0)
    assert not stabilization_check(F, [0.01, 0.03], 15)


def test_segment_stages_stay_segments():
    F = pair_map(geo.Segment((0, 0), (4, 0)), geo.Segment((0, 1), (4, 1)))
    G = balanced_refine(F, 1.0)
    assert isinstance(G["x"], geo.Segment)


@settings(max_examples=60)
@given(seed=seeds, n=st.integers(2, 5), kind=st.sampled_from(["polygon", "box", "segment"]))
def test_stages_are_nested(seed, n, kind):
    rng = np.random.default_rng(seed)
    gen = {"polygon": random_polygon_map, "box": random_box_map, "segment": random_segment_map}[kind]
    F = gen(rng, n)
    lam = optimal_selection(F).lambda_star * rng.uniform(0.5, 3)
    trace = iterate_refine(F, [lam, 3 * lam, 15 * lam])
    prev = F
    for G in trace.stages:
        for x in F.ids:
            if isinstance(G[x], geo.Empty):
                continue
            assert not isinstance(prev[x], geo.Empty)
            assert contained(G[x], prev[x])
        prev = G


@settings(max_examples=60)
@given(seed=seeds, n=st.integers(2, 5))
def test_optimal_selection_survives_refinement(seed, n):
    F = random_polygon_map(np.random.default_rng(seed), n)
    res = optimal_selection(F)
    G = balanced_refine(F, res.lambda_star * (1 + 1e-9) + 1e-12)
    for x in F.ids:
        assert not isinstance(G[x], geo.Empty)
        assert G[x].contains(res.selection[x], 1e-6)


def test_max_stage_change_with_empty():
    F = pair_map(Box((0, 1), (0, 1)), Box((3, 4), (3, 4)))
    assert max_stage_change(F, balanced_refine(F, 1.0)) == float("inf")
