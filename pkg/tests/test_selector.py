import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipsel import geometry as geo
from lipsel.geometry import Box, Polygon, Segment
from lipsel.maps import SetMap
from lipsel.metric_space import PseudoMetric
from lipsel.oracle import optimal_selection
from lipsel.random_instances import random_map, random_polygon_map, random_segment_map
from lipsel.refinement import iterate_refine
from lipsel.selector import (SelectionRefused, algorithm_a, algorithm_b, check_pointwise_criterion,
                             check_w_condition, finiteness_bound, near_optimal, rectangle,
                             select_hull_center, select_segment_midpoint, select_steiner)

seeds = st.integers(0, 2**32 - 1)
kinds = st.sampled_from(["polygon", "box", "segment"])


def singletons():
    m = PseudoMetric(("x", "y"), [[0, 1], [1, 0]])
    return SetMap(m, {"x": Polygon([(0, 0)]), "y": Polygon([(2, 0)])})


def constant(n=3, S=None):
    m = PseudoMetric.from_coords(range(n), np.arange(2 * n).reshape(n, 2))
    S = S or Polygon([(0, 0), (1, 0), (0, 1)])
    return SetMap(m, {x: S for x in m.ids})


class TestAlgorithmA:
    def test_singletons(self):
        F = singletons()
        assert algorithm_a(F, 2.0).accepted
        v = algorithm_a(F, 1.9)
        assert not v.accepted and v.tag == "dist" and set(v.witness) == {"x", "y"}

    def test_constant_map(self):
        assert all(algorithm_a(constant(), lam).accepted for lam in (0.0, 0.3, 7.0))

    def test_halfplanes_refused(self):
        m = PseudoMetric(("x",), [[0]])
        F = SetMap(m, {"x": geo.HalfPlane((1, 0), 0.0)})
        with pytest.raises(SelectionRefused):
            algorithm_a(F, 1.0)

    def test_rectangle_is_hull_of_reachable_part(self):
        F = singletons()
        assert rectangle(F, 2.0, "x", "y") == Box((0, 0), (0, 0))

    @settings(max_examples=80)
    @given(seed=seeds, n=st.integers(2, 5), kind=kinds)
    def test_accepts_optimum_and_gap(self, seed, n, kind):
        rng = np.random.default_rng(seed)
        F = random_map(rng, kind, n)
        lam = optimal_selection(F).lambda_star
        assert algorithm_a(F, lam * (1 + 1e-6)).accepted
        low = lam * rng.uniform(0, 1)
        if not algorithm_a(F, low).accepted:
            assert lam > low


class TestAlgorithmB:
    def test_singletons(self):
        s = algorithm_b(singletons(), 2.0)
        assert np.allclose(s["x"], (0, 0)) and np.allclose(s["y"], (2, 0))
        assert s.seminorm == pytest.approx(2.0)

    def test_constant_map(self):
        s = algorithm_b(constant(), 1.0)
        assert s.seminorm == 0.0

    def test_refuses_without_acceptance(self):
        with pytest.raises(SelectionRefused) as err:
            algorithm_b(singletons(), 1.0)
        assert err.value.verdict is not None and not err.value.verdict.accepted

    @settings(max_examples=80)
    @given(seed=seeds, n=st.integers(2, 5), kind=kinds, variant=st.sampled_from(["plus", "minus"]))
    def test_eight_lambda_bound(self, seed, n, kind, variant):
        rng = np.random.default_rng(seed)
        F = random_map(rng, kind, n)
        lam = optimal_selection(F).lambda_star * rng.uniform(1, 2) * (1 + 1e-6)
        if not algorithm_a(F, lam).accepted:
            return
        s = algorithm_b(F, lam, variant=variant)
        assert s.seminorm <= 8 * lam + 1e-6
        assert s.membership_gap(F) <= 1e-7
        F1 = iterate_refine(F, [3 * lam]).final
        assert s.membership_gap(F1) <= 1e-7


class TestStageTwoSelections:
    def test_hull_center_of_triangle(self):
        F = SetMap(PseudoMetric(("p",), [[0]]), {"p": Polygon([(0, 0), (2, 0), (0, 2)])})
        assert np.allclose(select_hull_center(F, 1.0)["p"], (1, 1))

    def test_hull_center_of_singletons(self):
        s = select_hull_center(singletons(), 2.0)
        assert np.allclose(s["x"], (0, 0)) and np.allclose(s["y"], (2, 0))

    def test_refusal_names_point(self):
        with pytest.raises(SelectionRefused) as err:
            select_hull_center(singletons(), 0.1)
        assert err.value.point in ("x", "y")

    def test_midpoint_of_identical_segments(self):
        F = constant(3, Segment((0, 0), (2, 4)))
        s = select_segment_midpoint(F, 1.0)
        assert all(np.allclose(s[x], (1, 2)) for x in F.ids)

    def test_midpoint_of_degenerate_segments(self):
        m = PseudoMetric(("x", "y"), [[0, 1], [1, 0]])
        F = SetMap(m, {"x": Segment((0, 0), (0, 0)), "y": Segment((1, 1), (1, 1))})
        s = select_segment_midpoint(F, 1.0)
        assert np.allclose(s["x"], (0, 0)) and np.allclose(s["y"], (1, 1))

    def test_midpoint_of_collinear_disjoint_segments(self):
        m = PseudoMetric(("x", "y"), [[0, 1], [1, 0]])
        F = SetMap(m, {"x": Segment((0, 0), (1, 0)), "y": Segment((3, 0), (5, 0))})
        lam = finiteness_bound(F)
        s = select_segment_midpoint(F, lam)
        assert s.seminorm <= 15 * lam + 1e-9 and s.membership_gap(F) <= 1e-9

    def test_midpoint_needs_segments(self):
        with pytest.raises(SelectionRefused):
            select_segment_midpoint(singletons(), 2.0)

    def test_steiner_examples(self):
        s = select_steiner(constant(3, Box((0, 2), (0, 2))), 1.0)
        assert s.seminorm == 0.0 and all(np.allclose(s[x], (1, 1)) for x in s.f)

    @settings(max_examples=40)
    @given(seed=seeds, n=st.integers(2, 5), kind=kinds)
    def test_fifteen_lambda_bound(self, seed, n, kind):
        rng = np.random.default_rng(seed)
        F = random_map(rng, kind, n)
        lam = finiteness_bound(F)
        trace = iterate_refine(F, [lam, 3 * lam])
        for sel in (select_hull_center(F, lam), select_steiner(F, lam)):
            assert sel.membership_gap(trace.final) <= 1e-7
        s = select_hull_center(F, lam)
        assert s.seminorm <= 15 * lam + 1e-6
        for x in F.ids:
            assert np.allclose(s[x], geo.center(geo.rect_hull(trace.final[x])))
        if kind == "segment":
            assert select_segment_midpoint(F, lam).seminorm <= 15 * lam + 1e-6


class TestPointwiseCriteria:
    @pytest.mark.parametrize("family", ["rect", "set"])
    def test_single_point(self, family):
        F = SetMap(PseudoMetric(("p",), [[0]]), {"p": Box((0, 1), (0, 1))})
        assert all(check_pointwise_criterion(F, lam, family)["p"] for lam in (0.0, 1.0))

    @settings(max_examples=40)
    @given(seed=seeds, n=st.integers(2, 5), kind=kinds, family=st.sampled_from(["rect", "set"]))
    def test_sandwich(self, seed, n, kind, family):
        F = random_map(np.random.default_rng(seed), kind, n)
        lam = optimal_selection(F).lambda_star
        assert all(check_pointwise_criterion(F, lam * (1 + 1e-6) + 1e-9, family).values())
        if lam > 1e-6:
            assert not all(check_pointwise_criterion(F, lam / 8 * (1 - 1e-3), family).values())

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            check_pointwise_criterion(singletons(), 1.0, "nope")


@settings(max_examples=40)
@given(seed=seeds, n=st.integers(2, 4))
def test_rectangle_condition_implies_w_condition(seed, n):
    rng = np.random.default_rng(seed)
    F = random_polygon_map(rng, n)
    lam = optimal_selection(F).lambda_star * rng.uniform(0.3, 2)
    if algorithm_a(F, lam).accepted:
        assert check_w_condition(F, lam, 3 * lam).accepted


class TestFinitenessAndSearch:
    def test_small_spaces_equal_oracle(self):
        F = singletons()
        assert finiteness_bound(F) == pytest.approx(optimal_selection(F).lambda_star)
        assert finiteness_bound(constant(5)) == 0

    @settings(max_examples=15)
    @given(seed=seeds)
    def test_four_times_bound(self, seed):
        F = random_polygon_map(np.random.default_rng(seed), 6)
        assert optimal_selection(F).lambda_star <= 4 * finiteness_bound(F) + 1e-6

    def test_search_on_singletons(self):
        rep = near_optimal(singletons(), tol=1e-8)
        assert rep.lam == pytest.approx(2.0, rel=1e-7)
        assert np.allclose(rep.selection["y"], (2, 0))

    def test_search_on_constant_map(self):
        assert near_optimal(constant()).lam == 0.0

    @settings(max_examples=30)
    @given(seed=seeds, n=st.integers(2, 5), kind=kinds)
    def test_search_below_oracle(self, seed, n, kind):
        F = random_map(np.random.default_rng(seed), kind, n)
        lam = optimal_selection(F).lambda_star
        rep = near_optimal(F, tol=1e-7)
        assert rep.lam <= lam * (1 + 1e-6) + 1e-9
        assert rep.selection.seminorm <= 8 * rep.lam + 1e-6
