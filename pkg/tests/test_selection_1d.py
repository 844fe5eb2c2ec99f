import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lipsel import geometry as geo
from lipsel.metric_space import PseudoMetric
from lipsel.oracle import optimal_selection
from lipsel.random_instances import random_interval_map
from lipsel.selection_1d import (SelectionRefused, criterion_1d, interval_map, lambda_f, refine_1d,
                                 select_mid, select_minus, select_plus)

seeds = st.integers(0, 2**32 - 1)


def two_point(lo, hi, rho=1.0):
    return interval_map(PseudoMetric(("x", "y"), [[0, rho], [rho, 0]]), lo, hi)


def test_lambda_of_separated_pair():
    assert lambda_f(two_point([0, 2], [1, 3])) == 1.0


def test_lambda_zero_for_common_point():
    m = PseudoMetric.from_coords(range(3), [[0], [1], [5]])
    assert lambda_f(interval_map(m, [0, -1, 0.5], [1, 0.5, 3])) == 0.0


def test_lambda_infinite_for_glued_disjoint_sets():
    assert lambda_f(two_point([0, 2], [1, 3], rho=0.0)) == math.inf


def test_upper_envelope_example():
    s = select_plus(two_point([0, 2], [0, 3]), 2.0)
    assert s["x"] == 0 and s["y"] == 2
    assert s.seminorm == 2


def test_constant_map_selections():
    m = PseudoMetric.from_coords(range(3), [[0], [1], [2]])
    F = interval_map(m, [0] * 3, [1] * 3)
    for lam in (0.0, 0.5, 3.0):
        assert all(v == 1 for v in select_plus(F, lam).f.values())
        assert all(v == 0 for v in select_minus(F, lam).f.values())
        assert all(v == 0.5 for v in select_mid(F, lam).f.values())


def test_single_point_space():
    F = interval_map(PseudoMetric(("p",), [[0]]), [2], [4])
    s = select_plus(F, 0.0)
    assert 2 <= s["p"] <= 4 and s.seminorm == 0


def test_refusal_names_pair():
    with pytest.raises(SelectionRefused) as err:
        select_plus(two_point([0, 2], [1, 3]), 0.5)
    assert set(err.value.pair) == {"x", "y"}


def test_refinement_example():
    R = refine_1d(two_point([0, 2], [0, 3]), 2.0)
    assert R["x"] == geo.Interval1(0, 0)
    assert R["y"] == geo.Interval1(2, 2)


def test_refinement_at_zero_keeps_constant_map():
    m = PseudoMetric.from_coords(range(3), [[0], [1], [2]])
    F = interval_map(m, [0] * 3, [1] * 3)
    assert refine_1d(F, 0.0).F == F.F


def test_refinement_below_optimum_empties():
    F = two_point([0, 2], [1, 3])
    assert refine_1d(F, 0.5).empty_points


def test_criterion_examples():
    F = two_point([0, 2], [1, 3])
    lf = lambda_f(F)
    assert criterion_1d(F, lf).accepted
    assert not criterion_1d(F, lf * (1 - 1e-3)).accepted
    G = two_point([0, 0.5], [1, 3])
    assert all(criterion_1d(G, lam).accepted for lam in (0.0, 1.0, 10.0))


def test_criterion_handles_unbounded_intervals():
    # F(x) = (-inf, 2], F(y) = [0, inf)
    F = two_point([-math.inf, 0], [2, math.inf])
    assert criterion_1d(F, 0.0).accepted
    # F(x) = (-inf, 0], F(y) = [1, 3]
    G = two_point([-math.inf, 1], [0, 3])
    assert criterion_1d(G, 1.0).accepted and not criterion_1d(G, 0.9).accepted


def test_selection_needs_bounded_values():
    with pytest.raises(ValueError):
        select_plus(two_point([-math.inf, 1], [0, 3]), 5.0)


@given(seed=seeds, n=st.integers(1, 7))
def test_upper_envelope_is_optimal(seed, n):
    F = random_interval_map(np.random.default_rng(seed), n)
    lf = lambda_f(F)
    s = select_plus(F, lf)
    assert s.seminorm == pytest.approx(lf, abs=1e-9)
    assert s.membership_gap(F) == 0.0


@given(seed=seeds, n=st.integers(2, 6), extra=st.floats(0, 2))
def test_envelopes_ordered_and_lipschitz(seed, n, extra):
    F = random_interval_map(np.random.default_rng(seed), n)
    lam = lambda_f(F) + extra
    lo, mid, hi = select_minus(F, lam), select_mid(F, lam), select_plus(F, lam)
    for x in F.ids:
        assert lo[x] <= mid[x] + 1e-12 and mid[x] <= hi[x] + 1e-12
    for s in (lo, mid, hi):
        assert s.seminorm <= lam + 1e-9
        assert s.membership_gap(F) == 0.0


@given(seed=seeds, n=st.integers(2, 6))
def test_criterion_threshold_is_lambda(seed, n):
    F = random_interval_map(np.random.default_rng(seed), n)
    lf = lambda_f(F)
    assert criterion_1d(F, lf).accepted
    # bisection on acceptance lands on lambda_F
    lo, hi = 0.0, lf + 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if criterion_1d(F, mid).accepted else (mid, hi)
    assert hi == pytest.approx(lf, abs=1e-7)


@given(seed=seeds, n=st.integers(2, 6))
def test_oracle_agrees_with_lambda(seed, n):
    F = random_interval_map(np.random.default_rng(seed), n)
    assert optimal_selection(F).lambda_star == pytest.approx(lambda_f(F), abs=1e-6)


@given(seed=seeds, n=st.integers(2, 7))
def test_pairwise_one_lipschitz_gives_one_core(seed, n):
    rng = np.random.default_rng(seed)
    F = random_interval_map(rng, n)
    lf = lambda_f(F)
    if lf == 0:
        return
    F = F.scaled(lf)              # now every pair has a 1-Lipschitz selection
    R = refine_1d(F, 1.0)
    assert not R.empty_points
    for i, x in enumerate(F.ids):
        for j, y in enumerate(F.ids):
            I, J = R[x], R[y]
            h = max(abs(I.lo - J.lo), abs(I.hi - J.hi))
            assert h <= F.m.d[i, j] + 1e-9 * (1 + abs(I.lo) + abs(I.hi))
