"""Lipschitz selections of set-valued mappings into the plane.

The uniform norm is used throughout.  Typical use::

    from lipsel import PseudoMetric, SetMap, geometry as geo
    from lipsel import algorithm_a, algorithm_b, optimal_selection

    m = PseudoMetric(("a", "b"), [[0, 1], [1, 0]])
    F = SetMap(m, {"a": geo.Polygon([(0, 0)]), "b": geo.Polygon([(2, 0)])})
    optimal_selection(F).lambda_star      # 2.0
    algorithm_a(F, 2.0).accepted          # True
"""
from . import geometry, halfplane, lp_core, oracle, refinement, selection_1d, selector
from .halfplane import (HalfPlaneMap, check_mc2, check_star1, check_star2, coverage_status,
                        inf_lambda_cf, inf_lambda_star, polygon_mc2)
from .maps import Selection, SetMap, Verdict, seminorm
from .metric_space import MetricError, PseudoMetric, diam, validate_pseudometric
from .oracle import optimal_selection
from .refinement import balanced_refine, core_check, iterate_refine, stabilization_check
from .selector import (algorithm_a, algorithm_b, finiteness_bound, near_optimal,
                       select_hull_center, select_segment_midpoint, select_steiner)

__version__ = "0.1.0"

__all__ = [
    "geometry", "halfplane", "lp_core", "oracle", "refinement", "selection_1d", "selector",
    "HalfPlaneMap", "check_mc2", "check_star1", "check_star2", "coverage_status",
    "inf_lambda_cf", "inf_lambda_star", "polygon_mc2",
    "Selection", "SetMap", "Verdict", "seminorm",
    "MetricError", "PseudoMetric", "diam", "validate_pseudometric",
    "optimal_selection",
    "balanced_refine", "core_check", "iterate_refine", "stabilization_check",
    "algorithm_a", "algorithm_b", "finiteness_bound", "near_optimal",
    "select_hull_center", "select_segment_midpoint", "select_steiner",
]
