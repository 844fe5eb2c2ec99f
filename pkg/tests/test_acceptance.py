"""Acceptance suite.

Each test prints one line ``criterion K: PASS|FAIL ...`` with the instance
count and the worst observed quantity, then asserts.  Instances come from
fixed seeds so that the printed numbers are reproducible.  Run on its own
with ``pytest tests/test_acceptance.py -v``.
"""
import math
import time

import numpy as np
import pytest

from lipsel import geometry as geo
from lipsel.geometry import Box, Polygon
from lipsel.halfplane import bounding_subfamily, check_mc2, coverage_status, inf_lambda_star
from lipsel.oracle import optimal_selection
from lipsel.random_instances import (random_halfplane_map, random_interval_map, random_map,
                                     random_polygon, random_polygon_map)
from lipsel.refinement import balanced_refine, core_check, iterate_refine, max_stage_change
from lipsel.selection_1d import lambda_f, select_plus
from lipsel.selector import (algorithm_a, algorithm_b, finiteness_bound, select_hull_center,
                             select_segment_midpoint)

SQ2 = math.sqrt(2)
KINDS = ("polygon", "box", "segment")


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, text: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
    return emit


# ------------------------------------------------------------------ 1

def test_criterion_1_rectangle_sandwich(report):
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    fails, worst_ratio, worst_gap, n_b = [], 0.0, 0.0, 0
    for it in range(500):
        F = random_polygon_map(rng, int(rng.integers(2, 7)), max_vertices=8)
        lam = optimal_selection(F).lambda_star
        if not algorithm_a(F, lam * (1 + 1e-6)).accepted:
            fails.append((it, "rejects optimum"))
        probes = [lam * (1 + 1e-6), lam * rng.uniform(1, 3), lam * rng.uniform(1 / 8, 1)]
        for p in probes:
            if not algorithm_a(F, p).accepted:
                continue
            s = algorithm_b(F, p)
            n_b += 1
            gap = s.membership_gap(F)
            worst_gap = max(worst_gap, gap)
            if p > 0:
                worst_ratio = max(worst_ratio, s.seminorm / p)
            if s.seminorm > 8 * p + 1e-6 or gap > 1e-7:
                fails.append((it, "selection bound", p, s.seminorm, gap))
        top = lam / 8 - 1e-6
        if top > 0:
            for p in (top * (1 - 1e-12), top * rng.uniform(0, 1)):
                if algorithm_a(F, p).accepted:
                    fails.append((it, "accepts below optimum / 8", p))
    dt = time.perf_counter() - t0
    ok = not fails and dt < 60
    report(1, ok, f"500 instances, {n_b} selections, worst |f|/lambda {worst_ratio:.3f} (bound 8), "
                  f"worst gap {worst_gap:.1e}, {dt:.1f} s (limit 60 s)")
    assert not fails, fails[:5]
    assert dt < 60


# ------------------------------------------------------------------ 2, 3, 8

def scaled_instances(count, seed):
    """Instances rescaled so that finiteness_bound equals 1."""
    rng = np.random.default_rng(seed)
    out, skipped = [], 0
    while len(out) < count:
        kind = KINDS[len(out) % 3]
        F = random_map(rng, kind, int(rng.integers(2, 7)))
        fb = finiteness_bound(F)
        if not 1e-9 < fb < math.inf:
            # zero: a constant selection exists; infinite: glued points carry
            # disjoint sets and no Lipschitz selection exists at all
            skipped += 1
            continue
        out.append((kind, F.scaled(fb)))
    return out, skipped


@pytest.fixture(scope="module")
def core_suite():
    insts, skipped = scaled_instances(300, 2002)
    traces = [iterate_refine(F, (1, 3)) for _, F in insts]
    return insts, traces, skipped


def test_criterion_2_core(report, core_suite):
    insts, traces, skipped = core_suite
    fails, worst = [], 0.0
    for i, tr in enumerate(traces):
        if tr.final.empty_points:
            fails.append((i, "empty", tr.final.empty_points))
            continue
        rep = core_check(tr.final, 15.0)
        worst = max(worst, rep.worst_ratio)
        if rep.worst_ratio > 15 + 1e-6 or not rep.zero_distance_ok:
            fails.append((i, rep.worst_ratio))
    report(2, not fails, f"300 instances ({skipped} draws with zero or infinite bound skipped), "
                         f"worst Hausdorff ratio {worst:.4f} (bound 15)")
    assert not fails, fails[:5]


def test_criterion_3_stabilization(report, core_suite):
    insts, traces, _ = core_suite
    fails, worst = [], 0.0
    for i, tr in enumerate(traces):
        if tr.final.empty_points:
            fails.append((i, "empty"))
            continue
        ch = max_stage_change(tr.final, balanced_refine(tr.final, 15.0))
        worst = max(worst, ch)
        if ch > 1e-6:
            fails.append((i, ch))
    report(3, not fails, f"300 instances, largest third-stage change {worst:.1e} (limit 1e-6)")
    assert not fails, fails[:5]


def test_criterion_8_selection_variants(report, core_suite):
    insts, traces, _ = core_suite
    fails, worst, n_mid = [], 0.0, 0
    for i, ((kind, F), tr) in enumerate(zip(insts, traces)):
        sels = [select_hull_center(F, 1.0)]
        if kind == "segment":
            sels.append(select_segment_midpoint(F, 1.0))
            n_mid += 1
        for s in sels:
            worst = max(worst, s.seminorm)
            if s.seminorm > 15 + 1e-6 or s.membership_gap(F) > 1e-7:
                fails.append((i, s.method, s.seminorm, s.membership_gap(F)))
    report(8, not fails, f"300 hull-center + {n_mid} segment-midpoint selections, "
                         f"worst |f| / bound {worst:.4f} (limit 15)")
    assert not fails, fails[:5]


# ------------------------------------------------------------------ 4

def test_criterion_4_finiteness(report):
    rng = np.random.default_rng(4004)
    fails, worst = [], 0.0
    for it in range(300):
        F = random_map(rng, KINDS[it % 3], 6)
        lam, fb = optimal_selection(F).lambda_star, finiteness_bound(F)
        if fb > 0:
            worst = max(worst, lam / fb)
        if lam > 4 * fb + 1e-6:
            fails.append((it, lam, fb))
    report(4, not fails, f"300 instances with N = 6, worst optimum / bound {worst:.4f} (limit 4)")
    assert not fails, fails[:5]


# ------------------------------------------------------------------ 5

def test_criterion_5_one_dimensional(report):
    rng = np.random.default_rng(5005)
    fails, worst_sel, worst_orc = [], 0.0, 0.0
    for it in range(1000):
        F = random_interval_map(rng, int(rng.integers(2, 8)))
        lf = lambda_f(F)
        e1 = abs(select_plus(F, lf).seminorm - lf)
        e2 = abs(optimal_selection(F).lambda_star - lf)
        worst_sel, worst_orc = max(worst_sel, e1), max(worst_orc, e2)
        if e1 > 1e-9 or e2 > 1e-6:
            fails.append((it, e1, e2))
    report(5, not fails, f"1000 instances, worst seminorm error {worst_sel:.1e} (1e-9), "
                         f"worst oracle error {worst_orc:.1e} (1e-6)")
    assert not fails, fails[:5]


# ------------------------------------------------------------------ 6

def test_criterion_6_halfplane_sandwich(report):
    rng = np.random.default_rng(6006)
    fails, skipped, k = [], 0, 0
    lo_ratio, hi_ratio = math.inf, 0.0
    while k < 300:
        F = random_halfplane_map(rng, int(rng.integers(3, 7)))
        if not coverage_status(F).ok or bounding_subfamily(F) is None:
            skipped += 1
            continue
        k += 1
        lam, inf = optimal_selection(F).lambda_star, inf_lambda_star(F)
        if inf > 0:
            lo_ratio, hi_ratio = min(lo_ratio, lam / inf), max(hi_ratio, lam / inf)
        if not inf / SQ2 <= lam * (1 + 1e-9) + 1e-9:
            fails.append((k, "lower", inf, lam))
        if lam > 8 * inf + 1e-6:
            fails.append((k, "upper", inf, lam))
        if not check_mc2(F, SQ2 * lam).accepted:
            fails.append((k, "coordinate-free necessity", lam))
    report(6, not fails, f"300 instances ({skipped} draws filtered), optimum / inf in "
                         f"[{lo_ratio:.3f}, {hi_ratio:.3f}] (allowed [{1 / SQ2:.3f}, 8])")
    assert not fails, fails[:5]


# ------------------------------------------------------------------ 7

CASES = 10_000


def _bounded(rng):
    r = rng.random()
    if r < 0.6:
        return random_polygon(rng)
    if r < 0.8:
        lo = rng.uniform(-3, 3, 2)
        hi = lo + rng.exponential(1.0, 2) * (rng.random(2) < 0.9)
        return Box((lo[0], hi[0]), (lo[1], hi[1]))
    return geo.Segment(rng.uniform(-3, 3, 2), rng.uniform(-3, 3, 2))


def _box_close(A: Box, B: Box, tol):
    return (np.abs(A.lower - B.lower).max() <= tol) and (np.abs(A.upper - B.upper).max() <= tol)


def _inside(P, pts, tol):
    """Vectorised membership of many points in a bounded polygonal set."""
    A, b = P.constraints()
    return np.all(pts @ A.T - b <= tol * (1 + np.abs(pts).max()), axis=1)


def identity_nhs(rng):
    S, r = _bounded(rng), rng.uniform(0, 3)
    H = geo.rect_hull(S)
    lhs = geo.rect_hull(geo.minkowski_square(S, r))
    return _box_close(lhs, Box(H.I1.expand(r), H.I2.expand(r)),
                      1e-9 * (1 + r + np.abs(H.lower).max() + np.abs(H.upper).max()))


def identity_dhrh1(rng):
    A, B = _bounded(rng), _bounded(rng)
    return geo.hausdorff_linf(geo.rect_hull(A), geo.rect_hull(B)) <= geo.hausdorff_linf(A, B) + 1e-9


def identity_chrh(rng):
    S = _bounded(rng)
    return S.contains(geo.center(geo.rect_hull(S)), 1e-9)


def identity_phc(rng):
    k = int(rng.integers(2, 6))
    centre = rng.uniform(-1, 1, 2)
    fam = []
    for _ in range(k):
        if rng.random() < 0.5:
            P = rng.normal(size=(int(rng.integers(1, 6)), 2)) * rng.uniform(0.3, 2)
            fam.append(Polygon(np.vstack([P + centre + rng.normal(size=2) * 0.5, centre])))
        else:
            lo, hi = centre - rng.exponential(1.0, 2), centre + rng.exponential(1.0, 2)
            fam.append(Box((lo[0], hi[0]), (lo[1], hi[1])))
    pairs = [geo.intersect([C, D]) for C in fam for D in fam]
    proj = [geo.project_axis(S, 1) for S in pairs]
    if max(I.lo for I in proj) > min(I.hi for I in proj) + 1e-12:
        return None
    hull = geo.rect_hull(geo.intersect(fam))
    hulls = [geo.rect_hull(S) for S in pairs]
    meet = [max(h.I1.lo for h in hulls), min(h.I1.hi for h in hulls),
            max(h.I2.lo for h in hulls), min(h.I2.hi for h in hulls)]
    return bool(np.allclose([hull.I1.lo, hull.I1.hi, hull.I2.lo, hull.I2.hi], meet, atol=1e-7, rtol=0))


def identity_lnpr(rng):
    S = _bounded(rng)
    H = geo.rect_hull(S)
    a, b = rng.uniform(H.lower, H.upper, size=(2, 2))
    pa, pb = geo.metric_projection_linf(a, S), geo.metric_projection_linf(b, S)
    return np.abs(pa - pb).max() <= 2 * np.abs(a - b).max() + 1e-7


def identity_wabpr(rng):
    A = random_polygon(rng)
    B = geo.minkowski_square(A, rng.uniform(0, 2))
    if rng.random() < 0.5:
        cut = geo.intersect([B, geo.minkowski_square(Polygon([rng.uniform(-5, 5, 2)]), 6.0)])
        if not isinstance(cut, geo.Empty) and all(cut.contains(v, 1e-12) for v in A.vertices):
            B = cut
    H = geo.rect_hull(A)
    a = rng.uniform(H.lower, H.upper)
    lhs = np.abs(geo.metric_projection_linf(a, A) - geo.metric_projection_linf(a, B)).max()
    rhs = geo.point_dist_linf(a, A) - geo.point_dist_linf(a, B)
    return abs(lhs - rhs) <= 1e-7


def identity_ns(rng):
    L = float(rng.choice([2.0, 3.0, 5.0]))
    C = random_polygon(rng)
    a = rng.uniform(-5, 5, 2)
    r = geo.point_dist_linf(a, C) * rng.uniform(1.0, 1.5) + 1e-3
    s = rng.uniform(0.01, 2.0)
    ball = lambda c, rad: Box((c[0] - rad, c[0] + rad), (c[1] - rad, c[1] + rad))  # noqa: E731
    left = geo.as_polygon(geo.minkowski_square(geo.intersect([C, ball(a, L * r)]), geo.theta(L) * s))
    right = geo.as_polygon(geo.intersect([geo.minkowski_square(C, s), ball(a, L * r + s)]))
    V = right.vertices
    W = np.roll(V, -1, axis=0)
    t = rng.random((1000, 1))
    e = rng.integers(len(V), size=1000)
    pts = np.vstack([V, V[e] + t * (W[e] - V[e])])     # boundary samples
    return bool(_inside(left, pts, 1e-7).all())


IDENTITIES = [("hull of a square sum", identity_nhs), ("hull Hausdorff contraction", identity_dhrh1),
              ("hull centre membership", identity_chrh), ("projection-hull identity", identity_phc),
              ("projection 2-Lipschitz", identity_lnpr), ("nested projection equality", identity_wabpr),
              ("neighbourhood inclusion", identity_ns)]


def test_criterion_7_geometry_identities(report):
    rng = np.random.default_rng(7007)
    summary, bad = [], 0
    for name, fn in IDENTITIES:
        done = viol = 0
        while done < CASES:
            res = fn(rng)
            if res is None:      # precondition not met; draw again
                continue
            done += 1
            viol += not res
        bad += viol
        summary.append(f"{name} {viol}/{done}")
    report(7, bad == 0, "violations: " + ", ".join(summary))
    assert bad == 0


# ------------------------------------------------------------------ 9

def test_criterion_9_note(capsys):
    with capsys.disabled():
        print("\ncriterion 9: NOTE  the general-norm constants and the large sufficiency constant "
              "of the coordinate-free criterion are upper bounds only; nothing here tests tightness")
