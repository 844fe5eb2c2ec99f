"""Constructive Lipschitz selections of set-valued mappings into the plane.

Notation.  For points ``x, x'`` and a constant ``lam`` the rectangle

    R[x, x' : lam] = H_R[ F(x) cap (F(x') + lam rho(x, x') Q0) ]

is the rectangular hull of the part of ``F(x)`` that a ``lam``-Lipschitz
selection can reach from ``F(x')``.

* :func:`algorithm_a` decides whether ``lam`` passes the two conditions
  ``dist(F(x), F(y)) <= lam rho(x, y)`` and
  ``dist(R[x, x'], R[y, y']) <= lam rho(x, y)``.  Passing implies a
  selection with seminorm at most ``8 lam``; failing implies there is no
  selection with seminorm below ``lam``.
* :func:`algorithm_b` builds that selection: a ``lam``-Lipschitz point
  ``g(x)`` of the rectangular hull of the ``3 lam`` refinement, then the
  uniform-norm metric projection of ``g(x)`` onto the refined set.
* :func:`select_hull_center`, :func:`select_segment_midpoint` and
  :func:`select_steiner` read a point off the second stage of the
  ``(lam, 3 lam)`` refinement; under the four-point hypothesis at ``lam``
  the first two have seminorm at most ``15 lam``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import geometry as geo
from .maps import Selection, SetMap, Verdict, ACCEPT
from .oracle import optimal_on_subset, optimal_selection
from .refinement import balanced_refine, iterate_refine

BOUNDED_KINDS = ("polygon", "segment", "box")


class SelectionRefused(ValueError):
    """The requested construction's hypothesis fails; ``verdict`` says where."""

    def __init__(self, message: str, verdict: Optional[Verdict] = None, point=None):
        super().__init__(message)
        self.verdict = verdict
        self.point = point


def _require_bounded(F: SetMap, what: str) -> None:
    if F.kind not in BOUNDED_KINDS:
        raise SelectionRefused(f"{what} needs polygon, segment or box values, got {F.kind!r}"
                               + ("; use halfplane_criteria" if F.kind == "halfplane" else ""))


def _tol(F: SetMap) -> float:
    s = 1.0
    for S in F.F.values():
        if not isinstance(S, geo.Empty):
            H = geo.rect_hull(S)
            s = max(s, abs(H.I1.lo), abs(H.I1.hi), abs(H.I2.lo), abs(H.I2.hi))
    return 1e-9 * (1.0 + s)


# --------------------------------------------------------------------------
# rectangles R[x, x' : lam]
# --------------------------------------------------------------------------

def pair_set(F: SetMap, lam: float, x, x2):
    """``F(x) cap (F(x') + lam rho(x, x') Q0)`` (possibly EMPTY)."""
    r = lam * F.m(x, x2)
    return geo.intersect([F[x], geo.minkowski_square(F[x2], r)])


def _rectangles(F: SetMap, lam: float):
    """Arrays ``lo[j], hi[j]`` of shape (N, N) and the first empty pair."""
    ids = F.ids
    n = len(ids)
    lo = np.empty((2, n, n))
    hi = np.empty((2, n, n))
    for i, x in enumerate(ids):
        for k, x2 in enumerate(ids):
            S = pair_set(F, lam, x, x2)
            if isinstance(S, geo.Empty):
                return None, None, (x, x2)
            H = geo.rect_hull(S)
            lo[0, i, k], hi[0, i, k] = H.I1.lo, H.I1.hi
            lo[1, i, k], hi[1, i, k] = H.I2.lo, H.I2.hi
    return lo, hi, None


def rectangle(F: SetMap, lam: float, x, x2) -> geo.Box:
    S = pair_set(F, lam, x, x2)
    if isinstance(S, geo.Empty):
        raise SelectionRefused(f"F({x!r}) is farther than lam*rho from F({x2!r})")
    return geo.rect_hull(S)


# --------------------------------------------------------------------------
# Algorithm A
# --------------------------------------------------------------------------

def algorithm_a(F: SetMap, lam: float, slack: Optional[float] = None) -> Verdict:
    """Decide the two rectangle conditions at ``lam``.

    A rejection names either a pair ``(x, y)`` (tag ``"dist"``) or a
    quadruple ``(x, x', y, y')`` together with the failing axis
    (tag ``"rect-1"`` / ``"rect-2"``).
    """
    _require_bounded(F, "algorithm_a")
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    tol = _tol(F) if slack is None else slack
    ids = F.ids
    d = F.m.d
    n = len(ids)
    for i in range(n):
        for k in range(i + 1, n):
            gap = geo.dist_linf(F[ids[i]], F[ids[k]])
            if gap > lam * d[i, k] + tol:
                return Verdict(False, (ids[i], ids[k]), "dist", gap - lam * d[i, k])
    lo, hi, bad = _rectangles(F, lam)
    if bad is not None:
        return Verdict(False, bad, "dist", None)
    # excess[j, x, x', y, y'] = a_j(x, x') - b_j(y, y') - lam rho(x, y)
    bound = lam * d[:, None, :, None]
    for j in range(2):
        ex = lo[j][:, :, None, None] - hi[j][None, None, :, :] - bound
        worst = float(ex.max())
        if worst > tol:
            i, k, p, q = np.unravel_index(int(np.argmax(ex)), ex.shape)
            return Verdict(False, (ids[i], ids[k], ids[p], ids[q]), f"rect-{j + 1}", worst)
    return ACCEPT


# --------------------------------------------------------------------------
# Algorithm B
# --------------------------------------------------------------------------

def _triple_bounds(F: SetMap, lt: float):
    """``a_j(x, x', x'')``, ``b_j(x, x', x'')`` for the triple sets at ``lt``."""
    ids = F.ids
    n = len(ids)
    d = F.m.d
    fat = [[geo.minkowski_square(F[ids[k]], lt * d[k, i]) for k in range(n)] for i in range(n)]
    a = np.full((2, n, n, n), -math.inf)
    b = np.full((2, n, n, n), math.inf)
    for i in range(n):
        for k in range(n):
            for l in range(k, n):
                S = geo.intersect([fat[i][k], fat[i][l]])
                if isinstance(S, geo.Empty):
                    raise SelectionRefused(f"triple set at {(ids[i], ids[k], ids[l])} is empty",
                                           point=(ids[i], ids[k], ids[l]))
                H = geo.rect_hull(S)
                for j, I in enumerate((H.I1, H.I2)):
                    a[j, i, k, l] = a[j, i, l, k] = I.lo
                    b[j, i, k, l] = b[j, i, l, k] = I.hi
    return a, b


def check_w_condition(F: SetMap, lam: float, lam_tilde: float) -> Verdict:
    """``dist(W[x, x', x''], W[y, y', y'']) <= lam rho(x, y)`` over all sextuples.

    ``W[x, x', x'']`` is the rectangular hull of
    ``(F(x') + lt rho(x', x) Q0) cap (F(x'') + lt rho(x'', x) Q0)`` with
    ``lt = lam_tilde``.  The rectangle condition at ``lam`` implies this
    one with ``lam_tilde = 3 lam``.
    """
    _require_bounded(F, "check_w_condition")
    try:
        a, b = _triple_bounds(F, lam_tilde)
    except SelectionRefused as exc:
        return Verdict(False, exc.point, "empty-triple", None)
    ids = F.ids
    n = len(ids)
    d = F.m.d
    tol = _tol(F)
    bound = lam * d.reshape(n, 1, 1, n, 1, 1)
    for j in range(2):
        A = a[j].reshape(n, n, n, 1, 1, 1)
        B = b[j].reshape(1, 1, 1, n, n, n)
        ex = A - B - bound
        worst = float(ex.max())
        if worst > tol:
            idx = np.unravel_index(int(np.argmax(ex)), ex.shape)
            return Verdict(False, tuple(ids[i] for i in idx), f"w-{j + 1}", worst)
    return ACCEPT


def algorithm_b(F: SetMap, lam: float, variant: str = "plus",
                check: bool = True) -> Selection:
    """Selection with seminorm at most ``8 lam`` when :func:`algorithm_a` accepts.

    ``variant`` picks the Lipschitz point of the hull of the refinement:
    ``"plus"`` (upper envelope, default) or ``"minus"`` (lower envelope).
    """
    _require_bounded(F, "algorithm_b")
    if variant not in ("plus", "minus"):
        raise ValueError(f"unknown variant {variant!r}")
    if check:
        v = algorithm_a(F, lam)
        if not v.accepted:
            raise SelectionRefused(f"lambda={lam} rejected ({v.tag} at {v.witness})", v)
    ids = F.ids
    d = F.m.d
    lt = 3.0 * lam
    F1 = balanced_refine(F, lt)
    if F1.empty_points:
        raise SelectionRefused(f"{lt}-refinement is empty at {F1.empty_points[0]!r}",
                               point=F1.empty_points[0])
    a, b = _triple_bounds(F, lt)
    n = len(ids)
    g = np.empty((n, 2))
    for j in range(2):
        if variant == "plus":
            Bj = b[j].reshape(n, -1).min(axis=1)           # inf over (y', y'')
            g[:, j] = (Bj[None, :] + lam * d).min(axis=1)
        else:
            Aj = a[j].reshape(n, -1).max(axis=1)
            g[:, j] = (Aj[None, :] - lam * d).max(axis=1)
    f = {}
    clamp = 0.0
    for i, x in enumerate(ids):
        H = geo.rect_hull(F1[x])
        gx = np.clip(g[i], H.lower, H.upper)
        clamp = max(clamp, float(np.abs(gx - g[i]).max()))
        f[x] = geo.metric_projection_linf(gx, F1[x], check_hull=False)
    return Selection.measure(F.m, f, f"algorithm-b-{variant}", lam=lam,
                             g={x: g[i] for i, x in enumerate(ids)}, hull_clamp=clamp)


# --------------------------------------------------------------------------
# selections read off the second refinement stage
# --------------------------------------------------------------------------

def _stage2(F: SetMap, lam: float) -> SetMap:
    trace = iterate_refine(F, (lam, 3.0 * lam))
    G = trace.final
    if G.empty_points:
        x = G.empty_points[0]
        raise SelectionRefused(f"second refinement stage is empty at {x!r}", point=x)
    return G


def select_hull_center(F: SetMap, lam: float) -> Selection:
    """Center of the rectangular hull of the second stage."""
    _require_bounded(F, "select_hull_center")
    G = _stage2(F, lam)
    f = {x: geo.center(geo.rect_hull(G[x])) for x in F.ids}
    return Selection.measure(F.m, f, "hull-center", lam=lam)


def select_segment_midpoint(F: SetMap, lam: float) -> Selection:
    """Midpoint of the second-stage segment."""
    if F.kind != "segment":
        raise SelectionRefused(f"segment midpoint selection needs segment values, got {F.kind!r}")
    G = _stage2(F, lam)
    f = {x: geo.midpoint(G[x]) for x in F.ids}
    return Selection.measure(F.m, f, "segment-midpoint", lam=lam)


def select_steiner(F: SetMap, lam: float) -> Selection:
    """Steiner point of the second stage (seminorm reported, not bounded)."""
    _require_bounded(F, "select_steiner")
    G = _stage2(F, lam)
    f = {x: geo.steiner_point(G[x]) for x in F.ids}
    return Selection.measure(F.m, f, "steiner", lam=lam)


# --------------------------------------------------------------------------
# pointwise criteria
# --------------------------------------------------------------------------

def check_pointwise_criterion(F: SetMap, lam: float, family: str = "rect") -> dict:
    """Per-point nonemptiness of one of two intersections.

    ``family="rect"``:  cap over y, y' of ``R[y, y'] + lam rho(x, y) Q0``
    (boxes, so this is interval arithmetic).

    ``family="set"``:  cap over y, y' of
    ``(F(y) cap (F(y') + lam rho(y', y) Q0)) + lam rho(x, y) Q0``.
    """
    _require_bounded(F, "check_pointwise_criterion")
    ids = F.ids
    n = len(ids)
    d = F.m.d
    if family == "rect":
        lo, hi, bad = _rectangles(F, lam)
        if bad is not None:
            return {x: False for x in ids}
        tol = _tol(F)
        out = {}
        for i, x in enumerate(ids):
            r = lam * d[i][:, None]
            ok = all(float((lo[j] - r).max()) <= float((hi[j] + r).min()) + tol for j in range(2))
            out[x] = ok
        return out
    if family == "set":
        pairs = {}
        for k, y in enumerate(ids):
            for l, y2 in enumerate(ids):
                S = pair_set(F, lam, y, y2)
                if isinstance(S, geo.Empty):
                    return {x: False for x in ids}
                pairs[k, l] = S
        out = {}
        for i, x in enumerate(ids):
            sets = [geo.minkowski_square(S, lam * d[i, k]) for (k, l), S in pairs.items()]
            out[x] = not isinstance(geo.intersect(sets), geo.Empty)
        return out
    raise ValueError(f"unknown criterion family {family!r}")


# --------------------------------------------------------------------------
# finiteness bound and lambda search
# --------------------------------------------------------------------------

def finiteness_bound(F: SetMap) -> float:
    """Largest optimal seminorm over restrictions to at most four points.

    Restriction can only lower the optimum, so for four or more points the
    four-point subsets suffice.
    """
    ids = F.ids
    if len(ids) <= 4:
        return optimal_selection(F).lambda_star
    return max(optimal_on_subset(F, sub).lambda_star
               for sub in itertools.combinations(ids, 4))


@dataclass
class SearchReport:
    lam: float
    selection: Optional[Selection]
    probes: list = field(default_factory=list)
    anomaly: bool = False


def _search_upper(F: SetMap) -> float:
    d = F.m.d
    pos = d[d > 0]
    if pos.size == 0:
        return 1.0
    gaps = [geo.dist_linf(F[x], F[y]) for x, y in itertools.combinations(F.ids, 2)]
    return max(gaps, default=0.0) / float(pos.min()) + 1.0


def near_optimal(F: SetMap, tol: float = 1e-6, max_iter: int = 200,
                 grid: int = 400) -> SearchReport:
    """Smallest ``lam`` accepted by :func:`algorithm_a`, to relative ``tol``.

    Acceptance is probed by bisection.  If some accepted probe lies below
    a rejected one, acceptance is not monotone on the probes; the search
    then falls back to a uniform scan and flags the anomaly.  The returned
    selection comes from :func:`algorithm_b`.
    """
    _require_bounded(F, "near_optimal")
    probes = []

    def accept(lam):
        ok = algorithm_a(F, lam).accepted
        probes.append((lam, ok))
        return ok

    if accept(0.0):
        return SearchReport(0.0, algorithm_b(F, 0.0, check=False), probes)
    hi = _search_upper(F)
    for _ in range(64):
        if accept(hi):
            break
        hi *= 2.0
    else:
        raise SelectionRefused("no lambda is accepted (disjoint sets at distance zero?)")
    lo = 0.0
    for _ in range(max_iter):
        if hi - lo <= tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if accept(mid):
            hi = mid
        else:
            lo = mid
    anomaly = any(ok_a and not ok_r and la < lr
                  for la, ok_a in probes for lr, ok_r in probes)
    if anomaly:
        top = max(la for la, _ in probes)
        scan = [k * top / grid for k in range(1, grid + 1)]
        hi = next(v for v in scan if accept(v))
    return SearchReport(hi, algorithm_b(F, hi, check=False), probes, anomaly)
