"""Planar convex sets under the uniform (l-infinity) norm.

Every set exposes a half-plane description ``A x <= b`` with unit row
normals, which is the single path into :mod:`lipsel.lp_core` for unbounded
queries.  Bounded sets are handled exactly by vertex arithmetic: Minkowski
sums with the square ``Q0 = [-1, 1]^2`` are convex hulls of shifted
vertices, intersections are half-plane clipping, and l-infinity distances
are minimised over the vertices of a Minkowski difference together with its
crossings of the two diagonals (where the norm has its kinks).

Axes are numbered 1 and 2, matching the coordinates ``(x1, x2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import lp_core

SLACK = 1e-9      # relative; emptiness / membership slack
DEDUP = 1e-9      # relative; vertex deduplication
INF = math.inf

Point = tuple


class GeometryError(ValueError):
    pass


class ProjectionError(GeometryError):
    """Metric projection requested outside the rectangular hull."""


def _scale(*vals) -> float:
    s = 0.0
    for v in vals:
        if v is None:
            continue
        a = np.abs(np.asarray(v, dtype=float))
        a = a[np.isfinite(a)]
        if a.size:
            s = max(s, float(a.max()))
    return 1.0 + s


# --------------------------------------------------------------------------
# set types
# --------------------------------------------------------------------------

class ConvexSet:
    kind: str = "abstract"
    bounded: bool = True
    is_empty: bool = False

    def constraints(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def contains(self, p, tol: float = 1e-7) -> bool:
        A, b = self.constraints()
        if A.shape[0] == 0:
            return True
        return bool(np.all(A @ np.asarray(p, dtype=float) <= b + tol))


class Empty(ConvexSet):
    kind = "empty"
    is_empty = True

    def constraints(self):
        return np.array([[1.0, 0.0], [-1.0, 0.0]]), np.array([-1.0, 0.0])

    def contains(self, p, tol=1e-7):
        return False

    def __repr__(self):
        return "EMPTY"

    def __eq__(self, other):
        return isinstance(other, Empty)

    def __hash__(self):
        return 0


EMPTY = Empty()


@dataclass(frozen=True)
class Interval1:
    """Closed interval of the line; ``lo``/``hi`` may be infinite."""

    lo: float
    hi: float
    kind = "interval"
    is_empty = False

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise GeometryError("interval bound is NaN")
        if lo > hi:
            raise GeometryError(f"interval with lo > hi: [{lo}, {hi}]")
        if lo == INF or hi == -INF:
            raise GeometryError("interval collapsed at infinity")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, t, tol: float = 1e-7) -> bool:
        return self.lo - tol <= t <= self.hi + tol

    def expand(self, r: float) -> "Interval1":
        return Interval1(self.lo - r, self.hi + r)


def _interval_meet(ivs: Iterable[Interval1], eps: float = 0.0):
    lo, hi = -INF, INF
    for iv in ivs:
        lo = max(lo, iv.lo)
        hi = min(hi, iv.hi)
    if lo > hi:
        if lo - hi > eps:
            return EMPTY
        lo = hi = 0.5 * (lo + hi)
    return Interval1(lo, hi)


def _interval_dist(I: Interval1, J: Interval1) -> float:
    return max(0.0, I.lo - J.hi, J.lo - I.hi)


class Polygon(ConvexSet):
    """Convex hull of a finite point set: a point, a segment or a polygon.

    Vertices are stored counterclockwise, deduplicated, without collinear
    triples.
    """

    kind = "polygon"
    bounded = True

    def __init__(self, vertices, _canonical: bool = False):
        if _canonical:
            pts = [tuple(map(float, p)) for p in vertices]
        else:
            arr = np.asarray(vertices, dtype=float).reshape(-1, 2)
            if arr.shape[0] == 0:
                raise GeometryError("polygon needs at least one vertex")
            if not np.all(np.isfinite(arr)):
                raise GeometryError("non-finite polygon vertex")
            pts = _hull([(float(x), float(y)) for x, y in arr])
        self._pts = tuple(pts)
        self._cons = None

    @property
    def vertices(self) -> np.ndarray:
        return np.array(self._pts, dtype=float)

    @property
    def dim(self) -> int:
        return min(len(self._pts) - 1, 2)

    def __len__(self):
        return len(self._pts)

    def __repr__(self):
        return f"Polygon({[list(p) for p in self._pts]})"

    def constraints(self):
        if self._cons is None:
            self._cons = _polygon_constraints(self._pts)
        return self._cons

    def contains(self, p, tol: float = 1e-7) -> bool:
        return point_dist_linf(p, self) <= tol


class Segment(ConvexSet):
    kind = "segment"
    bounded = True

    def __init__(self, a, b):
        self.a = np.asarray(a, dtype=float).reshape(2)
        self.b = np.asarray(b, dtype=float).reshape(2)
        if not (np.all(np.isfinite(self.a)) and np.all(np.isfinite(self.b))):
            raise GeometryError("non-finite segment endpoint")
        self.polygon = Polygon([self.a, self.b])

    def __repr__(self):
        return f"Segment({self.a.tolist()}, {self.b.tolist()})"

    def constraints(self):
        return self.polygon.constraints()

    def contains(self, p, tol: float = 1e-7) -> bool:
        return self.polygon.contains(p, tol)

    @property
    def length(self) -> float:
        return float(np.abs(self.b - self.a).max())


class Box(ConvexSet):
    """Axis-parallel rectangle ``I1 x I2``; sides may be unbounded."""

    kind = "box"

    def __init__(self, I1, I2):
        self.I1 = I1 if isinstance(I1, Interval1) else Interval1(*I1)
        self.I2 = I2 if isinstance(I2, Interval1) else Interval1(*I2)

    @property
    def bounded(self) -> bool:
        return self.I1.bounded and self.I2.bounded

    @property
    def lower(self) -> np.ndarray:
        return np.array([self.I1.lo, self.I2.lo])

    @property
    def upper(self) -> np.ndarray:
        return np.array([self.I1.hi, self.I2.hi])

    def __repr__(self):
        return f"Box([{self.I1.lo}, {self.I1.hi}] x [{self.I2.lo}, {self.I2.hi}])"

    def __eq__(self, other):
        return isinstance(other, Box) and self.I1 == other.I1 and self.I2 == other.I2

    def __hash__(self):
        return hash((self.I1, self.I2))

    def interval(self, axis: int) -> Interval1:
        return self.I1 if axis == 1 else self.I2

    def constraints(self):
        rows, bs = [], []
        for k, I in ((0, self.I1), (1, self.I2)):
            e = [0.0, 0.0]
            e[k] = 1.0
            if math.isfinite(I.hi):
                rows.append(list(e))
                bs.append(I.hi)
            if math.isfinite(I.lo):
                e2 = [-v for v in e]
                rows.append(e2)
                bs.append(-I.lo)
        return np.array(rows, dtype=float).reshape(-1, 2), np.array(bs, dtype=float)

    def contains(self, p, tol: float = 1e-7) -> bool:
        return self.I1.contains(p[0], tol) and self.I2.contains(p[1], tol)

    @property
    def polygon(self) -> Polygon:
        if not self.bounded:
            raise GeometryError("unbounded box has no vertex form")
        x0, x1, y0, y1 = self.I1.lo, self.I1.hi, self.I2.lo, self.I2.hi
        return Polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


class HalfPlane(ConvexSet):
    """``{a : <a, n> + alpha <= 0}`` with unit outward normal ``n``."""

    kind = "halfplane"
    bounded = False

    def __init__(self, n, alpha: float):
        n = np.asarray(n, dtype=float).reshape(2)
        if not np.all(np.isfinite(n)) or not math.isfinite(alpha):
            raise GeometryError("non-finite half-plane data")
        if abs(float(np.hypot(*n)) - 1.0) > 1e-12:
            raise GeometryError(f"half-plane normal {n.tolist()} is not a unit vector")
        self.n = n
        self.alpha = float(alpha)

    @classmethod
    def from_normal(cls, n, alpha: float) -> "HalfPlane":
        """Normalise an arbitrary nonzero normal (the set is unchanged)."""
        n = np.asarray(n, dtype=float)
        s = float(np.hypot(*n))
        if s == 0.0:
            raise GeometryError("zero normal")
        return cls(n / s, alpha / s)

    def __repr__(self):
        return f"HalfPlane(n={self.n.tolist()}, alpha={self.alpha})"

    def constraints(self):
        return self.n.reshape(1, 2).copy(), np.array([-self.alpha])


class Region(ConvexSet):
    """Nonempty intersection of half-planes that is not bounded."""

    kind = "region"
    bounded = False

    def __init__(self, A, b):
        A = np.asarray(A, dtype=float).reshape(-1, 2)
        b = np.asarray(b, dtype=float).reshape(-1)
        norms = np.hypot(A[:, 0], A[:, 1])
        keep = norms > 0
        self.A = A[keep] / norms[keep, None]
        self.b = b[keep] / norms[keep]

    def __repr__(self):
        return f"Region({len(self.b)} half-planes)"

    def constraints(self):
        return self.A, self.b


# --------------------------------------------------------------------------
# vertex-level helpers
# --------------------------------------------------------------------------

def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(pts: Sequence[Point]) -> list:
    """Counterclockwise convex hull, near-duplicates merged."""
    if not pts:
        return []
    s = 1.0 + max(max(abs(p[0]), abs(p[1])) for p in pts)
    tol_d = DEDUP * s
    P = sorted(set(pts))
    if len(P) == 1:
        return [P[0]]
    # merge near-duplicates (sorted order groups most of them)
    merged = [P[0]]
    for p in P[1:]:
        q = merged[-1]
        if abs(p[0] - q[0]) <= tol_d and abs(p[1] - q[1]) <= tol_d:
            continue
        merged.append(p)
    P = merged
    if len(P) == 1:
        return [P[0]]
    # exact orientation tests in the chain: a tolerance here can pop a true
    # extreme point when two x-coordinates differ by a rounding error
    lower = []
    for p in P:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(P):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    H = lower[:-1] + upper[:-1]
    if len(H) == 0:
        H = [P[0]]
    out = []
    for p in H:
        if out and abs(p[0] - out[-1][0]) <= tol_d and abs(p[1] - out[-1][1]) <= tol_d:
            continue
        out.append(p)
    while len(out) > 1 and abs(out[0][0] - out[-1][0]) <= tol_d and abs(out[0][1] - out[-1][1]) <= tol_d:
        out.pop()
    return _drop_collinear(out, 1e-3 * tol_d)


def _drop_collinear(cyc: list, tol: float) -> list:
    """Remove vertices within ``tol`` of the chord of their neighbours and
    lying between them (never an extreme point of a thin polygon)."""
    changed = True
    while changed and len(cyc) > 2:
        changed = False
        k = len(cyc)
        for i in range(k):
            a, v, b = cyc[i - 1], cyc[i], cyc[(i + 1) % k]
            dx, dy = b[0] - a[0], b[1] - a[1]
            L2 = dx * dx + dy * dy
            if L2 == 0.0:
                continue
            t = ((v[0] - a[0]) * dx + (v[1] - a[1]) * dy) / L2
            if 0.0 <= t <= 1.0 and abs(_cross(a, b, v)) <= tol * math.sqrt(L2):
                del cyc[i]
                changed = True
                break
    return cyc


def _polygon_constraints(pts) -> tuple[np.ndarray, np.ndarray]:
    k = len(pts)
    rows, bs = [], []
    if k == 1:
        x, y = pts[0]
        return (np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]),
                np.array([x, -x, y, -y]))
    if k == 2:
        (x0, y0), (x1, y1) = pts
        dx, dy = x1 - x0, y1 - y0
        L = math.hypot(dx, dy)
        nx, ny = dy / L, -dx / L
        c = nx * x0 + ny * y0
        ux, uy = dx / L, dy / L
        rows = [(nx, ny), (-nx, -ny), (ux, uy), (-ux, -uy)]
        bs = [c, -c, ux * x1 + uy * y1, -(ux * x0 + uy * y0)]
        return np.array(rows), np.array(bs)
    for i in range(k):
        (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % k]
        dx, dy = x1 - x0, y1 - y0
        L = math.hypot(dx, dy)
        nx, ny = dy / L, -dx / L   # outward for counterclockwise order
        rows.append((nx, ny))
        bs.append(nx * x0 + ny * y0)
    return np.array(rows), np.array(bs)


def _clip(pts: list, a0: float, a1: float, b: float, eps: float):
    """Clip a convex vertex cycle by ``a0 x + a1 y <= b``; None if empty."""
    vals = [a0 * x + a1 * y - b for x, y in pts]
    if max(vals) <= eps:
        return pts
    if min(vals) > eps:
        return None
    k = len(pts)
    if k == 1:
        return None
    if k == 2:
        (p, q), (vp, vq) = pts, vals
        out = [p] if vp <= eps else []
        t = min(1.0, max(0.0, vp / (vp - vq)))
        out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        if vq <= eps:
            out.append(q)
        return out
    out = []
    for i in range(k):
        p, vp = pts[i], vals[i]
        j = (i + 1) % k
        q, vq = pts[j], vals[j]
        pin, qin = vp <= eps, vq <= eps
        if pin:
            out.append(p)
        if pin != qin and (vp > 0) != (vq > 0):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out or None


def _min_linf_norm(pts) -> float:
    """min of ||d||_inf over the convex hull of ``pts`` (ccw cycle)."""
    k = len(pts)
    if k == 1:
        return max(abs(pts[0][0]), abs(pts[0][1]))
    best = min(max(abs(x), abs(y)) for x, y in pts)
    if k >= 3:
        inside = True
        for i in range(k):
            if _cross(pts[i], pts[(i + 1) % k], (0.0, 0.0)) < 0:
                inside = False
                break
        if inside:
            return 0.0
    m = k if k >= 3 else 1
    for i in range(m):
        p, q = pts[i], pts[(i + 1) % k]
        dx, dy = q[0] - p[0], q[1] - p[1]
        # crossings with x = y and x = -y
        for s in (1.0, -1.0):
            den = dx - s * dy
            if den != 0.0:
                t = -(p[0] - s * p[1]) / den
                if 0.0 <= t <= 1.0:
                    x, y = p[0] + t * dx, p[1] + t * dy
                    best = min(best, max(abs(x), abs(y)))
    if k == 2:
        # origin on the segment
        p, q = pts
        if abs(_cross(p, q, (0.0, 0.0))) <= 1e-15 * (1 + max(map(abs, p + q))) ** 2:
            if min(p[0], q[0]) <= 0 <= max(p[0], q[0]) and min(p[1], q[1]) <= 0 <= max(p[1], q[1]):
                return 0.0
    return best


# --------------------------------------------------------------------------
# conversions
# --------------------------------------------------------------------------

def as_polygon(S: ConvexSet) -> Polygon:
    if isinstance(S, Polygon):
        return S
    if isinstance(S, Segment):
        return S.polygon
    if isinstance(S, Box):
        return S.polygon
    if isinstance(S, (HalfPlane, Region)):
        raise GeometryError(f"{S.kind} is unbounded")
    raise GeometryError(f"no polygon form for {S!r}")


def _pts(S: ConvexSet) -> list:
    return list(as_polygon(S)._pts)


def _to_region(A, b):
    return Region(A, b)


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def minkowski_square(S, r: float):
    """``S + r Q0`` where ``Q0`` is the unit square of the uniform norm."""
    r = float(r)
    if r < 0 or not math.isfinite(r):
        raise GeometryError(f"radius must be a finite nonnegative number, got {r}")
    if isinstance(S, Empty):
        return EMPTY
    if isinstance(S, Interval1):
        return S.expand(r)
    if r == 0.0:
        return S
    if isinstance(S, Box):
        return Box(S.I1.expand(r), S.I2.expand(r))
    if isinstance(S, HalfPlane):
        return HalfPlane(S.n, S.alpha - r * float(np.abs(S.n).sum()))
    if isinstance(S, (Polygon, Segment)):
        pts = _pts(S)
        shifted = [(x + dx, y + dy) for x, y in pts for dx in (-r, r) for dy in (-r, r)]
        return Polygon(_hull(shifted), _canonical=True)
    if isinstance(S, Region):
        A, b = S.constraints()
        rows = [A]
        bs = [b + r * np.abs(A).sum(axis=1)]
        for axis in (1, 2):
            I = project_axis(S, axis)
            e = np.zeros(2)
            e[axis - 1] = 1.0
            if math.isfinite(I.hi):
                rows.append(e.reshape(1, 2))
                bs.append(np.array([I.hi + r]))
            if math.isfinite(I.lo):
                rows.append(-e.reshape(1, 2))
                bs.append(np.array([-I.lo + r]))
        return Region(np.vstack(rows), np.concatenate(bs))
    raise GeometryError(f"unsupported set {S!r}")


def _lp_bounds(A, b):
    """Per-axis extent of ``{A x <= b}`` via four LPs (None entries = infinite)."""
    out = []
    for axis in (0, 1):
        lo_hi = []
        for sgn in (1.0, -1.0):
            c = np.zeros(2)
            c[axis] = sgn
            res = lp_core.linprog(c, A, b)
            if res.status == lp_core.UNBOUNDED:
                lo_hi.append(-sgn * INF)
            elif res.status == lp_core.INFEASIBLE:
                return None
            else:
                lo_hi.append(sgn * res.value)
        out.append(Interval1(lo_hi[0], lo_hi[1]))
    return out


def intersect(sets: Sequence) -> ConvexSet:
    """Exact intersection; returns :data:`EMPTY` when it is void.

    Sets touching within a relative slack of ``1e-9`` are treated as
    intersecting at their nearest points.
    """
    sets = list(sets)
    if not sets:
        raise GeometryError("intersect() of an empty family")
    if any(isinstance(S, Empty) for S in sets):
        return EMPTY
    if len(sets) == 1:
        return sets[0]
    if all(isinstance(S, Interval1) for S in sets):
        eps = SLACK * _scale(*[[S.lo, S.hi] for S in sets])
        return _interval_meet(sets, eps)
    if any(isinstance(S, Interval1) for S in sets):
        raise GeometryError("cannot intersect intervals with planar sets")
    if all(isinstance(S, Box) for S in sets):
        eps = SLACK * _scale(*[[S.I1.lo, S.I1.hi, S.I2.lo, S.I2.hi] for S in sets])
        I1 = _interval_meet([S.I1 for S in sets], eps)
        I2 = _interval_meet([S.I2 for S in sets], eps)
        if I1 is EMPTY or I2 is EMPTY:
            return EMPTY
        return Box(I1, I2)

    bounded = [S for S in sets if S.bounded]
    if bounded:
        start = min(bounded, key=lambda S: len(_pts(S)))
        pts = _pts(start)
        eps = SLACK * _scale(pts)
        for S in sets:
            if S is start:
                continue
            A, b = S.constraints()
            for (a0, a1), bb in zip(A, b):
                pts = _clip(pts, float(a0), float(a1), float(bb), eps)
                if pts is None:
                    return EMPTY
        return Polygon(_hull(pts), _canonical=True)

    A = np.vstack([S.constraints()[0] for S in sets])
    b = np.concatenate([S.constraints()[1] for S in sets])
    eps = SLACK * _scale(b)
    ok, _ = lp_core.feasible(A, b + eps, n=2)
    if not ok:
        return EMPTY
    ext = _lp_bounds(A, b + eps)
    if ext is None:
        return EMPTY
    if all(I.bounded for I in ext):
        box = Box(ext[0].expand(eps), ext[1].expand(eps))
        return intersect([box] + sets)
    return Region(A, b)


def project_axis(S, axis: int) -> Interval1:
    """Orthogonal projection of ``S`` onto the coordinate axis 1 or 2."""
    if axis not in (1, 2):
        raise GeometryError(f"axis must be 1 or 2, got {axis}")
    if isinstance(S, Empty):
        raise GeometryError("projection of the empty set")
    if isinstance(S, Box):
        return S.interval(axis)
    if isinstance(S, (Polygon, Segment)):
        c = [p[axis - 1] for p in _pts(S)]
        return Interval1(min(c), max(c))
    if isinstance(S, HalfPlane):
        other = S.n[2 - axis]
        ni = S.n[axis - 1]
        if abs(other) > 1e-12:
            return Interval1(-INF, INF)
        bound = -S.alpha / ni
        return Interval1(-INF, bound) if ni > 0 else Interval1(bound, INF)
    if isinstance(S, Region):
        A, b = S.constraints()
        vals = []
        for sgn in (1.0, -1.0):
            c = np.zeros(2)
            c[axis - 1] = sgn
            res = lp_core.linprog(c, A, b)
            if res.status == lp_core.UNBOUNDED:
                vals.append(-sgn * INF)
            elif res.status == lp_core.INFEASIBLE:
                raise GeometryError("projection of an infeasible region")
            else:
                vals.append(sgn * res.value)
        return Interval1(vals[0], vals[1])
    raise GeometryError(f"cannot project {S!r}")


def rect_hull(S) -> Box:
    """Smallest axis-parallel rectangle containing ``S``."""
    if isinstance(S, Box):
        return S
    return Box(project_axis(S, 1), project_axis(S, 2))


def point_dist_linf(p, S) -> float:
    p = (float(p[0]), float(p[1]))
    if isinstance(S, Box):
        dx = max(0.0, S.I1.lo - p[0], p[0] - S.I1.hi)
        dy = max(0.0, S.I2.lo - p[1], p[1] - S.I2.hi)
        return max(dx, dy)
    if S.bounded:
        diff = _hull([(p[0] - x, p[1] - y) for x, y in _pts(S)])
        return _min_linf_norm(diff)
    return dist_linf_lp(Polygon([p]), S)


def dist_linf(A, B) -> float:
    """``inf ||a - b||_inf`` over ``a in A``, ``b in B``; zero if either is empty."""
    if isinstance(A, Empty) or isinstance(B, Empty):
        return 0.0
    if isinstance(A, Interval1) and isinstance(B, Interval1):
        return _interval_dist(A, B)
    if isinstance(A, Box) and isinstance(B, Box):
        return max(_interval_dist(A.I1, B.I1), _interval_dist(A.I2, B.I2))
    if A.bounded and B.bounded:
        pa, pb = _pts(A), _pts(B)
        diff = _hull([(x - u, y - v) for x, y in pa for u, v in pb])
        return _min_linf_norm(diff)
    return dist_linf_lp(A, B)


def dist_linf_lp(A, B) -> float:
    """Same quantity as :func:`dist_linf`, always through the LP
    ``min r`` over ``(a, b, r)``."""
    if isinstance(A, Empty) or isinstance(B, Empty):
        return 0.0
    AA, ba = A.constraints()
    AB, bb = B.constraints()
    rows, rhs = [], []
    for row, val in zip(AA, ba):
        rows.append([row[0], row[1], 0.0, 0.0, 0.0])
        rhs.append(val)
    for row, val in zip(AB, bb):
        rows.append([0.0, 0.0, row[0], row[1], 0.0])
        rhs.append(val)
    for i in range(2):
        for s in (1.0, -1.0):
            r = [0.0] * 5
            r[i] = s
            r[2 + i] = -s
            r[4] = -1.0
            rows.append(r)
            rhs.append(0.0)
    res = lp_core.linprog([0, 0, 0, 0, 1.0], rows, rhs)
    if res.status != lp_core.OPTIMAL:
        raise GeometryError(f"distance LP ended {res.status}")
    return max(0.0, res.value)


def hausdorff_linf(A, B) -> float:
    """Hausdorff distance in the uniform norm between bounded sets."""
    if isinstance(A, Empty) or isinstance(B, Empty):
        raise GeometryError("Hausdorff distance needs nonempty sets")
    if isinstance(A, Interval1) and isinstance(B, Interval1):
        if not (A.bounded and B.bounded):
            raise GeometryError("Hausdorff distance needs bounded sets")
        return max(abs(A.lo - B.lo), abs(A.hi - B.hi))
    if not (A.bounded and B.bounded):
        raise GeometryError("Hausdorff distance needs bounded sets")
    if isinstance(A, Box) and isinstance(B, Box):
        return max(abs(A.I1.lo - B.I1.lo), abs(A.I1.hi - B.I1.hi),
                   abs(A.I2.lo - B.I2.lo), abs(A.I2.hi - B.I2.hi))
    pa, pb = as_polygon(A), as_polygon(B)
    d1 = max(point_dist_linf(v, pb) for v in pa._pts)
    d2 = max(point_dist_linf(v, pa) for v in pb._pts)
    return max(d1, d2)


def center(b: Box) -> np.ndarray:
    if not b.bounded:
        raise GeometryError("center of an unbounded box")
    return np.array([b.I1.mid, b.I2.mid])


def midpoint(s) -> np.ndarray:
    if isinstance(s, Segment):
        return 0.5 * (s.a + s.b)
    pts = _pts(s)
    if len(pts) > 2:
        raise GeometryError("midpoint() needs a segment")
    return np.mean(np.array(pts), axis=0)


_DIAGONALS = ((1.0, 1.0), (1.0, -1.0))


def _line_param_range(a, h, A, b, eps):
    lo, hi = -INF, INF
    for (r0, r1), bb in zip(A, b):
        coef = r0 * h[0] + r1 * h[1]
        rhs = bb + eps - (r0 * a[0] + r1 * a[1])
        if abs(coef) <= 1e-15:
            if rhs < 0:
                return None
            continue
        t = rhs / coef
        if coef > 0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
    if lo > hi:
        return None
    return lo, hi


def metric_projection_linf(a, S, check_hull: bool = True) -> np.ndarray:
    """Nearest point of ``S`` to ``a`` in the uniform norm.

    For ``a`` in the rectangular hull of ``S`` the nearest point is unique
    and lies on one of the diagonals through ``a``; both are scanned and
    the closer hit wins, ties going to the ``(1, 1)`` diagonal.
    """
    a = np.asarray(a, dtype=float).reshape(2)
    if isinstance(S, Empty):
        raise GeometryError("projection onto the empty set")
    if check_hull:
        H = rect_hull(S)
        tol = 1e-7 * _scale(a, [H.I1.lo, H.I1.hi, H.I2.lo, H.I2.hi])
        if not H.contains(a, tol):
            raise ProjectionError(f"point {a.tolist()} lies outside the rectangular hull {H!r}")
    A, b = S.constraints()
    eps = SLACK * _scale(a, b)
    if A.shape[0] == 0 or np.all(A @ a <= b + eps):
        return a.copy()
    best = None
    for k, h in enumerate(_DIAGONALS):
        rng = _line_param_range(a, h, A, b, 0.0) or _line_param_range(a, h, A, b, eps)
        if rng is None:
            continue
        lo, hi = rng
        t = lo if lo > 0 else hi
        if lo <= 0.0 <= hi:
            t = 0.0
        key = (abs(t), k, t)
        if best is None or key[0] < best[0][0] - 1e-12 * _scale(a):
            best = (key, h, t)
    if best is None:
        raise ProjectionError("no diagonal through the point meets the set")
    _, h, t = best
    return a + t * np.asarray(h)


def steiner_point(P) -> np.ndarray:
    """Exterior-angle weighted vertex average of a convex polygon."""
    if isinstance(P, Empty):
        raise GeometryError("Steiner point of the empty set")
    pts = _pts(P)
    k = len(pts)
    if k <= 2:
        return np.mean(np.array(pts), axis=0)
    V = np.array(pts)
    prev_edge = V - np.roll(V, 1, axis=0)
    next_edge = np.roll(V, -1, axis=0) - V
    a1 = np.arctan2(prev_edge[:, 1], prev_edge[:, 0])
    a2 = np.arctan2(next_edge[:, 1], next_edge[:, 0])
    turn = np.mod(a2 - a1, 2 * np.pi)
    w = turn / turn.sum()
    return w @ V


@dataclass(frozen=True)
class HellyResult:
    ok: bool
    witness: Optional[np.ndarray]


def helly_check(sets: Sequence) -> HellyResult:
    """Triple-wise intersection test, with a common point when it passes.

    In the plane, nonempty triple intersections force a common point of
    the whole (finite) family; a disagreement raises, as it can only come
    from numerical trouble.
    """
    sets = list(sets)
    triples_ok = True
    for T in combinations(range(len(sets)), min(3, len(sets))):
        if isinstance(intersect([sets[i] for i in T]), Empty):
            triples_ok = False
            break
    full = intersect(sets)
    if triples_ok != (not isinstance(full, Empty)):
        raise GeometryError("triple intersections disagree with the full intersection")
    if not triples_ok:
        return HellyResult(False, None)
    A, b = full.constraints()
    ok, w = lp_core.feasible(A, b + SLACK * _scale(b), n=2)
    if not ok:
        w = np.asarray(_pts(full)[0]) if full.bounded else None
    return HellyResult(True, w)


def theta(L: float, norm_kind: str = "general") -> float:
    """Neighbourhood constant for ``C cap B(a, Lr)`` inclusions."""
    if not L > 1:
        raise GeometryError(f"theta needs L > 1, got {L}")
    if norm_kind == "general":
        return (3 * L + 1) / (L - 1)
    if norm_kind == "euclidean":
        return 1 + 2 * L / math.sqrt(L * L - 1)
    raise GeometryError(f"unknown norm kind {norm_kind!r}")


def xi_bounds(beta: float) -> tuple[float, float]:
    """Upper bound ``(1+b)/(1-b)`` and Euclidean value ``(1-b^2)^-1/2``
    of the modulus of squareness."""
    if not 0 <= beta < 1:
        raise GeometryError(f"beta must lie in [0, 1), got {beta}")
    return (1 + beta) / (1 - beta), 1 / math.sqrt(1 - beta * beta)
