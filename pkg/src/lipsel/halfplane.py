"""Lipschitz selection criteria for half-plane valued mappings.

Each value is ``F(x) = {a : <a, n(x)> + alpha(x) <= 0}`` with a unit outer
normal ``n(x)``.  For non-parallel normals the boundary lines meet at

    w(x, y) = l(x) cap l(y),    Delta(x, y) = n1(x) n2(y) - n2(x) n1(y),

and ``|Delta|`` is the sine of the angle between the boundaries.

Two families of criteria are provided.  The coordinate criteria (star-1,
star-2) compare ``alpha`` sums of opposite half-planes and first/second
coordinates of boundary intersection points; both are linear in ``lam``,
so their infimum is a closed-form maximum of ratios.  The
coordinate-free criterion bounds
``dist(F(x) cap F(x'), F(y) cap F(y'))`` by ``lam`` times
``rho(x,x')/sin + rho(y,y')/sin + diam{x,x',y,y'}``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry as geo
from . import lp_core
from .maps import SetMap, Verdict, ACCEPT
from .metric_space import PseudoMetric

PARALLEL_TOL = 1e-9
ANTIPODAL_TOL = 1e-9
GATE_TOL = 1e-12


class ParallelError(ValueError):
    pass


@dataclass(frozen=True)
class HalfPlaneMap:
    m: PseudoMetric
    n: np.ndarray       # (N, 2) unit normals
    alpha: np.ndarray   # (N,)

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float).reshape(-1, 2)
        a = np.asarray(self.alpha, dtype=float).reshape(-1)
        if n.shape[0] != len(self.m) or a.shape[0] != len(self.m):
            raise ValueError("one normal and one offset per point required")
        norms = np.hypot(n[:, 0], n[:, 1])
        if np.any(np.abs(norms - 1.0) > 1e-12):
            bad = int(np.argmax(np.abs(norms - 1.0)))
            raise ValueError(f"normal of point {self.m.ids[bad]!r} is not a unit vector")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "alpha", a)

    @classmethod
    def from_setmap(cls, F: SetMap) -> "HalfPlaneMap":
        if F.kind != "halfplane":
            raise TypeError(f"expected half-plane values, got {F.kind!r}")
        return cls(F.m, np.array([F[x].n for x in F.ids]), np.array([F[x].alpha for x in F.ids]))

    def to_setmap(self) -> SetMap:
        return SetMap(self.m, {x: geo.HalfPlane(self.n[i], self.alpha[i])
                               for i, x in enumerate(self.m.ids)}, "halfplane")

    @property
    def ids(self):
        return self.m.ids


def _hp(F) -> HalfPlaneMap:
    return F if isinstance(F, HalfPlaneMap) else HalfPlaneMap.from_setmap(F)


# --------------------------------------------------------------------------
# elementary formulas
# --------------------------------------------------------------------------

def delta_n(nx, ny) -> float:
    """``n1(x) n2(y) - n2(x) n1(y)``."""
    return float(nx[0] * ny[1] - nx[1] * ny[0])


def intersection_point(nx, ax: float, ny, ay: float) -> np.ndarray:
    """Common point of the boundary lines ``<a, nx> + ax = 0`` and ``<a, ny> + ay = 0``."""
    D = delta_n(nx, ny)
    if abs(D) <= 1e-12:
        raise ParallelError("boundary lines are parallel")
    w1 = -(ax * ny[1] - ay * nx[1]) / D
    w2 = -(nx[0] * ay - ny[0] * ax) / D
    return np.array([w1, w2])


def _pair_tables(H: HalfPlaneMap):
    n, al = H.n, H.alpha
    D = n[:, None, 0] * n[None, :, 1] - n[:, None, 1] * n[None, :, 0]
    nonpar = np.abs(D) > PARALLEL_TOL
    Ds = np.where(nonpar, D, 1.0)
    w1 = -(al[:, None] * n[None, :, 1] - al[None, :] * n[:, None, 1]) / Ds
    w2 = -(n[:, None, 0] * al[None, :] - n[None, :, 0] * al[:, None]) / Ds
    return D, nonpar, w1, w2


# --------------------------------------------------------------------------
# coordinate criteria
# --------------------------------------------------------------------------

def _antipodal(H: HalfPlaneMap) -> np.ndarray:
    s = H.n[:, None, :] + H.n[None, :, :]
    return np.hypot(s[..., 0], s[..., 1]) <= ANTIPODAL_TOL


def _ratio(lhs: np.ndarray, coef: np.ndarray) -> np.ndarray:
    """Least ``lam >= 0`` with ``lhs <= lam * coef`` (``a/0 = inf``, ``0/0 = 0``)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(lhs <= 0, 0.0, np.where(coef > 0, lhs / np.where(coef > 0, coef, 1.0), math.inf))
    return r


def _star1_ratios(H: HalfPlaneMap) -> np.ndarray:
    anti = _antipodal(H)
    lhs = H.alpha[:, None] + H.alpha[None, :]
    R = _ratio(lhs, H.m.d)
    return np.where(anti, R, 0.0)


STAR2_VARIANTS = ("first", "min")


def _star2_terms(H: HalfPlaneMap, variant: str = "first"):
    """For each axis: gated lhs and coefficient arrays over (x, x', y, y').

    The angle term of a pair ``(x, x')`` is
    ``rho(x, x') |n_o(x)| / |Delta(x, x')|`` with ``o`` the other
    coordinate (``variant="first"``), or the same with
    ``min(|n_o(x)|, |n_o(x')|)`` (``variant="min"``).
    """
    if variant not in STAR2_VARIANTS:
        raise ValueError(f"unknown star-2 variant {variant!r}")
    n = H.n
    d = H.m.d
    D, nonpar, w1, w2 = _pair_tables(H)
    absD = np.where(nonpar, np.abs(D), 1.0)
    out = []
    for axis, w in ((1, w1), (2, w2)):
        o = 1 if axis == 1 else 0        # the other coordinate of the normals
        s = 0 if axis == 1 else 1
        prod = n[:, None, o] * n[None, :, o]
        ssum = n[:, None, s] + n[None, :, s]
        gate_x = nonpar & (prod <= GATE_TOL) & (ssum <= GATE_TOL)
        gate_y = nonpar & (prod <= GATE_TOL) & (ssum >= -GATE_TOL)
        if variant == "min":
            c = d * np.minimum(np.abs(n[:, None, o]), np.abs(n[None, :, o])) / absD
        else:
            c = d * np.abs(n[:, None, o]) / absD
        lhs = w[:, :, None, None] - w[None, None, :, :]
        coef = c[:, :, None, None] + c[None, None, :, :] + d[:, None, :, None]
        gate = gate_x[:, :, None, None] & gate_y[None, None, :, :]
        out.append((gate, lhs, coef))
    return out


def _scale_tol(H: HalfPlaneMap) -> float:
    return 1e-9 * (1.0 + float(np.abs(H.alpha).max(initial=0.0)))


def check_star1(F, lam: float) -> Verdict:
    """``alpha(x) + alpha(y) <= lam rho(x, y)`` for opposite normals."""
    H = _hp(F)
    anti = _antipodal(H)
    ex = np.where(anti, H.alpha[:, None] + H.alpha[None, :] - lam * H.m.d, -math.inf)
    if ex.size and float(ex.max()) > _scale_tol(H):
        i, j = np.unravel_index(int(np.argmax(ex)), ex.shape)
        return Verdict(False, (H.ids[i], H.ids[j]), "star-1", float(ex[i, j]))
    return ACCEPT


def check_star2(F, lam: float, variant: str = "first") -> Verdict:
    """Gated inequalities on the coordinates of boundary intersections."""
    H = _hp(F)
    ids = H.ids
    tol = _scale_tol(H)
    for axis, (gate, lhs, coef) in zip((1, 2), _star2_terms(H, variant)):
        ex = np.where(gate, lhs - lam * coef, -math.inf)
        if ex.size and float(ex.max()) > tol * (1.0 + lam):
            i, k, p, q = np.unravel_index(int(np.argmax(ex)), ex.shape)
            return Verdict(False, (ids[i], ids[k], ids[p], ids[q]), f"star-2-w{axis}",
                           float(ex[i, k, p, q]))
    return ACCEPT


def inf_lambda_star(F, variant: str = "first") -> float:
    """Exact infimum of ``lam`` passing both coordinate criteria."""
    H = _hp(F)
    best = float(_star1_ratios(H).max(initial=0.0))
    for gate, lhs, coef in _star2_terms(H, variant):
        R = np.where(gate, _ratio(lhs, coef), 0.0)
        best = max(best, float(R.max(initial=0.0)))
    return best


@dataclass(frozen=True)
class CoverageStatus:
    finite: bool
    hull_contains_origin: bool

    @property
    def ok(self) -> bool:
        return self.finite or self.hull_contains_origin


def coverage_status(F) -> CoverageStatus:
    """Whether the normals surround the origin (strictly)."""
    H = _hp(F)
    ang = np.sort(np.mod(np.arctan2(H.n[:, 1], H.n[:, 0]), 2 * math.pi))
    if ang.size == 0:
        return CoverageStatus(True, False)
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    return CoverageStatus(True, bool(gaps.max() < math.pi - 1e-12))


# --------------------------------------------------------------------------
# coordinate-free criterion
# --------------------------------------------------------------------------

def _wedge_distance(rows, rhs) -> float:
    """``dist(P, Q)`` for ``P = {A_P a <= b_P}``, ``Q = {A_Q b <= b_Q}``
    given as stacked 5-column rows; empty sets give 0."""
    res = lp_core.linprog([0, 0, 0, 0, 1.0], rows, rhs)
    if res.status != lp_core.OPTIMAL:
        return 0.0
    return max(0.0, res.value)


def _dist_rows(pairs_a, pairs_b):
    rows, rhs = [], []
    for (nv, al) in pairs_a:
        rows.append([nv[0], nv[1], 0.0, 0.0, 0.0])
        rhs.append(-al)
    for (nv, al) in pairs_b:
        rows.append([0.0, 0.0, nv[0], nv[1], 0.0])
        rhs.append(-al)
    for i in range(2):
        for s in (1.0, -1.0):
            r = [0.0] * 5
            r[i], r[2 + i], r[4] = s, -s, -1.0
            rows.append(r)
            rhs.append(0.0)
    return rows, rhs


def _brace(d, sinxx, sinyy, i, k, p, q) -> float:
    def term(r, s):
        if r == 0.0:
            return 0.0
        return r / s if s > PARALLEL_TOL else math.inf
    idx = [i, k, p, q]
    dm = float(d[np.ix_(idx, idx)].max())
    return term(d[i, k], sinxx) + term(d[p, q], sinyy) + dm


def _mc2_ratios(planes, d):
    """Yield ``(quadruple, distance, brace)`` over pairs of pairs.

    ``planes[i]`` is a list of ``(n, alpha)`` half-planes for point ``i``;
    every choice of one half-plane per point is scanned.
    """
    N = len(planes)
    upairs = [(i, k) for i in range(N) for k in range(i, N)]
    for a_idx, (i, k) in enumerate(upairs):
        for (p, q) in upairs[a_idx:]:
            for Gi, Gk, Gp, Gq in itertools.product(planes[i], planes[k], planes[p], planes[q]):
                A = [Gi] if i == k else [Gi, Gk]
                B = [Gp] if p == q else [Gp, Gq]
                rows, rhs = _dist_rows(A, B)
                dist = _wedge_distance(rows, rhs)
                sx = abs(delta_n(Gi[0], Gk[0]))
                sy = abs(delta_n(Gp[0], Gq[0]))
                yield (i, k, p, q), dist, _brace(d, sx, sy, i, k, p, q)


def _mc2_verdict(planes, d, ids, lam, tol) -> Verdict:
    for (i, k, p, q), dist, br in _mc2_ratios(planes, d):
        if math.isinf(br):
            continue
        if dist > lam * br + tol:
            return Verdict(False, (ids[i], ids[k], ids[p], ids[q]), "mc-2", dist - lam * br)
    return ACCEPT


def _mc2_inf(planes, d, tol: float) -> float:
    """Largest ratio; distances within ``tol`` of zero count as zero, so a
    zero brace (all four points glued) only yields infinity for a real gap."""
    best = 0.0
    for _, dist, br in _mc2_ratios(planes, d):
        if math.isinf(br) or dist <= tol:
            continue
        best = max(best, dist / br if br > 0 else math.inf)
    return best


def _planes_of(H: HalfPlaneMap):
    return [[(H.n[i], float(H.alpha[i]))] for i in range(len(H.ids))]


def check_mc2(F, lam: float) -> Verdict:
    """Coordinate-free criterion over all quadruples."""
    H = _hp(F)
    return _mc2_verdict(_planes_of(H), H.m.d, H.ids, lam, _scale_tol(H) * (1.0 + lam))


def inf_lambda_cf(F) -> float:
    """Supremum of distance/brace ratios (the least accepted ``lam``)."""
    H = _hp(F)
    return _mc2_inf(_planes_of(H), H.m.d, _scale_tol(H))


def supporting_halfplanes(S) -> list:
    """Edge half-planes ``(n, alpha)`` of a bounded polygon (canonical
    description for points and segments)."""
    A, b = S.constraints()
    return [(np.asarray(row, dtype=float), -float(bb)) for row, bb in zip(A, b)]


def polygon_mc2(F: SetMap, lam: float) -> Verdict:
    """Coordinate-free criterion with every choice of supporting edge
    half-planes.  Cost grows like ``N^4 k^4`` for ``k`` edges per set."""
    if F.kind not in ("polygon", "box", "segment"):
        raise TypeError(f"polygon_mc2 needs bounded polygonal values, got {F.kind!r}")
    planes = [supporting_halfplanes(F[x]) for x in F.ids]
    return _mc2_verdict(planes, F.m.d, F.ids, lam, _polygon_tol(F) * (1.0 + lam))


def _polygon_tol(F: SetMap) -> float:
    return 1e-9 * (1.0 + max(float(np.abs(geo.as_polygon(F[x]).vertices).max()) for x in F.ids))


def polygon_inf_lambda_cf(F: SetMap) -> float:
    planes = [supporting_halfplanes(F[x]) for x in F.ids]
    return _mc2_inf(planes, F.m.d, _polygon_tol(F))


def bounding_subfamily(F) -> Optional[tuple]:
    """Three points whose half-planes have a bounded, nonempty intersection.

    Returns ``None`` when no such triple exists.  Three normals whose hull
    contains the origin strictly bound the intersection; nonemptiness is a
    feasibility question.
    """
    H = _hp(F)
    for tri in itertools.combinations(range(len(H.ids)), 3):
        sub = HalfPlaneMap(H.m.restrict([H.ids[i] for i in tri]), H.n[list(tri)], H.alpha[list(tri)])
        if not coverage_status(sub).hull_contains_origin:
            continue
        ok, _ = lp_core.feasible(sub.n, -sub.alpha)
        if ok:
            return tuple(H.ids[i] for i in tri)
    return None
