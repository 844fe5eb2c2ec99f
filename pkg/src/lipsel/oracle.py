"""Exact optimal Lipschitz selections by linear programming.

For a finite space the optimal seminorm

    |F| = inf { ||f||_Lip : f(x) in F(x) for all x }

is the value of one LP in the unknowns ``f(x)`` and ``lam``: minimise
``lam`` subject to the half-plane description of each ``F(x)`` and
``+-(f_i(x) - f_i(y)) <= lam * rho(x, y)`` for every pair and coordinate.
Points at pseudo-distance zero must share their value, so they are merged
into one unknown whose set is the intersection of their sets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry as geo
from . import lp_core
from .maps import Selection, SetMap

OPTIMAL = lp_core.OPTIMAL
INFEASIBLE = lp_core.INFEASIBLE


@dataclass
class OracleResult:
    lambda_star: float
    selection: Optional[Selection]
    status: str

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _classes(F: SetMap) -> list:
    """Groups of point indices at mutual pseudo-distance zero."""
    d = F.m.d
    n = len(F.ids)
    seen, out = [False] * n, []
    for i in range(n):
        if seen[i]:
            continue
        grp = [j for j in range(n) if not seen[j] and d[i, j] == 0.0]
        for j in grp:
            seen[j] = True
        out.append(grp)
    return out


def optimal_selection(F: SetMap) -> OracleResult:
    """Optimal seminorm and a selection attaining it."""
    if F.empty_points:
        return OracleResult(math.inf, None, INFEASIBLE)
    dim = 1 if F.kind == "interval" else 2
    groups = _classes(F)
    k = len(groups)
    nv = dim * k + 1
    rows, rhs = [], []

    def var(g, i):
        return dim * g + i

    for g, grp in enumerate(groups):
        for j in grp:
            S = F[F.ids[j]]
            if dim == 1:
                if math.isfinite(S.hi):
                    r = np.zeros(nv)
                    r[var(g, 0)] = 1.0
                    rows.append(r)
                    rhs.append(S.hi)
                if math.isfinite(S.lo):
                    r = np.zeros(nv)
                    r[var(g, 0)] = -1.0
                    rows.append(r)
                    rhs.append(-S.lo)
                continue
            A, b = S.constraints()
            for a_row, bb in zip(A, b):
                r = np.zeros(nv)
                r[var(g, 0)], r[var(g, 1)] = a_row
                rows.append(r)
                rhs.append(bb)
    d = F.m.d
    for g, h in itertools.combinations(range(k), 2):
        rho = float(d[groups[g][0], groups[h][0]])
        for i in range(dim):
            for s in (1.0, -1.0):
                r = np.zeros(nv)
                r[var(g, i)] = s
                r[var(h, i)] = -s
                r[-1] = -rho
                rows.append(r)
                rhs.append(0.0)
    r = np.zeros(nv)
    r[-1] = -1.0
    rows.append(r)
    rhs.append(0.0)
    c = np.zeros(nv)
    c[-1] = 1.0
    res = lp_core.linprog(c, np.array(rows), np.array(rhs))
    if res.status != OPTIMAL:
        return OracleResult(math.inf, None, INFEASIBLE)
    f = {}
    for g, grp in enumerate(groups):
        val = res.x[dim * g: dim * g + dim]
        for j in grp:
            f[F.ids[j]] = float(val[0]) if dim == 1 else val.copy()
    sel = Selection.measure(F.m, f, "oracle", lp_value=res.value)
    return OracleResult(sel.seminorm if k > 1 else 0.0, sel, OPTIMAL)


def optimal_on_subset(F: SetMap, subset) -> OracleResult:
    return optimal_selection(F.restrict(list(subset)))


@dataclass(frozen=True)
class GridReport:
    ok: bool
    grid_best: float
    n_combinations: int
    step: float


def _candidates(S, step: float, cap: int) -> np.ndarray:
    if isinstance(S, geo.Interval1):
        if not S.bounded:
            raise ValueError("grid check needs bounded values")
        pts = np.arange(S.lo, S.hi + 0.5 * step, step)
        return np.unique(np.concatenate([pts, [S.lo, S.hi]]))[:, None]
    if not S.bounded:
        raise ValueError("grid check needs bounded values")
    V = geo.as_polygon(S).vertices
    H = geo.rect_hull(S)
    xs = np.arange(H.I1.lo, H.I1.hi + 0.5 * step, step)
    ys = np.arange(H.I2.lo, H.I2.hi + 0.5 * step, step)
    if xs.size * ys.size > cap:
        raise ValueError(f"grid step {step} too fine: {xs.size * ys.size} points in one set")
    G = np.array([(x, y) for x in xs for y in ys]).reshape(-1, 2)
    inside = [p for p in G if S.contains(p, 1e-12)]
    return np.vstack([V] + ([np.array(inside)] if inside else []))


def grid_check(F: SetMap, result: OracleResult, resolution: float,
               max_combinations: int = 2_000_000, tol: float = 1e-9) -> GridReport:
    """Brute-force confirmation that no grid selection beats the oracle.

    Candidates for ``f(x)`` are the vertices of ``F(x)`` and the points of
    a square grid of step ``resolution`` inside it.  Every combination is a
    genuine selection, so none may fall below ``lambda_star``; the best one
    is reported as an upper estimate.
    """
    step = float(resolution)
    if not step > 0:
        raise ValueError("resolution must be positive")
    cands = [_candidates(F[x], step, cap=10_000) for x in F.ids]
    total = int(np.prod([len(c) for c in cands]))
    if total > max_combinations:
        raise ValueError(f"grid too coarse to enumerate cheaply: {total} combinations "
                         f"exceed {max_combinations}; increase the resolution step")
    n = len(F.ids)
    worst = np.zeros([len(c) for c in cands])
    for i, j in itertools.combinations(range(n), 2):
        D = np.abs(cands[i][:, None, :] - cands[j][None, :, :]).max(axis=2)
        rho = float(F.m.d[i, j])
        if rho > 0:
            R = D / rho
        else:
            R = np.where(D > 1e-12, math.inf, 0.0)
        shape = [1] * n
        shape[i], shape[j] = R.shape
        worst = np.maximum(worst, R.reshape(shape))
    best = float(worst.min()) if worst.size else 0.0
    ok = best >= result.lambda_star - tol * (1.0 + result.lambda_star)
    return GridReport(ok, best, total, step)
