"""Balanced refinements of set-valued mappings in the uniform norm.

The ``lam``-balanced refinement of ``F`` is

    F1(x) = intersection over z of ( F(z) + lam * rho(x, z) * Q0 ),

where ``Q0 = [-1, 1]^2``.  Every selection with seminorm at most ``lam``
is a selection of ``F1``, and the term ``z = x`` makes ``F1(x)`` a subset
of ``F(x)``.  Iterating with an increasing sequence of constants gives the
nested stages ``F^[1], F^[2], ...``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence


from . import geometry as geo
from .maps import SetMap

__all__ = [
    "SetMap",
    "RefinementTrace",
    "CoreReport",
    "balanced_refine",
    "iterate_refine",
    "core_check",
    "stabilization_check",
    "max_stage_change",
]


def _as_kind(S, kind: str):
    """Keep segment-valued stages as segments."""
    if kind == "segment" and isinstance(S, geo.Polygon) and len(S) <= 2:
        V = S.vertices
        return geo.Segment(V[0], V[-1])
    return S


def refine_point(F: SetMap, lam: float, x) -> object:
    """``F1(x)`` for a single point ``x``."""
    i = F.m.index(x)
    row = F.m.d[i]
    if isinstance(F[x], geo.Empty):
        return geo.EMPTY
    pieces = [F[x]]
    for j, z in enumerate(F.ids):
        if z == x:
            continue
        S = F[z]
        if isinstance(S, geo.Empty):
            return geo.EMPTY
        pieces.append(geo.minkowski_square(S, lam * float(row[j])))
    return _as_kind(geo.intersect(pieces), F.kind)


def balanced_refine(F: SetMap, lam: float) -> SetMap:
    """The ``lam``-balanced refinement; empty values are kept as ``EMPTY``."""
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    out = {x: refine_point(F, lam, x) for x in F.ids}
    return SetMap(F.m, out, F.kind, allow_empty=True)


@dataclass
class RefinementTrace:
    base: SetMap
    lambdas: list
    stages: list = field(default_factory=list)

    @property
    def empty_points(self) -> list:
        return [st.empty_points for st in self.stages]

    @property
    def final(self) -> SetMap:
        return self.stages[-1] if self.stages else self.base

    def nonempty(self, k: Optional[int] = None) -> bool:
        st = self.final if k is None else self.stages[k]
        return not st.empty_points


def iterate_refine(F: SetMap, lambdas: Sequence[float]) -> RefinementTrace:
    """Stage ``k+1`` is stage ``k`` refined with ``lambdas[k]``."""
    lambdas = [float(v) for v in lambdas]
    if not lambdas:
        raise ValueError("need at least one refinement constant")
    trace = RefinementTrace(F, lambdas)
    cur = F
    for lam in lambdas:
        cur = balanced_refine(cur, lam)
        trace.stages.append(cur)
    return trace


@dataclass(frozen=True)
class CoreReport:
    nonempty_ok: bool
    worst_ratio: float
    worst_pair: Optional[tuple]
    zero_distance_ok: bool
    gamma: float

    @property
    def ok(self) -> bool:
        return self.nonempty_ok and self.zero_distance_ok and self.worst_ratio <= self.gamma + 1e-6


def core_check(G: SetMap, gamma: float, zero_tol: float = 1e-8) -> CoreReport:
    """Largest ``d_H(G(x), G(y)) / rho(x, y)`` over pairs of nonempty values."""
    ids = G.ids
    worst, pair, zero_ok = 0.0, None, True
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            A, B = G[ids[i]], G[ids[j]]
            if isinstance(A, geo.Empty) or isinstance(B, geo.Empty):
                continue
            h = geo.hausdorff_linf(A, B)
            r = float(G.m.d[i, j])
            if r == 0.0:
                if h > zero_tol:
                    zero_ok = False
                    pair = pair or (ids[i], ids[j])
                continue
            if h / r > worst:
                worst, pair = h / r, (ids[i], ids[j])
    return CoreReport(not G.empty_points, worst, pair, zero_ok, float(gamma))


def max_stage_change(A: SetMap, B: SetMap) -> float:
    """Largest pointwise Hausdorff distance between two nonempty stages."""
    worst = 0.0
    for x in A.ids:
        if isinstance(A[x], geo.Empty) or isinstance(B[x], geo.Empty):
            return float("inf")
        worst = max(worst, geo.hausdorff_linf(A[x], B[x]))
    return worst


def stabilization_check(F: SetMap, lambdas: Sequence[float], gamma: float,
                        tol: float = 1e-7) -> bool:
    """True iff the last stage is nonempty and one more refinement with
    ``gamma`` moves no value by more than ``tol`` in Hausdorff distance."""
    trace = iterate_refine(F, lambdas)
    last = trace.final
    if last.empty_points:
        return False
    nxt = balanced_refine(last, gamma)
    return max_stage_change(last, nxt) <= tol
