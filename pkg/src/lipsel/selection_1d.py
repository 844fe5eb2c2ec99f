"""Interval-valued mappings on the line.

Everything here is closed form.  For intervals ``F(x) = [a(x), b(x)]`` the
optimal Lipschitz constant is

    lambda_F = max over pairs of [a(x) - b(y)]_+ / rho(x, y)

(with ``0/0 = 0`` and ``a/0 = inf``), and at any ``lambda >= lambda_F`` the
envelopes

    f+(x) = min_y  b(y) + lambda rho(x, y)
    f-(x) = max_y  a(y) - lambda rho(x, y)

are selections with seminorm at most ``lambda``.
"""
from __future__ import annotations

import math

import numpy as np

from . import geometry as geo
from .maps import IntervalMap, Selection, SetMap, Verdict
from .metric_space import PseudoMetric


class SelectionRefused(ValueError):
    """Requested ``lambda`` is below the optimum; carries the violating pair."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


def _slack(lam: float) -> float:
    return 1e-9 * (1.0 + abs(lam))


def _ends(F: SetMap):
    if F.kind != "interval":
        raise TypeError(f"expected an interval map, got kind {F.kind!r}")
    a = np.array([F[x].lo for x in F.ids])
    b = np.array([F[x].hi for x in F.ids])
    return a, b


def _bounded_ends(F: SetMap):
    a, b = _ends(F)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("this operation needs bounded intervals")
    return a, b


def _gap_ratios(F: SetMap) -> np.ndarray:
    a, b = _ends(F)
    gap = np.maximum(a[:, None] - b[None, :], 0.0)
    d = F.m.d
    with np.errstate(divide="ignore", invalid="ignore"):
        R = np.where(gap > 0, np.where(d > 0, gap / np.where(d > 0, d, 1.0), math.inf), 0.0)
    return R


def lambda_f(F: SetMap) -> float:
    """Smallest Lipschitz constant of a selection of ``F`` (maybe ``inf``)."""
    R = _gap_ratios(F)
    return float(R.max()) if R.size else 0.0


def _violating_pair(F: SetMap, lam: float):
    R = _gap_ratios(F)
    i, j = np.unravel_index(int(np.argmax(R)), R.shape)
    if R[i, j] > lam + _slack(lam):
        return F.ids[i], F.ids[j], float(R[i, j])
    return None


def _check_lambda(F: SetMap, lam: float):
    if lam < 0 or math.isnan(lam):
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    bad = _violating_pair(F, lam)
    if bad is not None:
        x, y, r = bad
        raise SelectionRefused(
            f"lambda={lam} is below the optimum: min F({x!r}) - max F({y!r}) needs {r}", (x, y))


def _plus(F, lam):
    _, b = _bounded_ends(F)
    return (b[None, :] + lam * F.m.d).min(axis=1)


def _minus(F, lam):
    a, _ = _bounded_ends(F)
    return (a[None, :] - lam * F.m.d).max(axis=1)


def _finish(F, vals, method, lam):
    a, b = _bounded_ends(F)
    # rounding can push an envelope a hair outside its interval at lambda = lambda_F
    vals = np.clip(vals, a, b)
    return Selection.measure(F.m, dict(zip(F.ids, vals)), method, lam=lam)


def select_plus(F: SetMap, lam: float) -> Selection:
    _check_lambda(F, lam)
    return _finish(F, _plus(F, lam), "plus", lam)


def select_minus(F: SetMap, lam: float) -> Selection:
    _check_lambda(F, lam)
    return _finish(F, _minus(F, lam), "minus", lam)


def select_mid(F: SetMap, lam: float) -> Selection:
    _check_lambda(F, lam)
    return _finish(F, 0.5 * (_plus(F, lam) + _minus(F, lam)), "mid", lam)


def refine_1d(F: SetMap, lam: float) -> SetMap:
    """``x -> intersection over z of [a(z) - lam rho, b(z) + lam rho]``."""
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    a, b = _ends(F)
    d = F.m.d
    with np.errstate(invalid="ignore"):
        lo = np.where(np.isfinite(a)[None, :], a[None, :] - lam * d, -math.inf).max(axis=1)
        hi = np.where(np.isfinite(b)[None, :], b[None, :] + lam * d, math.inf).min(axis=1)
    scale = 1.0 + max([abs(v) for v in np.concatenate([a, b]) if math.isfinite(v)] or [0.0])
    eps = geo.SLACK * scale
    out = {}
    for x, l, h in zip(F.ids, lo, hi):
        if l > h + eps:
            out[x] = geo.EMPTY
        elif l > h:
            out[x] = geo.Interval1(0.5 * (l + h), 0.5 * (l + h))
        else:
            out[x] = geo.Interval1(l, h)
    return SetMap(F.m, out, "interval", allow_empty=True)


def criterion_1d(F: SetMap, lam: float) -> Verdict:
    """Accept iff the ``lam``-refinement has no empty value."""
    R = refine_1d(F, lam)
    empty = R.empty_points
    if empty:
        return Verdict(False, (empty[0],), "empty-refinement")
    return Verdict(True)


def interval_map(m: PseudoMetric, lo, hi) -> SetMap:
    """Convenience constructor from endpoint arrays."""
    return SetMap(m, {x: geo.Interval1(l, h) for x, l, h in zip(m.ids, lo, hi)}, "interval")
