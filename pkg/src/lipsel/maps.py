"""Set-valued mappings and selections over a finite pseudometric space."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional

import numpy as np

from . import geometry as geo
from .metric_space import PseudoMetric

MEMBERSHIP_TOL = 1e-7
ZERO_DIST_TOL = 1e-7

_KIND_OF = {
    geo.Polygon: "polygon",
    geo.Segment: "segment",
    geo.Box: "box",
    geo.HalfPlane: "halfplane",
    geo.Interval1: "interval",
}


def kind_of(S) -> str:
    for cls, name in _KIND_OF.items():
        if isinstance(S, cls):
            return name
    raise TypeError(f"not a set value: {S!r}")


@dataclass(frozen=True)
class SetMap:
    """Assignment ``x -> F(x)`` of a convex set to every point of ``m``.

    Values may be :data:`lipsel.geometry.EMPTY` only for maps produced by
    refinement; user-built maps are nonempty and of one kind.
    """

    m: PseudoMetric
    F: Mapping[Hashable, object]
    kind: str = ""
    allow_empty: bool = False

    def __post_init__(self):
        F = dict(self.F)
        missing = [x for x in self.m.ids if x not in F]
        if missing:
            raise ValueError(f"no set given for points {missing}")
        extra = [x for x in F if x not in self.m._index]
        if extra:
            raise ValueError(f"sets given for unknown points {extra}")
        kinds = {kind_of(S) for S in F.values() if not isinstance(S, geo.Empty)}
        if any(isinstance(S, geo.Empty) for S in F.values()) and not self.allow_empty:
            raise ValueError("empty set value in a set-valued mapping")
        if len(kinds) > 1:
            raise ValueError(f"mixed set kinds {sorted(kinds)}")
        kind = self.kind or (kinds.pop() if kinds else "empty")
        if kinds and kind not in kinds:
            raise ValueError(f"declared kind {kind!r} does not match values")
        object.__setattr__(self, "F", {x: F[x] for x in self.m.ids})
        object.__setattr__(self, "kind", kind)

    def __getitem__(self, x):
        return self.F[x]

    @property
    def ids(self):
        return self.m.ids

    @property
    def empty_points(self) -> list:
        return [x for x, S in self.F.items() if isinstance(S, geo.Empty)]

    @property
    def bounded(self) -> bool:
        return all(S.bounded for S in self.F.values() if not isinstance(S, geo.Empty))

    def restrict(self, subset) -> "SetMap":
        return SetMap(self.m.restrict(subset), {x: self.F[x] for x in subset}, self.kind,
                      self.allow_empty)

    def scaled(self, c: float) -> "SetMap":
        """Same sets over the metric ``c * rho`` (so ``|F|`` becomes ``|F| / c``)."""
        return SetMap(PseudoMetric(self.m.ids, self.m.d * c), self.F, self.kind, self.allow_empty)


IntervalMap = SetMap


def seminorm(m: PseudoMetric, f: Mapping[Hashable, object]) -> float:
    """Lipschitz seminorm of ``f`` in the uniform norm over ``m``.

    Pairs at pseudo-distance zero contribute nothing here;
    :func:`zero_distance_gap` reports how far they are from agreeing.
    """
    P = np.array([np.atleast_1d(np.asarray(f[x], dtype=float)) for x in m.ids])
    if len(P) < 2:
        return 0.0
    diff = np.abs(P[:, None, :] - P[None, :, :]).max(axis=2)
    pos = m.d > 0
    if not np.any(pos):
        return 0.0
    return float((diff[pos] / m.d[pos]).max())


def zero_distance_gap(m: PseudoMetric, f) -> float:
    P = np.array([np.atleast_1d(np.asarray(f[x], dtype=float)) for x in m.ids])
    if len(P) < 2:
        return 0.0
    diff = np.abs(P[:, None, :] - P[None, :, :]).max(axis=2)
    zero = (m.d == 0) & ~np.eye(len(P), dtype=bool)
    return float(diff[zero].max()) if np.any(zero) else 0.0


@dataclass
class Selection:
    """Chosen point ``f(x)`` for every ``x`` plus the measured seminorm."""

    f: dict
    seminorm: float
    method: str = ""
    info: dict = field(default_factory=dict)

    def __getitem__(self, x):
        return self.f[x]

    @classmethod
    def measure(cls, m: PseudoMetric, f: Mapping, method: str = "", **info) -> "Selection":
        f = {x: (np.asarray(f[x], dtype=float) if np.ndim(f[x]) else float(f[x])) for x in m.ids}
        return cls(f, seminorm(m, f), method, dict(info))

    def membership_gap(self, F: SetMap) -> float:
        """Largest uniform distance from ``f(x)`` to ``F(x)``."""
        worst = 0.0
        for x in F.ids:
            S = F[x]
            if isinstance(S, geo.Interval1):
                t = float(self.f[x])
                worst = max(worst, S.lo - t, t - S.hi)
            elif isinstance(S, geo.Empty):
                return float("inf")
            elif S.bounded:
                worst = max(worst, geo.point_dist_linf(self.f[x], S))
            else:
                A, b = S.constraints()
                v = A @ np.asarray(self.f[x], dtype=float) - b
                # rows have unit Euclidean norm; uniform distance is at most the violation
                worst = max(worst, float(v.max()) if v.size else 0.0)
        return max(0.0, worst)


@dataclass(frozen=True)
class Verdict:
    """Accept/reject outcome; a rejection always names its witness."""

    accepted: bool
    witness: Optional[tuple] = None
    tag: str = ""
    detail: Optional[float] = None

    def __bool__(self) -> bool:
        return self.accepted

    def __post_init__(self):
        if not self.accepted and self.witness is None:
            raise ValueError("a rejection must carry a witness")


ACCEPT = Verdict(True)
