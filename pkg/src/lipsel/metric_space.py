"""Finite pseudometric spaces.

A :class:`PseudoMetric` is an ordered list of point identifiers together
with a symmetric distance table.  Distinct points at distance zero are
allowed; infinite or negative distances are not.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Sequence

import numpy as np

TRIANGLE_RTOL = 1e-9


class MetricError(ValueError):
    """Malformed distance table, or a table that violates an axiom.

    ``violations`` lists every offending instance as a tuple
    ``(axiom, indices, detail)``.
    """

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class PseudoMetric:
    ids: tuple
    d: np.ndarray = field(repr=False)

    def __post_init__(self):
        ids = tuple(self.ids)
        d = np.array(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] != len(ids):
            raise MetricError(f"distance table must be {len(ids)}x{len(ids)}, got {d.shape}")
        if len(set(ids)) != len(ids):
            raise MetricError("duplicate point identifiers")
        d.setflags(write=False)
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(ids)})

    def __len__(self) -> int:
        return len(self.ids)

    def index(self, x: Hashable) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"unknown point id {x!r}") from None

    def __call__(self, x: Hashable, y: Hashable) -> float:
        return float(self.d[self.index(x), self.index(y)])

    def restrict(self, subset: Sequence[Hashable]) -> "PseudoMetric":
        idx = [self.index(x) for x in subset]
        return PseudoMetric(tuple(subset), self.d[np.ix_(idx, idx)])

    @classmethod
    def from_coords(cls, ids, coords, induced: str = "linf") -> "PseudoMetric":
        """Distances induced by planar (or any-dimensional) coordinates."""
        X = np.asarray(coords, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        diff = X[:, None, :] - X[None, :, :]
        if induced == "linf":
            d = np.abs(diff).max(axis=2)
        elif induced == "l2":
            d = np.sqrt((diff ** 2).sum(axis=2))
        else:
            raise MetricError(f"unknown induced norm {induced!r}")
        return cls(tuple(ids), d)


def validate_pseudometric(table, ids=None) -> PseudoMetric:
    """Check the pseudometric axioms and return the validated space.

    Raises :class:`MetricError` listing every violated instance.
    """
    d = np.asarray(table, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricError(f"distance table is not square: shape {d.shape}")
    if not np.all(np.isfinite(d)):
        bad = [tuple(map(int, ij)) for ij in np.argwhere(~np.isfinite(d))]
        raise MetricError("non-finite distance entry", [("finite", ij, None) for ij in bad])
    if np.any(d < 0):
        bad = [tuple(map(int, ij)) for ij in np.argwhere(d < 0)]
        raise MetricError("negative distance entry", [("nonnegative", ij, None) for ij in bad])
    n = d.shape[0]
    tol = TRIANGLE_RTOL * (1.0 + (float(d.max()) if n else 0.0))
    violations = []
    for i in range(n):
        if abs(d[i, i]) > tol:
            violations.append(("zero-diagonal", (i,), float(d[i, i])))
    for i, j in combinations(range(n), 2):
        if abs(d[i, j] - d[j, i]) > tol:
            violations.append(("symmetry", (i, j), float(d[i, j] - d[j, i])))
    if n:
        # excess[i, k, j] = d[i, j] - d[i, k] - d[k, j]
        excess = d[:, None, :] - d[:, :, None] - d[None, :, :]
        for i, k, j in np.argwhere(excess > tol):
            if i < j and k != i and k != j:
                violations.append(("triangle", (int(i), int(k), int(j)), float(excess[i, k, j])))
    if violations:
        first = violations[0]
        raise MetricError(f"{len(violations)} pseudometric violation(s), first: {first[0]} at {first[1]}",
                          violations)
    if ids is None:
        ids = tuple(range(n))
    return PseudoMetric(tuple(ids), d)


def diam(m: PseudoMetric, subset=None) -> float:
    """Largest pairwise distance within ``subset`` (all points by default)."""
    idx = range(len(m)) if subset is None else [m.index(x) for x in subset]
    idx = list(idx)
    if len(idx) < 2:
        return 0.0
    return float(m.d[np.ix_(idx, idx)].max())


def embed_four_points(m: PseudoMetric) -> dict:
    """Map four points to the line with distortion at most 7.

    The closest pair (first in lexicographic index order) becomes
    ``z1, z2``; ``z3`` is the remaining point closer to ``z1`` and ``z4``
    the last one.  The images are partial sums of consecutive distances
    along ``z1 z2 z3 z4``, so every distance is at most stretched by 7 and
    never shrunk.
    """
    if len(m) != 4:
        raise MetricError(f"embed_four_points needs exactly 4 points, got {len(m)}")
    d = m.d
    i, j = min(combinations(range(4), 2), key=lambda p: (d[p], p))
    rest = [k for k in range(4) if k not in (i, j)]
    k3, k4 = sorted(rest, key=lambda k: (d[i, k], k))
    order = (i, j, k3, k4)
    phi = [0.0]
    for a, b in zip(order, order[1:]):
        phi.append(phi[-1] + float(d[a, b]))
    return {m.ids[k]: v for k, v in zip(order, phi)}
