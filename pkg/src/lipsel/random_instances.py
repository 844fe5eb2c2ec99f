"""Random test instances: metrics and set-valued mappings of every kind."""
from __future__ import annotations

import math

import numpy as np

from . import geometry as geo
from .maps import SetMap
from .metric_space import PseudoMetric


def random_metric(rng: np.random.Generator, n: int, style: str = "mixed") -> PseudoMetric:
    """A random pseudometric on ``n`` points.

    Styles: ``"linf"``/``"l2"`` (planar points), ``"graph"`` (shortest
    paths of a random complete weighted graph), ``"pseudo"`` (a planar
    metric with some points glued at distance zero), or ``"mixed"``.
    """
    if style == "mixed":
        style = rng.choice(["linf", "l2", "graph", "pseudo"], p=[0.3, 0.3, 0.3, 0.1])
    ids = tuple(range(n))
    if style in ("linf", "l2", "pseudo"):
        X = rng.uniform(-3, 3, size=(n, 2))
        if style == "pseudo" and n >= 2:
            X[rng.integers(1, n)] = X[0]
        return PseudoMetric.from_coords(ids, X, "l2" if style == "l2" else "linf")
    if style == "graph":
        W = rng.uniform(0.2, 4.0, size=(n, n))
        W = np.minimum(W, W.T)
        np.fill_diagonal(W, 0.0)
        for k in range(n):
            W = np.minimum(W, W[:, k:k + 1] + W[k:k + 1, :])
        return PseudoMetric(ids, W)
    raise ValueError(f"unknown style {style!r}")


def random_polygon(rng: np.random.Generator, max_vertices: int = 8,
                   center=None, scale: float = 1.0) -> geo.Polygon:
    c = rng.uniform(-3, 3, size=2) if center is None else np.asarray(center, float)
    k = int(rng.integers(1, max_vertices + 1))
    shape = rng.choice(["blob", "thin", "point"], p=[0.8, 0.15, 0.05])
    if shape == "point":
        return geo.Polygon([c])
    P = rng.normal(size=(k, 2)) * scale * rng.uniform(0.2, 1.5)
    if shape == "thin":
        P[:, 1] *= 0.02
        t = rng.uniform(0, math.pi)
        R = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        P = P @ R.T
    poly = geo.Polygon(P + c)
    while len(poly) > max_vertices:
        V = poly.vertices
        poly = geo.Polygon(np.delete(V, int(rng.integers(len(V))), axis=0))
    return poly


def _glued(m: PseudoMetric):
    """Pairs ``(i, j)``, ``i < j``, at distance zero (``j`` follows ``i``)."""
    return [(i, j) for j in range(len(m)) for i in range(j) if m.d[i, j] == 0.0]


def _anchor(S) -> np.ndarray:
    if isinstance(S, geo.Interval1):
        return np.array([S.mid])
    return geo.as_polygon(S).vertices[0]


def random_polygon_map(rng, n: int, max_vertices: int = 8, style: str = "mixed") -> SetMap:
    m = random_metric(rng, n, style)
    F = {x: random_polygon(rng, max_vertices) for x in m.ids}
    for i, j in _glued(m):
        # sets at distance zero must meet, otherwise no selection exists
        p = _anchor(F[i])
        Q = random_polygon(rng, max_vertices - 1, center=p)
        F[j] = geo.Polygon(np.vstack([Q.vertices, p]))
    return SetMap(m, F, "polygon")


def random_box_map(rng, n: int, style: str = "mixed") -> SetMap:
    m = random_metric(rng, n, style)
    F = {}
    for x in m.ids:
        c = rng.uniform(-3, 3, size=2)
        w = rng.uniform(0, 1.5, size=2) * (rng.random(2) > 0.1)
        F[x] = geo.Box((c[0] - w[0], c[0] + w[0]), (c[1] - w[1], c[1] + w[1]))
    for i, j in _glued(m):
        p, B = F[i].lower, F[j]
        F[j] = geo.Box((min(p[0], B.I1.lo), max(p[0], B.I1.hi)), (min(p[1], B.I2.lo), max(p[1], B.I2.hi)))
    return SetMap(m, F, "box")


def random_segment_map(rng, n: int, style: str = "mixed") -> SetMap:
    m = random_metric(rng, n, style)
    F = {}
    for x in m.ids:
        a = rng.uniform(-3, 3, size=2)
        if rng.random() < 0.1:
            b = a
        elif rng.random() < 0.3:
            # axis-parallel or diagonal, the awkward directions for the uniform norm
            u = [(1, 0), (0, 1), (1, 1), (1, -1)][int(rng.integers(4))]
            b = a + rng.uniform(-2, 2) * np.asarray(u, float)
        else:
            b = a + rng.normal(size=2)
        F[x] = geo.Segment(a, b)
    for i, j in _glued(m):
        S = F[j]
        F[j] = geo.Segment(F[i].a, F[i].a + (S.b - S.a))
    return SetMap(m, F, "segment")


def random_interval_map(rng, n: int, style: str = "mixed") -> SetMap:
    m = random_metric(rng, n, style)
    F = {}
    for x in m.ids:
        c = rng.uniform(-3, 3)
        w = rng.uniform(0, 1.0) if rng.random() > 0.15 else 0.0
        F[x] = geo.Interval1(c - w, c + w)
    for i, j in _glued(m):
        p = F[i].lo
        F[j] = geo.Interval1(min(p, F[j].lo), max(p, F[j].hi))
    return SetMap(m, F, "interval")


def random_unit(rng) -> np.ndarray:
    t = rng.uniform(0, 2 * math.pi)
    if rng.random() < 0.25:
        t = rng.integers(8) * math.pi / 4
    return np.array([math.cos(t), math.sin(t)])


def random_halfplane_map(rng, n: int, style: str = "mixed", covered: bool = True) -> SetMap:
    """Half-plane values; with ``covered`` the normals surround the origin.

    Opposite half-planes glued at distance zero may be disjoint, so the
    ``"pseudo"`` style is replaced by a genuine metric here.
    """
    if style in ("mixed", "pseudo"):
        style = rng.choice(["linf", "l2", "graph"])
    m = random_metric(rng, n, style)
    normals = [random_unit(rng) for _ in range(n)]
    if covered and n >= 3:
        base = rng.uniform(0, 2 * math.pi)
        for k in range(3):
            t = base + 2 * math.pi * k / 3 + rng.uniform(-0.5, 0.5)
            normals[k] = np.array([math.cos(t), math.sin(t)])
        order = rng.permutation(n)
        normals = [normals[k] for k in order]
    F = {}
    for x, nv in zip(m.ids, normals):
        p = rng.uniform(-2, 2, size=2)
        F[x] = geo.HalfPlane(nv, -float(nv @ p))
    return SetMap(m, F, "halfplane")


def random_map(rng, kind: str, n: int, style: str = "mixed") -> SetMap:
    if kind == "polygon":
        return random_polygon_map(rng, n, style=style)
    if kind == "box":
        return random_box_map(rng, n, style)
    if kind == "segment":
        return random_segment_map(rng, n, style)
    if kind == "interval":
        return random_interval_map(rng, n, style)
    if kind == "halfplane":
        return random_halfplane_map(rng, n, style)
    raise ValueError(f"unknown kind {kind!r}")
