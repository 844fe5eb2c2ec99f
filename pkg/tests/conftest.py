import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from lipsel import geometry as geo

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coord = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)
points = st.tuples(coord, coord)
radii = st.floats(min_value=0, max_value=3, allow_nan=False, allow_infinity=False)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def polygons(draw, max_vertices=7):
    pts = draw(st.lists(points, min_size=1, max_size=max_vertices))
    return geo.Polygon(pts)


@st.composite
def boxes(draw):
    x0, x1 = sorted(draw(st.tuples(coord, coord)))
    y0, y1 = sorted(draw(st.tuples(coord, coord)))
    return geo.Box((x0, x1), (y0, y1))


@st.composite
def segments(draw):
    return geo.Segment(draw(points), draw(points))


bounded_sets = st.one_of(polygons(), boxes(), segments())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def sample_in(S, rng, k=20):
    """Random points of a bounded polygonal set (convex combinations)."""
    V = geo.as_polygon(S).vertices
    W = rng.dirichlet(np.ones(len(V)), size=k)
    return W @ V
