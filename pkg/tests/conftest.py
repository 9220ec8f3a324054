import random

import pytest
from hypothesis import HealthCheck, settings

from cfguard.geometry import Location, SimplePolygon, mpq, point_location

settings.register_profile(
    "repo", deadline=None, max_examples=25, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def square():
    return SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def triangle():
    return SimplePolygon([(0, 0), (4, 0), (1, 3)])


def convex_ngon(n):
    """Integer points on a parabola arc: strictly convex, no three collinear."""
    pts = [(i * 10, (i - n // 2) ** 2) for i in range(n)]
    return SimplePolygon(pts)


def random_interior_point(P, rng, grid=64):
    xs = [p[0] for p in P.vertices]
    ys = [p[1] for p in P.vertices]
    x0, x1 = int(min(xs)) * grid, int(max(xs)) * grid
    y0, y1 = int(min(ys)) * grid, int(max(ys)) * grid
    while True:
        p = (mpq(rng.randint(x0, x1), grid), mpq(rng.randint(y0, y1), grid))
        if point_location(P, p) == Location.INTERIOR:
            return p


@pytest.fixture
def rng():
    return random.Random(12345)
