from __future__ import annotations

import pytest

from convexpart import Instance, Point


def make_instance(name: str, coords, family: str = "external") -> Instance:
    pts = [Point(i, x, y) for i, (x, y) in enumerate(coords)]
    return Instance(name=name, family=family, points=pts)


@pytest.fixture
def square():
    return make_instance("square", [(0, 0), (10, 0), (10, 10), (0, 10)])


@pytest.fixture
def square_center():
    return make_instance("square-center",
                         [(0, 0), (10, 0), (10, 10), (0, 10), (5, 5)])


@pytest.fixture
def square_offcenter():
    return make_instance("square-offcenter",
                         [(0, 0), (10, 0), (10, 10), (0, 10), (5, 6)])


@pytest.fixture
def triangle_interior():
    return make_instance("triangle-interior", [(0, 0), (4, 0), (0, 4), (1, 1)])


@pytest.fixture
def collinear_pentagon():
    # (5, 0) sits on the bottom boundary with an interior angle of exactly pi.
    return make_instance("pent", [(0, 0), (5, 0), (10, 0), (10, 10), (0, 10)])


@pytest.fixture
def grid3():
    coords = [(x, y) for y in (0, 5, 10) for x in (0, 5, 10)]
    return make_instance("grid3", coords)
