import sys
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from minvol.polytope import convex_hull
from minvol.triangulation import PointConfig, Triangulation, _simplex


@pytest.fixture(scope="session")
def cube():
    return convex_hull(list(product([0, 1, 2], repeat=3)))


@pytest.fixture(scope="session")
def dilated_simplex():
    return convex_hull([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])


@pytest.fixture(scope="session")
def box223():
    return convex_hull(list(product([0, 2], [0, 2], [0, 3])))


@pytest.fixture(scope="session")
def unit_simplex():
    return convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


PYRAMID_POINTS = [
    (4, 4, 8),   # apex
    (0, 0, 0), (8, 0, 0), (8, 8, 0), (0, 8, 0),  # base quadrangle
    (1, 1, 0),   # extra boundary point, interior to the base facet
    (2, 2, 3),   # first interior point (lex-least)
    (3, 3, 1),   # second interior point, inside a face of the coned stage
]


@pytest.fixture(scope="session")
def pyramid_config():
    p = convex_hull(PYRAMID_POINTS[:5])
    return PointConfig.from_points(p, PYRAMID_POINTS)


# The classic non-regular "twisted" triangulation of two nested homothetic
# triangles; found by exhaustive local search and frozen here.
TWISTED_POINTS = [(0, 0), (4, 0), (0, 4), (1, 1), (2, 1), (1, 2)]
TWISTED_SIMPLICES = [
    (0, 1, 3), (0, 2, 5), (0, 3, 5), (1, 2, 4), (1, 3, 4), (2, 4, 5), (3, 4, 5),
]


@pytest.fixture(scope="session")
def twisted_triangulation():
    p = convex_hull(TWISTED_POINTS)
    cfg = PointConfig.from_points(p, TWISTED_POINTS)
    return Triangulation(cfg, tuple(_simplex(cfg, s) for s in TWISTED_SIMPLICES))


# Pass lines recorded by the acceptance suite, echoed after the test report
# so they are visible even under output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
