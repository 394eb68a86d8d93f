import numpy as np
import pytest

from nscbf.barrier import RectangleObstacleSpec, from_rectangle
from nscbf.dynamics import LinearInclusion
from nscbf.geometry import Box, ConvexPolytope


@pytest.fixture(scope="session")
def rect1():
    """Rectangle fixture: center (2,2), unit half-extents, margin 0.5.

    Pieces: B1 = x1 - 0.5, B2 = 3.5 - x1, B3 = x2 - 0.5, B4 = 3.5 - x2.
    """
    spec = RectangleObstacleSpec(
        center=[2.0, 2.0],
        midpoints=[[1.0, 2.0], [3.0, 2.0], [2.0, 1.0], [2.0, 3.0]],
        margin=0.5,
    )
    return from_rectangle(spec)


@pytest.fixture(scope="session")
def rect1_barrier(rect1):
    return rect1[0]


@pytest.fixture(scope="session")
def spiral_system():
    """Planar stable spiral x' = Ax + u, no disturbance."""
    return LinearInclusion([[0.0, 1.0], [-1.0, -1.0]], np.eye(2))


@pytest.fixture(scope="session")
def disturbed_system():
    w = ConvexPolytope(Box([-0.1, -0.1], [0.1, 0.1]).vertices())
    return LinearInclusion([[0.0, 1.0], [-1.0, -1.0]], np.eye(2), disturbance=w)


@pytest.fixture(scope="session")
def input_box():
    return Box([-5.0, -5.0], [5.0, 5.0])
