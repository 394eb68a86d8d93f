import numpy as np
import pytest

from nscbf.dynamics import LinearInclusion
from nscbf.geometry import support_function


def test_vector_field_example(spiral_system):
    f = spiral_system.vector_field([0, 2], [0, 0])
    assert np.allclose(f, [2, -2])


def test_vector_field_equilibrium(spiral_system):
    assert np.allclose(spiral_system.vector_field([0, 0], [0, 0]), 0.0)


def test_vector_field_cancellation(spiral_system):
    x = np.array([1.3, -0.7])
    u = -spiral_system.a_mat @ x
    assert np.allclose(spiral_system.vector_field(x, u), 0.0, atol=1e-14)


def test_vector_field_rejects_disturbance_outside_w(spiral_system, disturbed_system):
    with pytest.raises(ValueError):
        spiral_system.vector_field([0, 0], [0, 0], w=[0.5, 0.0])
    # inside W is fine
    f = disturbed_system.vector_field([0, 0], [0, 0], w=[0.1, -0.1])
    assert np.allclose(f, [0.1, -0.1])


def test_worst_case_disturbance(spiral_system, disturbed_system):
    assert np.allclose(spiral_system.worst_case_disturbance([1, 0]), 0.0)
    w = disturbed_system.worst_case_disturbance([1.0, 0.0])
    assert np.allclose(w, [0.1, -0.1])
    # all-ties: first canonical vertex
    w = disturbed_system.worst_case_disturbance([0.0, 0.0])
    assert np.allclose(w, disturbed_system.disturbance.vertices[0])


def test_worst_case_matches_support(disturbed_system):
    rng = np.random.default_rng(13)
    for _ in range(100):
        zeta = rng.normal(size=2)
        w = disturbed_system.worst_case_disturbance(zeta)
        assert float(zeta @ w) == support_function(disturbed_system.disturbance, zeta)
        assert float(zeta @ w) == disturbed_system.support_disturbance(zeta)


def test_field_affine_in_state_and_input(disturbed_system):
    rng = np.random.default_rng(41)
    sys = disturbed_system
    for _ in range(50):
        x1, x2 = rng.normal(size=(2, 2))
        u1, u2 = rng.normal(size=(2, 2))
        lhs = sys.vector_field(x1 + x2, u1 + u2)
        rhs = (
            sys.vector_field(x1, u1)
            + sys.vector_field(x2, u2)
            - sys.vector_field([0, 0], [0, 0])
        )
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_shape_validation():
    with pytest.raises(ValueError):
        LinearInclusion([[0, 1]], np.eye(2))
    with pytest.raises(ValueError):
        LinearInclusion(np.eye(2), np.eye(3))
