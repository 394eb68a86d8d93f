"""Linear differential inclusions x' in Ax + B u + W.

W is a compact convex disturbance polytope (possibly the origin alone),
so the right-hand side has nonempty, compact, convex values, is affine
(hence convex) in u, and suprema of linear functionals over W reduce to
exact vertex scans.  Input constraints are a constant box, which keeps
the feedback-map regularity requirements satisfied by construction.
"""

from __future__ import annotations

import numpy as np

from .geometry import ConvexPolytope, as_vector, point_to_polytope_distance

W_MEMBERSHIP_TOL = 1e-9


class LinearInclusion:
    """Dynamics x' in a_mat x + b_mat u + W with a polytopic W."""

    def __init__(self, a_mat, b_mat, disturbance: ConvexPolytope | None = None):
        self.a_mat = np.atleast_2d(np.asarray(a_mat, dtype=float))
        self.b_mat = np.atleast_2d(np.asarray(b_mat, dtype=float))
        n = self.a_mat.shape[0]
        if self.a_mat.shape != (n, n):
            raise ValueError("a_mat must be square")
        if self.b_mat.shape[0] != n:
            raise ValueError("b_mat row count must match the state dimension")
        if not (np.all(np.isfinite(self.a_mat)) and np.all(np.isfinite(self.b_mat))):
            raise ValueError("system matrices must be finite")
        if disturbance is None:
            disturbance = ConvexPolytope(np.zeros((1, n)))
        if disturbance.dim != n:
            raise ValueError("disturbance polytope dimension must match the state")
        self.disturbance = disturbance
        self._w_trivial = disturbance.n_vertices == 1 and np.allclose(
            disturbance.vertices[0], 0.0
        )

    @property
    def state_dim(self) -> int:
        return self.a_mat.shape[0]

    @property
    def input_dim(self) -> int:
        return self.b_mat.shape[1]

    def vector_field(self, x, u, w=None) -> np.ndarray:
        """One selection Ax + Bu + w; w must belong to W (within 1e-9)."""
        x = as_vector(x, dim=self.state_dim, name="state")
        u = as_vector(u, dim=self.input_dim, name="input")
        if w is None:
            w = np.zeros(self.state_dim)
        else:
            w = as_vector(w, dim=self.state_dim, name="disturbance")
        if point_to_polytope_distance(w, self.disturbance) > W_MEMBERSHIP_TOL:
            raise ValueError(f"disturbance {w} outside W")
        return self.a_mat @ x + self.b_mat @ u + w

    def support_disturbance(self, zeta) -> float:
        """sup_{w in W} <zeta, w>, the same vertex scan as worst_case_disturbance."""
        zeta = as_vector(zeta, dim=self.state_dim, name="direction")
        if self._w_trivial:
            return 0.0
        best = int(np.argmax(self.disturbance.vertices @ zeta))
        return float(zeta @ self.disturbance.vertices[best])

    def worst_case_disturbance(self, zeta) -> np.ndarray:
        """Vertex of W maximizing <zeta, w>.

        Ties break to the first vertex in canonical order, which for the
        canonical counterclockwise ordering is the lexicographically
        smallest maximizer.
        """
        zeta = as_vector(zeta, dim=self.state_dim, name="direction")
        vals = self.disturbance.vertices @ zeta
        return self.disturbance.vertices[int(np.argmax(vals))].copy()

    def __repr__(self):
        return (
            f"LinearInclusion(n={self.state_dim}, m={self.input_dim}, "
            f"|vert W|={self.disturbance.n_vertices})"
        )
