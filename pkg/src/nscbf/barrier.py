"""Piecewise-affine (min-of-affine) barrier functions.

A barrier here is B(x) = min_i B_i(x) with affine pieces
B_i(x) = <gradient_i, x> + offset_i.  Such a B is concave, its zero
sublevel set {B <= 0} is the safe region, and its Clarke generalized
gradient at x is the convex hull of the gradients of the pieces active
at x.  Includes the rectangle-obstacle constructor used by the bundled
scenario.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    ConvexPolytope,
    HalfspaceSet,
    as_vector,
    distance_to_piecewise_min_zero_set,
)

DEFAULT_TIE_TOL = 1e-9


@dataclass(frozen=True)
class AffinePiece:
    """One affine piece B_i(x) = <gradient, x> + offset."""

    gradient: np.ndarray
    offset: float

    def __post_init__(self):
        g = as_vector(self.gradient, name="gradient")
        if np.linalg.norm(g) < 1e-15:
            raise ValueError("piece gradient must be nonzero")
        object.__setattr__(self, "gradient", g)
        object.__setattr__(self, "offset", float(self.offset))

    def value(self, x) -> float:
        return float(self.gradient @ as_vector(x, dim=self.gradient.size) + self.offset)


@dataclass(frozen=True)
class ActiveSets:
    """Exact and near-active piece indices at a point.

    exact: pieces attaining the minimum within the numerical tie tolerance.
    near:  pieces within the behavioral window alpha of the minimum.
    """

    exact: tuple
    near: tuple
    alpha: float


class PiecewiseMinBarrier:
    """B(x) = min over affine pieces; immutable, safe for concurrent use.

    tie_tol separates the mathematical active set (which the Clarke
    gradient needs) from exact floating-point equality; the default 1e-9
    absorbs double-precision ties.
    """

    def __init__(self, pieces, tie_tol: float = DEFAULT_TIE_TOL):
        pieces = list(pieces)
        if not pieces:
            raise ValueError("barrier needs at least one piece")
        if tie_tol <= 0:
            raise ValueError("tie_tol must be positive")
        self.pieces = tuple(
            p if isinstance(p, AffinePiece) else AffinePiece(*p) for p in pieces
        )
        self.tie_tol = float(tie_tol)
        self.gradients = np.array([p.gradient for p in self.pieces])
        self.offsets = np.array([p.offset for p in self.pieces])
        if len({p.gradient.size for p in self.pieces}) != 1:
            raise ValueError("pieces must share one ambient dimension")

    @property
    def dim(self) -> int:
        return self.gradients.shape[1]

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    def piece_values(self, x) -> np.ndarray:
        x = as_vector(x, dim=self.dim, name="state")
        return self.gradients @ x + self.offsets

    def value(self, x) -> float:
        return float(np.min(self.piece_values(x)))

    def values(self, xs) -> np.ndarray:
        """Vectorized B over rows of xs."""
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        return (xs @ self.gradients.T + self.offsets).min(axis=1)

    def active_sets(self, x, alpha: float) -> ActiveSets:
        if alpha <= self.tie_tol:
            raise ValueError(f"alpha must exceed tie_tol {self.tie_tol}")
        vals = self.piece_values(x)
        b = float(vals.min())
        exact = tuple(np.flatnonzero(vals <= b + self.tie_tol).tolist())
        near = tuple(np.flatnonzero(vals <= b + alpha).tolist())
        return ActiveSets(exact=exact, near=near, alpha=float(alpha))

    def clarke_gradient(self, x) -> ConvexPolytope:
        """co{grad B_i : i active at x}; a singleton at smooth points."""
        vals = self.piece_values(x)
        active = np.flatnonzero(vals <= vals.min() + self.tie_tol)
        return ConvexPolytope(self.gradients[active])

    def distance_to_boundary(self, x) -> float:
        return distance_to_piecewise_min_zero_set(x, self.gradients, self.offsets)


@dataclass(frozen=True)
class RectangleObstacleSpec:
    """Rectangular obstacle: center p0, edge midpoints q_i, safety margin d."""

    center: np.ndarray
    midpoints: np.ndarray
    margin: float

    def __post_init__(self):
        p0 = as_vector(self.center, name="center")
        q = np.atleast_2d(np.asarray(self.midpoints, dtype=float))
        if q.shape != (4, p0.size):
            raise ValueError(f"need 4 edge midpoints of dimension {p0.size}")
        if self.margin < 0:
            raise ValueError("margin must be nonnegative")
        if np.any(np.linalg.norm(q - p0, axis=1) < 1e-12):
            raise ValueError("degenerate obstacle: midpoint equals center")
        object.__setattr__(self, "center", p0)
        object.__setattr__(self, "midpoints", q)
        object.__setattr__(self, "margin", float(self.margin))


def from_rectangle(spec: RectangleObstacleSpec):
    """Barrier and set descriptors for a rectangular obstacle.

    Returns (barrier, unsafe_set, init_complement):
      barrier          B(x) = min_i (p0-q_i)'(x-q_i) + d
      unsafe_set       X_u = {x : (p0-q_i)'x > (p0-q_i)'q_i for all i}
      init_complement  the set {A_u x > b_u - d 1} whose complement is the
                       admissible initial region X_o (never enumerated; X_o
                       is unbounded, so membership means "not in this set")
    """
    p0, q, d = spec.center, spec.midpoints, spec.margin
    normals = p0 - q
    b_u = np.einsum("ij,ij->i", normals, q)
    pieces = [AffinePiece(normals[i], -float(b_u[i]) + d) for i in range(4)]
    barrier = PiecewiseMinBarrier(pieces)
    unsafe = HalfspaceSet(normals, b_u, sense="gt")
    init_complement = HalfspaceSet(normals, b_u - d, sense="gt")
    return barrier, unsafe, init_complement


@dataclass
class CandidateReport:
    """Sampled sign check of the barrier-candidate property.

    Passes when B > 0 at every unsafe sample and B <= 0 at every initial
    sample; violations are report content, not errors.
    """

    unsafe_violations: list = field(default_factory=list)
    init_violations: list = field(default_factory=list)
    n_unsafe: int = 0
    n_init: int = 0

    @property
    def passed(self) -> bool:
        return not self.unsafe_violations and not self.init_violations


def is_candidate_at(barrier: PiecewiseMinBarrier, samples_unsafe, samples_init) -> CandidateReport:
    unsafe = np.atleast_2d(np.asarray(samples_unsafe, dtype=float))
    init = np.atleast_2d(np.asarray(samples_init, dtype=float))
    if unsafe.size == 0 or init.size == 0:
        raise ValueError("sample lists must be nonempty")
    report = CandidateReport(n_unsafe=len(unsafe), n_init=len(init))
    bu = barrier.values(unsafe)
    bi = barrier.values(init)
    for x, b in zip(unsafe, bu):
        if not b > 0:
            report.unsafe_violations.append((x.copy(), float(b)))
    for x, b in zip(init, bi):
        if not b <= 0:
            report.init_violations.append((x.copy(), float(b)))
    return report
