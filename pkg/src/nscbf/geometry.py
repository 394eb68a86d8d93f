"""Convex polytope and box primitives in dimension <= 3.

Vertex representations are canonical: hull-reduced, and in 2D ordered
counterclockwise starting from the lexicographically smallest vertex, so
polytope equality is a plain list comparison.  All values are immutable
after construction and every operation is a pure function, so everything
here can be evaluated from concurrent tasks without coordination.
"""

from __future__ import annotations

import itertools

import numpy as np

# Collinearity tolerance for hull reduction (double precision safe margin).
HULL_TOL = 1e-12


def as_vector(x, dim: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float array, optionally checking its length."""
    v = np.atleast_1d(np.asarray(x, dtype=float)).reshape(-1)
    if v.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must have finite entries, got {v}")
    if dim is not None and v.size != dim:
        raise ValueError(f"{name} must have dimension {dim}, got {v.size}")
    return v


class Box:
    """Axis-aligned box {u : lower <= u <= upper} (componentwise)."""

    def __init__(self, lower, upper):
        self.lower = as_vector(lower, name="lower")
        self.upper = as_vector(upper, dim=self.lower.size, name="upper")
        if np.any(self.lower > self.upper):
            raise ValueError("box requires lower <= upper componentwise")

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    @property
    def half_widths(self) -> np.ndarray:
        return 0.5 * (self.upper - self.lower)

    def contains(self, u, tol: float = 1e-9) -> bool:
        u = as_vector(u, dim=self.dim, name="point")
        return bool(np.all(u >= self.lower - tol) and np.all(u <= self.upper + tol))

    def clip(self, u) -> np.ndarray:
        return np.clip(as_vector(u, dim=self.dim, name="point"), self.lower, self.upper)

    def vertices(self) -> np.ndarray:
        corners = list(itertools.product(*zip(self.lower, self.upper)))
        return np.array(corners, dtype=float)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size=(count, self.dim))

    def __repr__(self):
        return f"Box({self.lower.tolist()}, {self.upper.tolist()})"


class HalfspaceSet:
    """Finite list of halfspaces a_i'x (<= | >) b_i, all with the same sense."""

    def __init__(self, normals, offsets, sense: str = "le"):
        self.normals = np.atleast_2d(np.asarray(normals, dtype=float))
        self.offsets = as_vector(offsets, name="offsets")
        if self.normals.shape[0] != self.offsets.size:
            raise ValueError("normals and offsets must have matching row counts")
        if self.normals.shape[0] == 0:
            raise ValueError("halfspace set needs at least one row")
        if np.any(np.linalg.norm(self.normals, axis=1) < 1e-15):
            raise ValueError("halfspace normals must be nonzero")
        if sense not in ("le", "gt"):
            raise ValueError(f"sense must be 'le' or 'gt', got {sense!r}")
        self.sense = sense

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    def contains(self, x, tol: float = 0.0) -> bool:
        """Membership: every row satisfied (<= with slack tol, or strict >)."""
        x = as_vector(x, dim=self.dim, name="point")
        vals = self.normals @ x
        if self.sense == "le":
            return bool(np.all(vals <= self.offsets + tol))
        return bool(np.all(vals > self.offsets + tol))

    def __repr__(self):
        op = "<=" if self.sense == "le" else ">"
        return f"HalfspaceSet({self.normals.shape[0]} rows, a'x {op} b)"


def _dedupe(points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    order = np.lexsort(points.T[::-1])
    pts = points[order]
    keep = [pts[0]]
    for p in pts[1:]:
        if np.max(np.abs(p - keep[-1])) > tol:
            keep.append(p)
    return np.array(keep)


def _monotone_chain(points: np.ndarray) -> np.ndarray:
    """2D convex hull, counterclockwise from the lexicographic minimum.

    Collinear interior points are dropped (cross-product tolerance HULL_TOL).
    """
    pts = _dedupe(points)
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= HULL_TOL:
            lower.pop()
        lower.append(p)
    upper = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= HULL_TOL:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # fully collinear input collapses to its extremes
        return np.array([pts[0], pts[-1]])
    return np.array(hull)


def _hull_reduce(points: np.ndarray) -> np.ndarray:
    """Canonical vertex list of the convex hull of points (dim <= 3)."""
    pts = _dedupe(np.atleast_2d(np.asarray(points, dtype=float)))
    dim = pts.shape[1]
    if len(pts) == 1:
        return pts
    if dim == 1:
        return np.array([[pts[:, 0].min()], [pts[:, 0].max()]])
    if dim == 2:
        return _monotone_chain(pts)
    if dim == 3:
        centered = pts - pts.mean(axis=0)
        rank = np.linalg.matrix_rank(centered, tol=1e-10)
        if rank < 3:
            # flat set: hull in the affine subspace, mapped back
            _, _, vt = np.linalg.svd(centered, full_matrices=False)
            basis = vt[:rank]
            local = _hull_reduce(centered @ basis.T)
            return _dedupe(local @ basis + pts.mean(axis=0))
        from scipy.spatial import ConvexHull

        hull = ConvexHull(pts)
        return _dedupe(pts[hull.vertices])
    raise ValueError(f"dimension {dim} not supported (max 3)")


class ConvexPolytope:
    """Compact convex polytope stored by its canonical vertex list.

    Optionally carries halfspace rows (a_i, b_i) meaning a_i'x <= b_i; when
    present they are checked to describe the same set within 1e-9.
    """

    def __init__(self, vertices, halfspaces: HalfspaceSet | None = None):
        verts = np.atleast_2d(np.asarray(vertices, dtype=float))
        if verts.size == 0:
            raise ValueError("empty polytope")
        if not np.all(np.isfinite(verts)):
            raise ValueError("polytope vertices must be finite")
        if verts.shape[1] > 3:
            raise ValueError("dimension capped at 3")
        self.vertices = _hull_reduce(verts)
        self.halfspaces = halfspaces
        if halfspaces is not None:
            if halfspaces.sense != "le":
                raise ValueError("halfspace representation must use sense 'le'")
            vals = self.vertices @ halfspaces.normals.T - halfspaces.offsets
            if np.max(vals) > 1e-9:
                raise ValueError("vertex and halfspace representations disagree")
            if np.min(vals.max(axis=0)) < -1e-9:
                raise ValueError("halfspace row not supported by any vertex")

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    def same_set(self, other: "ConvexPolytope", tol: float = 1e-9) -> bool:
        if self.vertices.shape != other.vertices.shape:
            return False
        return bool(np.max(np.abs(self.vertices - other.vertices)) <= tol)

    def __repr__(self):
        return f"ConvexPolytope({self.vertices.tolist()})"


def singleton(point) -> ConvexPolytope:
    return ConvexPolytope([as_vector(point, name="point")])


def polytope_from_box(box: Box) -> ConvexPolytope:
    return ConvexPolytope(box.vertices())


def convex_hull_planar(points) -> ConvexPolytope:
    """Counterclockwise hull of 2D points, collinear interior points removed."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("empty input")
    if pts.shape[1] != 2:
        raise ValueError("convex_hull_planar requires dimension 2")
    return ConvexPolytope(pts)


def minkowski_sum(p: ConvexPolytope, q: ConvexPolytope) -> ConvexPolytope:
    """Vertex representation of {a + b : a in p, b in q}, hull-reduced."""
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    sums = p.vertices[:, None, :] + q.vertices[None, :, :]
    return ConvexPolytope(sums.reshape(-1, p.dim))


def scale_polytope(p: ConvexPolytope, lam: float) -> ConvexPolytope:
    """{lam * v : v in p} for lam >= 0."""
    if lam < 0:
        raise ValueError(f"negative scale {lam}")
    if lam == 0.0:
        return ConvexPolytope(np.zeros((1, p.dim)))
    return ConvexPolytope(lam * p.vertices)


def support_function(p: ConvexPolytope, direction) -> float:
    """max_{v in p} <v, direction> (attained at a vertex).

    The returned value is the plain dot product with the maximizing vertex,
    so it agrees bit-for-bit with <direction, v> recomputed by a caller.
    """
    d = as_vector(direction, dim=p.dim, name="direction")
    best = int(np.argmax(p.vertices @ d))
    return float(d @ p.vertices[best])


def _point_to_segment(x: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    denom = float(ab @ ab)
    if denom < 1e-30:
        return float(np.linalg.norm(x - a))
    t = np.clip(float((x - a) @ ab) / denom, 0.0, 1.0)
    return float(np.linalg.norm(x - (a + t * ab)))


def _point_in_ccw_polygon(x: np.ndarray, verts: np.ndarray, tol: float = 1e-12) -> bool:
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < -tol:
            return False
    return True


def point_to_polytope_distance(x, p: ConvexPolytope) -> float:
    """Euclidean distance from a point to a compact convex polytope."""
    x = as_vector(x, dim=p.dim, name="point")
    verts = p.vertices
    if len(verts) == 1:
        return float(np.linalg.norm(x - verts[0]))
    center = verts.mean(axis=0)
    centered = verts - center
    rank = np.linalg.matrix_rank(centered, tol=1e-10)
    if rank < p.dim:
        # reduce to the affine subspace spanned by the vertex set
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        basis = vt[:rank]
        perp = (x - center) - basis.T @ (basis @ (x - center))
        local = ConvexPolytope(centered @ basis.T)
        inner = point_to_polytope_distance(basis @ (x - center), local)
        return float(np.hypot(np.linalg.norm(perp), inner))
    if p.dim == 1:
        lo, hi = verts[:, 0].min(), verts[:, 0].max()
        return float(max(lo - x[0], x[0] - hi, 0.0))
    if p.dim == 2:
        if _point_in_ccw_polygon(x, verts):
            return 0.0
        n = len(verts)
        return min(
            _point_to_segment(x, verts[i], verts[(i + 1) % n]) for i in range(n)
        )
    # full-dimensional 3D: inside test via facet equations, else recurse on facets
    from scipy.spatial import ConvexHull

    hull = ConvexHull(verts)
    if np.all(hull.equations[:, :3] @ x + hull.equations[:, 3] <= 1e-12):
        return 0.0
    best = np.inf
    for simplex in hull.simplices:
        face = ConvexPolytope(verts[simplex])
        best = min(best, point_to_polytope_distance(x, face))
    return float(best)


def hausdorff_distance(p: ConvexPolytope, q: ConvexPolytope) -> float:
    """Hausdorff distance between compact convex polytopes.

    For convex sets sup_{a in P} d(a, Q) is a convex function of a, so it is
    attained at a vertex of P; scanning both vertex lists is exact.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    d_pq = max(point_to_polytope_distance(v, q) for v in p.vertices)
    d_qp = max(point_to_polytope_distance(v, p) for v in q.vertices)
    return float(max(d_pq, d_qp))


def distance_to_piecewise_min_zero_set(x, gradients, offsets) -> float:
    """Distance from x to {y : min_i(<g_i, y> + c_i) = 0} in the plane.

    Each face of the zero level set is the segment of the line B_i = 0 where
    all other pieces are nonnegative; the point is projected onto each face
    and the minimum distance returned.
    """
    G = np.atleast_2d(np.asarray(gradients, dtype=float))
    c = as_vector(offsets, dim=G.shape[0], name="offsets")
    x = as_vector(x, dim=G.shape[1], name="point")
    if G.shape[1] != 2:
        raise ValueError("zero-set distance implemented for planar barriers only")
    best = np.inf
    for i in range(G.shape[0]):
        g = G[i]
        nrm2 = float(g @ g)
        y0 = -c[i] * g / nrm2
        tau = np.array([-g[1], g[0]]) / np.sqrt(nrm2)
        t_lo, t_hi = -np.inf, np.inf
        feasible = True
        for j in range(G.shape[0]):
            if j == i:
                continue
            a = float(G[j] @ tau)
            b = float(G[j] @ y0 + c[j])
            # need a*t + b >= 0 along the line
            if abs(a) < 1e-14:
                if b < -1e-12:
                    feasible = False
                    break
                continue
            bound = -b / a
            if a > 0:
                t_lo = max(t_lo, bound)
            else:
                t_hi = min(t_hi, bound)
        if not feasible or t_lo > t_hi + 1e-12:
            continue
        t_star = np.clip(float(tau @ (x - y0)), t_lo, t_hi)
        best = min(best, float(np.linalg.norm(x - (y0 + t_star * tau))))
    if not np.isfinite(best):
        raise ValueError("degenerate barrier: zero level set is empty")
    return best


class ConstraintSystem:
    """Affine input constraints {u in box : coeffs @ u <= rhs} (rowwise).

    The represented set is closed and convex (halfspaces intersected with a
    box).  An empty row list is allowed and means the box alone.
    """

    def __init__(self, coeffs, rhs, box: Box):
        coeffs = np.asarray(coeffs, dtype=float).reshape(-1, box.dim)
        rhs = np.asarray(rhs, dtype=float).reshape(-1)
        if coeffs.shape[0] != rhs.size:
            raise ValueError("coeffs and rhs row counts differ")
        if coeffs.size and not np.all(np.isfinite(coeffs)):
            raise ValueError("constraint coefficients must be finite")
        if rhs.size and not np.all(np.isfinite(rhs)):
            raise ValueError("constraint offsets must be finite")
        self.coeffs = coeffs
        self.rhs = rhs
        self.box = box

    @property
    def dim(self) -> int:
        return self.box.dim

    @property
    def n_rows(self) -> int:
        return self.coeffs.shape[0]

    def residuals(self, u) -> np.ndarray:
        """Row values coeffs @ u - rhs (positive entries are violations)."""
        u = as_vector(u, dim=self.dim, name="input")
        if self.n_rows == 0:
            return np.zeros(0)
        return self.coeffs @ u - self.rhs

    def contains(self, u, tol: float = 1e-9) -> bool:
        u = as_vector(u, dim=self.dim, name="input")
        if not self.box.contains(u, tol=tol):
            return False
        return self.n_rows == 0 or bool(np.all(self.residuals(u) <= tol))

    def __repr__(self):
        return f"ConstraintSystem({self.n_rows} rows, box dim {self.dim})"
