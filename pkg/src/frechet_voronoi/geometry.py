"""Small dimension-generic geometry primitives.

Points are plain tuples of floats.  Everything here works for any ambient
dimension ``d``; the planar case is just ``d == 2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import AmbiguousSide, DegenerateInput, NoSolution, RadiusTooSmall

__all__ = [
    "Point",
    "Sphere",
    "circumcenter",
    "sphere_center_with_radius",
    "equidistant_pair",
    "evenly_on_circle",
    "regular_simplex_directions",
    "standard_axes",
]

Point = tuple

# relative pivot threshold of the small linear solves
PIVOT_TOL = 1e-12
# relative slack for "on the sphere" style comparisons
REL_TOL = 1e-12


@dataclass(frozen=True)
class Sphere:
    center: Point
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, x: Sequence[float], rtol: float = REL_TOL) -> bool:
        return math.dist(self.center, x) <= self.radius * (1 + rtol)


def _as_points(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] < 1:
        raise ValueError("expected a nonempty list of points of equal dimension")
    if not np.all(np.isfinite(P)):
        raise ValueError("point coordinates must be finite")
    return P


def _solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A x = b`` by LU with partial pivoting, refusing tiny pivots."""
    if A.shape[0] == 0:
        return np.zeros(0)
    scale = np.max(np.abs(A))
    if scale == 0:
        raise DegenerateInput("zero system matrix")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(A, check_finite=False)
    if np.min(np.abs(np.diag(lu))) < PIVOT_TOL * scale:
        raise DegenerateInput("points are not affinely independent")
    return lu_solve((lu, piv), b, check_finite=False)


def _tup(x: np.ndarray) -> Point:
    return tuple(float(v) for v in x)


def circumcenter(points) -> Sphere:
    """Sphere through ``d + 1`` affinely independent points in ``R^d``.

    The center solves the ``d x d`` system of bisector equations
    ``2 (p_i - p_0) . (c - p_0) = |p_i - p_0|^2``.

    Raises
    ------
    DegenerateInput
        If the points are (numerically) affinely dependent.
    """
    P = _as_points(points)
    n, d = P.shape
    if n != d + 1:
        raise ValueError(f"need {d + 1} points in R^{d}, got {n}")
    p0 = P[0]
    D = P[1:] - p0
    c = _solve(2.0 * D, np.sum(D * D, axis=1))
    return Sphere(_tup(p0 + c), float(np.linalg.norm(c)))


def _flat_circumcenter(P: np.ndarray) -> tuple[np.ndarray, float, np.ndarray]:
    """Circumcenter inside the affine hull of ``d`` points in ``R^d``.

    Returns the center, the in-hull circumradius and a unit normal of the
    hull.
    """
    d = P.shape[1]
    p0 = P[0]
    D = P[1:] - p0
    if len(D):
        lam = _solve(D @ D.T, 0.5 * np.sum(D * D, axis=1))
        c0 = p0 + lam @ D
        # last right-singular vector spans the orthogonal complement
        _, _, vt = np.linalg.svd(D, full_matrices=True)
        normal = vt[-1]
    else:
        c0 = p0.copy()
        normal = np.eye(d)[0]
    return c0, float(np.linalg.norm(c0 - p0)), normal


def sphere_center_with_radius(points, radius: float, side_hint) -> Point:
    """Center of a sphere of given radius through ``d`` points in ``R^d``.

    The admissible centers are the two points at height
    ``sqrt(radius^2 - R0^2)`` above and below the in-hull circumcenter
    (``R0`` its radius).  The candidate whose sphere contains ``side_hint``
    is returned.  When both do, the one nearer to ``side_hint`` wins.

    Raises
    ------
    RadiusTooSmall
        ``radius < R0``.
    AmbiguousSide
        Neither candidate contains the hint, or both do and are equally
        far from it.
    """
    P = _as_points(points)
    n, d = P.shape
    if n != d:
        raise ValueError(f"need {d} points in R^{d}, got {n}")
    hint = np.asarray(side_hint, dtype=float)
    c0, R0, normal = _flat_circumcenter(P)
    h2 = radius * radius - R0 * R0
    if h2 < -REL_TOL * max(radius * radius, R0 * R0):
        raise RadiusTooSmall(f"radius {radius!r} < in-hull circumradius {R0!r}")
    h = math.sqrt(max(h2, 0.0))
    if h <= REL_TOL * max(radius, 1e-300):
        candidates = [c0]
    else:
        candidates = [c0 + h * normal, c0 - h * normal]

    slack = radius * (1 + REL_TOL)
    dists = [float(np.linalg.norm(c - hint)) for c in candidates]
    ok = [i for i, dist in enumerate(dists) if dist <= slack]
    if not ok:
        raise AmbiguousSide("no candidate sphere contains the side hint")
    if len(ok) == 2:
        if dists[0] == dists[1]:
            raise AmbiguousSide("side hint is equidistant from both candidates")
        ok = [int(np.argmin(dists))]
    return _tup(candidates[ok[0]])


def standard_axes(d: int) -> tuple[Point, Point]:
    """The first two coordinate directions of ``R^d`` (``d >= 2``)."""
    if d < 2:
        raise ValueError("a 2-plane needs d >= 2")
    e = np.eye(d)
    return _tup(e[0]), _tup(e[1])


def _check_plane(axes, d: int) -> tuple[np.ndarray, np.ndarray]:
    u, v = (np.asarray(a, dtype=float) for a in axes)
    if u.shape != (d,) or v.shape != (d,):
        raise ValueError("plane axes must have the ambient dimension")
    gram = np.array([[u @ u, u @ v], [v @ u, v @ v]])
    if not np.allclose(gram, np.eye(2), atol=1e-12):
        raise ValueError("plane axes must be orthonormal")
    return u, v


def equidistant_pair(p, a, radius: float, plane=None) -> tuple[Point, Point]:
    """The two points at distance ``radius`` from both ``p`` and ``a``.

    Both lie on the perpendicular bisector of ``pa`` within ``plane`` (a pair
    of orthonormal directions, default the first two coordinate axes), which
    must contain ``a - p``.  In the tangent case ``|p - a| = 2 radius`` the
    two points coincide with the midpoint.
    """
    p = np.asarray(p, dtype=float)
    a = np.asarray(a, dtype=float)
    if p.shape != a.shape:
        raise ValueError("points differ in dimension")
    d = p.shape[0]
    u, v = _check_plane(plane if plane is not None else standard_axes(d), d)
    w = a - p
    half = 0.5 * float(np.linalg.norm(w))
    if half == 0:
        raise ValueError("p and a coincide")
    if np.linalg.norm(w - (w @ u) * u - (w @ v) * v) > 1e-9 * half:
        raise ValueError("a - p does not lie in the given plane")
    h2 = radius * radius - half * half
    if h2 < -REL_TOL * half * half:
        raise NoSolution(f"|p - a| = {2 * half!r} exceeds 2 * radius = {2 * radius!r}")
    h = math.sqrt(max(h2, 0.0))
    w_hat = w / (2 * half)
    # w rotated by 90 degrees inside the plane
    perp = (w_hat @ u) * v - (w_hat @ v) * u
    mid = 0.5 * (p + a)
    return _tup(mid + h * perp), _tup(mid - h * perp)


def evenly_on_circle(center, radius: float, m: int, plane_axes=None) -> list[Point]:
    """``m`` points on a circle, point ``j`` at angle ``2 pi j / m`` (0-based)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    c = np.asarray(center, dtype=float)
    d = c.shape[0]
    u, v = _check_plane(plane_axes if plane_axes is not None else standard_axes(d), d)
    out = []
    for j in range(m):
        theta = 2.0 * math.pi * j / m
        out.append(_tup(c + radius * (math.cos(theta) * u + math.sin(theta) * v)))
    return out


def regular_simplex_directions(d: int) -> list[Point]:
    """Unit vectors to the ``d + 1`` vertices of a centered regular simplex.

    Built by projecting the standard basis of ``R^(d+1)`` onto the
    sum-zero hyperplane, expressed in the Helmert basis.  Pairwise dot
    products are ``-1/d``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    helmert = np.zeros((d, d + 1))
    for k in range(1, d + 1):
        helmert[k - 1, :k] = 1.0
        helmert[k - 1, k] = -float(k)
        helmert[k - 1] /= math.sqrt(k * (k + 1))
    return [_tup(row / np.linalg.norm(row)) for row in helmert.T]
