import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from frechet_voronoi.errors import AmbiguousSide, DegenerateInput, NoSolution, RadiusTooSmall
from frechet_voronoi.geometry import (
    Sphere,
    circumcenter,
    equidistant_pair,
    evenly_on_circle,
    regular_simplex_directions,
    sphere_center_with_radius,
)

coord = st.floats(-10, 10, allow_nan=False)


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


class TestCircumcenter:
    def test_right_triangle(self):
        s = circumcenter([(0, 0), (2, 0), (0, 2)])
        assert close(s.center, (1, 1))
        assert s.radius == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_isoceles(self):
        pts = [(0, 0), (4, 0), (2, 2)]
        s = circumcenter(pts)
        assert close(s.center, (2, 0))
        assert s.radius == pytest.approx(2, abs=1e-12)
        # equidistance checked directly against every input
        for p in pts:
            assert math.dist(s.center, p) == pytest.approx(2, abs=1e-12)

    def test_collinear(self):
        with pytest.raises(DegenerateInput):
            circumcenter([(0, 0), (1, 1), (2, 2)])

    def test_wrong_count(self):
        with pytest.raises(ValueError):
            circumcenter([(0, 0), (1, 0)])

    def test_tetrahedron(self):
        s = circumcenter([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert close(s.center, (0, 0, 0))
        assert s.radius == pytest.approx(1)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda d: st.lists(st.lists(coord, min_size=d, max_size=d), min_size=d + 1, max_size=d + 1)))
    def test_equidistant_property(self, pts):
        P = np.array(pts)
        d = P.shape[1]
        # well-conditioned simplices only: volume relative to the edge scale
        edges = P[1:] - P[0]
        scale = max(np.abs(edges).max(), 1e-9)
        assume(abs(np.linalg.det(edges)) > 1e-3 * scale**d)
        s = circumcenter(pts)
        dev = max(abs(math.dist(s.center, p) - s.radius) for p in pts)
        assert dev < 1e-9 * s.radius


class TestSphereCenterWithRadius:
    def test_symmetric_pair(self):
        c = sphere_center_with_radius([(-1, 0), (1, 0)], math.sqrt(2), (0, -1))
        assert close(c, (0, -1), 1e-12)

    def test_tangent(self):
        c = sphere_center_with_radius([(0, 0), (0, 2)], 1, (0.5, 1))
        assert close(c, (0, 1), 1e-12)

    def test_radius_too_small(self):
        with pytest.raises(RadiusTooSmall):
            sphere_center_with_radius([(-1, 0), (1, 0)], 0.5, (0, 0))

    def test_hint_outside_both(self):
        with pytest.raises(AmbiguousSide):
            sphere_center_with_radius([(-1, 0), (1, 0)], math.sqrt(2), (10, 10))

    def test_both_contain_hint_picks_nearer(self):
        # both centers (0, +-1) contain the origin; (0, 0.2) is nearer the upper one
        c = sphere_center_with_radius([(-1, 0), (1, 0)], math.sqrt(2), (0, 0.2))
        assert close(c, (0, 1), 1e-12)

    def test_equidistant_hint(self):
        with pytest.raises(AmbiguousSide):
            sphere_center_with_radius([(-1, 0), (1, 0)], math.sqrt(2), (0, 0))

    def test_axes_in_3d(self):
        pts = [(1.1, 0, 0), (0, 1.0, 0), (0, 0, 1.05)]
        c = sphere_center_with_radius(pts, 1.2, (0, 0, 0))
        for p in pts:
            assert math.dist(c, p) == pytest.approx(1.2, rel=1e-9)
        assert math.dist(c, (0, 0, 0)) <= 1.2

    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(2, 4).flatmap(
            lambda d: st.tuples(
                st.lists(st.lists(coord, min_size=d, max_size=d), min_size=d, max_size=d),
                st.floats(1.01, 3.0),
            )
        )
    )
    def test_distance_equations(self, data):
        pts, factor = data
        P = np.array(pts)
        D = P[1:] - P[0]
        assume(np.linalg.matrix_rank(D, tol=1e-3 * max(np.abs(D).max(), 1e-9)) == len(D))
        s_full = np.linalg.svd(D, compute_uv=False)
        assume(s_full.min() > 1e-2 * s_full.max())
        # radius above the in-hull circumradius; hint off the hull on one side
        G = D @ D.T
        lam = np.linalg.solve(G, 0.5 * np.sum(D * D, axis=1))
        c0 = P[0] + lam @ D
        R0 = np.linalg.norm(c0 - P[0])
        assume(R0 > 1e-3)
        radius = factor * R0
        normal = np.linalg.svd(D, full_matrices=True)[2][-1]
        hint = c0 + 0.3 * math.sqrt(radius**2 - R0**2) * normal
        c = sphere_center_with_radius(pts, radius, hint)
        for p in pts:
            assert abs(math.dist(c, p) - radius) <= 1e-9 * radius
        assert math.dist(c, hint) <= radius * (1 + 1e-12)
        assert (np.asarray(c) - c0) @ normal > 0


class TestEquidistantPair:
    def test_generic(self):
        a, b = equidistant_pair((0, 0), (2, 0), 1.05)
        h = math.sqrt(1.05**2 - 1)
        assert close(a, (1, h)) and close(b, (1, -h))
        for x in (a, b):
            assert abs(math.dist(x, (0, 0)) - 1.05) < 1e-12
            assert abs(math.dist(x, (2, 0)) - 1.05) < 1e-12
        assert a[1] == pytest.approx(0.3201562, abs=1e-7)

    def test_tangent(self):
        a, b = equidistant_pair((0, 0), (2, 0), 1)
        assert a == b == (1.0, 0.0)

    def test_no_solution(self):
        with pytest.raises(NoSolution):
            equidistant_pair((0, 0), (4, 0), 1)

    def test_in_plane_3d(self):
        a, b = equidistant_pair((0, 0, 0), (0, 2, 0), 1.5)
        assert a[2] == b[2] == 0
        for x in (a, b):
            assert math.dist(x, (0, 0, 0)) == pytest.approx(1.5)
            assert math.dist(x, (0, 2, 0)) == pytest.approx(1.5)

    def test_out_of_plane_rejected(self):
        with pytest.raises(ValueError):
            equidistant_pair((0, 0, 0), (0, 0, 2), 1.5)

    @settings(max_examples=200, deadline=None)
    @given(coord, coord, coord, coord, st.floats(1.0, 4.0))
    def test_reflection(self, px, py, ax, ay, factor):
        p, a = (px, py), (ax, ay)
        assume(math.dist(p, a) > 1e-3)
        x, y = equidistant_pair(p, a, factor * math.dist(p, a) / 2)
        mid = np.add(p, a) / 2
        w = np.subtract(a, p) / math.dist(p, a)
        # reflection across the line through mid along w maps x to y
        vx = np.subtract(x, mid)
        refl = mid + 2 * (vx @ w) * w - vx
        assert np.allclose(refl, y, atol=1e-9 * (1 + np.abs(mid).max()))


class TestEvenlyOnCircle:
    def test_square(self):
        pts = evenly_on_circle((0, 0), 2, 4)
        for got, want in zip(pts, [(2, 0), (0, 2), (-2, 0), (0, -2)]):
            assert close(got, want, 1e-12)

    def test_single(self):
        assert evenly_on_circle((1, 1), 3, 1) == [(4.0, 1.0)]

    def test_plane_in_3d(self):
        pts = evenly_on_circle((1, 0, 0), 1, 3, ((0, 1, 0), (0, 0, 1)))
        assert all(p[0] == 1 for p in pts)
        want = 2 * math.sin(math.pi / 3)
        for i in range(3):
            for j in range(i + 1, 3):
                assert math.dist(pts[i], pts[j]) == pytest.approx(want, abs=1e-12)

    @pytest.mark.parametrize("m", [1, 2, 3, 7, 20])
    def test_on_circle(self, m):
        for p in evenly_on_circle((3, -2), 2.5, m):
            assert abs(math.dist(p, (3, -2)) - 2.5) <= 1e-12 * 2.5

    def test_rejects_non_orthonormal(self):
        with pytest.raises(ValueError):
            evenly_on_circle((0, 0), 1, 3, ((1, 0), (1, 1)))


class TestSimplex:
    def test_d1(self):
        assert regular_simplex_directions(1) == [(1.0,), (-1.0,)]

    @pytest.mark.parametrize("d", [2, 3, 4, 6])
    def test_dots_and_sum(self, d):
        U = np.array(regular_simplex_directions(d))
        assert U.shape == (d + 1, d)
        G = U @ U.T
        off = G[~np.eye(d + 1, dtype=bool)]
        assert np.allclose(np.diag(G), 1, atol=1e-12)
        assert np.allclose(off, -1 / d, atol=1e-12)
        assert np.linalg.norm(U.sum(axis=0)) < 1e-12

    def test_d2_angles(self):
        U = regular_simplex_directions(2)
        for i in range(3):
            for j in range(i + 1, 3):
                ang = math.degrees(math.acos(np.dot(U[i], U[j])))
                assert ang == pytest.approx(120)


def test_sphere_contains():
    assert Sphere((0, 0), 1).contains((1, 0))
    assert not Sphere((0, 0), 1).contains((1.001, 0))
    with pytest.raises(ValueError):
        Sphere((0, 0), -1)
