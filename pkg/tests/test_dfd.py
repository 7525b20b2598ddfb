import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frechet_voronoi.dfd import (
    Curve,
    discrete_frechet,
    discrete_frechet_batch,
    discrete_frechet_bruteforce,
    discrete_frechet_decision,
    embed,
    iter_couplings,
    squared_euclidean,
)
from frechet_voronoi.errors import DimensionMismatch, TooLarge


def curves(d, min_len=1, max_len=5):
    vert = st.lists(st.floats(-10, 10, allow_nan=False), min_size=d, max_size=d).map(tuple)
    return st.lists(vert, min_size=min_len, max_size=max_len).map(Curve)


same_dim_pair = st.integers(1, 3).flatmap(lambda d: st.tuples(curves(d), curves(d)))
same_dim_triple = st.integers(1, 3).flatmap(lambda d: st.tuples(curves(d, max_len=6), curves(d, max_len=6), curves(d, max_len=6)))


def hand_couplings_2x2():
    # the three monotone couplings of two 2-vertex curves
    return [
        [(0, 0), (1, 1)],
        [(0, 0), (1, 0), (1, 1)],
        [(0, 0), (0, 1), (1, 1)],
    ]


def by_hand(P, Q):
    return min(max(abs(P[i] - Q[j]) for i, j in c) for c in hand_couplings_2x2())


class TestExamples:
    def test_identity(self):
        P = Curve([(0, 1), (2, 3), (4, 4)])
        assert discrete_frechet(P, P) == 0

    def test_single_vertices(self):
        assert discrete_frechet([(0,)], [(5,)]) == 5

    def test_two_vertex(self):
        # 2.5 from explicit enumeration of the three couplings
        assert by_hand([-1.5, 4.5], [0, 2]) == 2.5
        assert discrete_frechet([(-1.5,), (4.5,)], [(0,), (2,)]) == 2.5

    def test_bruteforce_example(self):
        assert by_hand([0, 4], [0, 2]) == 2
        assert discrete_frechet_bruteforce([(0,), (4,)], [(0,), (2,)]) == 2

    def test_bruteforce_identity(self):
        P = Curve([(1, 2), (3, 1), (0, 0)])
        assert discrete_frechet_bruteforce(P, P) == 0

    def test_bruteforce_cap(self):
        P = Curve([(float(i),) for i in range(7)])
        Q = Curve([(float(i),) for i in range(6)])
        with pytest.raises(TooLarge):
            discrete_frechet_bruteforce(P, Q)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            discrete_frechet([(0, 0)], [(0,)])
        with pytest.raises(DimensionMismatch):
            discrete_frechet_decision([(0, 0)], [(0,)], 1)

    def test_rational(self):
        P = [(Fraction(-3, 2),), (Fraction(9, 2),)]
        assert discrete_frechet(P, [(Fraction(0),), (Fraction(2),)]) == Fraction(5, 2)
        sq = discrete_frechet([(Fraction(0), Fraction(0))], [(Fraction(1), Fraction(1))], ground=squared_euclidean)
        assert sq == 2 and isinstance(sq, Fraction)


class TestDecision:
    def test_equal(self):
        P = [(1.0,), (2.0,)]
        assert discrete_frechet_decision(P, P, 0, 0)

    def test_below(self):
        assert not discrete_frechet_decision([(-1.5,), (4.5,)], [(0,), (2,)], 1.5, 1e-9)

    def test_above(self):
        assert discrete_frechet_decision([(-1.5,), (4.5,)], [(0,), (3,)], 1.5, 1e-9)

    def test_exact_squared_path(self):
        P = [(Fraction(0), Fraction(0)), (Fraction(3), Fraction(4))]
        Q = [(Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))]
        assert discrete_frechet_decision(P, Q, Fraction(5))
        assert not discrete_frechet_decision(P, Q, Fraction(499, 100))

    @settings(max_examples=150, deadline=None)
    @given(same_dim_pair)
    def test_flips_at_distance(self, pair):
        P, Q = pair
        dist = discrete_frechet(P, Q)
        assert discrete_frechet_decision(P, Q, dist, 0)
        below = math.nextafter(dist, -math.inf)
        if below >= 0:
            assert not discrete_frechet_decision(P, Q, below, 0)
        # monotone in rho
        answers = [discrete_frechet_decision(P, Q, rho, 0) for rho in (0, dist / 2, dist, 2 * dist + 1)]
        assert answers == sorted(answers)


def test_coupling_counts():
    # Delannoy numbers D(m-1, n-1)
    assert sum(1 for _ in iter_couplings(2, 2)) == 3
    assert sum(1 for _ in iter_couplings(3, 3)) == 13
    assert sum(1 for _ in iter_couplings(6, 6)) == 1683
    for c in iter_couplings(3, 4):
        assert c[0] == (0, 0) and c[-1] == (2, 3)
        for (a, b), (x, y) in zip(c, c[1:]):
            assert (x - a, y - b) in {(1, 0), (0, 1), (1, 1)}


class TestProperties:
    @settings(max_examples=300, deadline=None)
    @given(same_dim_pair)
    def test_oracle_equivalence(self, pair):
        P, Q = pair
        assert discrete_frechet(P, Q) == discrete_frechet_bruteforce(P, Q)

    @settings(max_examples=200, deadline=None)
    @given(same_dim_pair)
    def test_symmetry_and_endpoint_bound(self, pair):
        P, Q = pair
        assert discrete_frechet(P, Q) == discrete_frechet(Q, P)
        assert discrete_frechet(P, Q) >= max(math.dist(P[0], Q[0]), math.dist(P[-1], Q[-1]))

    @settings(max_examples=200, deadline=None)
    @given(same_dim_triple)
    def test_triangle(self, triple):
        P, Q, R = triple
        assert discrete_frechet(P, R) <= discrete_frechet(P, Q) + discrete_frechet(Q, R) + 1e-9

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 3).flatmap(curves))
    def test_identity(self, P):
        assert discrete_frechet(P, P) == 0


def test_batch_matches_scalar():
    rng = random.Random(5)
    for d in (1, 2, 3):
        S = Curve([tuple(rng.uniform(-5, 5) for _ in range(d)) for _ in range(4)])
        Qs = np.array([[[rng.uniform(-5, 5) for _ in range(d)] for _ in range(3)] for _ in range(50)])
        got = discrete_frechet_batch(S, Qs)
        want = [discrete_frechet(S, Curve([tuple(v) for v in q])) for q in Qs]
        assert np.allclose(got, want, rtol=0, atol=1e-12)


class TestEmbed:
    def test_planar(self):
        assert embed([(1, 2), (3, 4)]) == (1, 2, 3, 4)

    def test_single(self):
        assert embed([(7, 8, 9)]) == (7, 8, 9)

    def test_line(self):
        assert embed([(0,), (4,), (8,)]) == (0, 4, 8)

    def test_dimension(self):
        P = Curve([(1, 2, 3)] * 5)
        assert len(embed(P)) == P.dim * len(P)


def test_curve_validation():
    with pytest.raises(ValueError):
        Curve([])
    with pytest.raises(DimensionMismatch):
        Curve([(0, 0), (1,)])
    c = Curve([0, 4], label=[1, 2])
    assert c.vertices == ((0,), (4,)) and c.label == (1, 2)
    # consecutive duplicates are fine
    assert len(Curve([(1, 1), (1, 1)])) == 2


def test_exhaustive_small_grid():
    # every pair of 1-D integer curves of length <= 3 over {0, 1, 2}
    verts = [(0,), (1,), (2,)]
    shapes = [c for n in (1, 2, 3) for c in itertools.product(verts, repeat=n)]
    for P in shapes:
        for Q in shapes:
            assert discrete_frechet(P, Q) == discrete_frechet_bruteforce(P, Q)
