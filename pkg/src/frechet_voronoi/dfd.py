"""Discrete Frechet distance between polygonal curves.

The dynamic program works on any scalar type with ``-``, ``*`` and
ordering, so it runs unchanged on floats and on :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Callable, Iterator, Optional

import numpy as np

from .errors import DimensionMismatch, TooLarge

__all__ = [
    "Curve",
    "euclidean",
    "squared_euclidean",
    "discrete_frechet",
    "discrete_frechet_table",
    "discrete_frechet_decision",
    "discrete_frechet_bruteforce",
    "discrete_frechet_batch",
    "iter_couplings",
    "embed",
    "BRUTEFORCE_CAP",
]

BRUTEFORCE_CAP = 12


def _vertex(v) -> tuple:
    if isinstance(v, Number):
        return (v,)
    return tuple(v)


@dataclass(frozen=True)
class Curve:
    """An ordered, nonempty list of vertices of equal dimension.

    ``label`` is an optional ``(group, index)`` pair identifying the curve
    inside a construction.
    """

    vertices: tuple
    label: Optional[tuple] = None

    def __post_init__(self):
        verts = tuple(_vertex(v) for v in self.vertices)
        if not verts:
            raise ValueError("a curve needs at least one vertex")
        d = len(verts[0])
        if d == 0 or any(len(v) != d for v in verts):
            raise DimensionMismatch("vertices of a curve must share one dimension >= 1")
        object.__setattr__(self, "vertices", verts)
        if self.label is not None:
            object.__setattr__(self, "label", tuple(self.label))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for v in self.vertices for x in v)

    def as_float(self) -> "Curve":
        return Curve(tuple(tuple(float(x) for x in v) for v in self.vertices), self.label)

    def as_fraction(self) -> "Curve":
        return Curve(tuple(tuple(Fraction(x) for x in v) for v in self.vertices), self.label)


def _curve(P) -> Curve:
    return P if isinstance(P, Curve) else Curve(P)


def euclidean(a, b):
    """Euclidean distance; exact for 1-D rational inputs."""
    if len(a) == 1:
        return abs(a[0] - b[0])
    return math.dist(a, b)


def squared_euclidean(a, b):
    return sum((x - y) * (x - y) for x, y in zip(a, b))


def _check(P: Curve, Q: Curve) -> None:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"curve dimensions differ: {P.dim} vs {Q.dim}")


def discrete_frechet_table(P, Q, ground: Callable = euclidean) -> list[list]:
    """Full ``|P| x |Q|`` table of the coupling dynamic program."""
    P, Q = _curve(P), _curve(Q)
    _check(P, Q)
    n, m = len(P), len(Q)
    ca = [[None] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            d = ground(P[i], Q[j])
            if i == 0 and j == 0:
                ca[i][j] = d
            elif i == 0:
                ca[i][j] = max(ca[0][j - 1], d)
            elif j == 0:
                ca[i][j] = max(ca[i - 1][0], d)
            else:
                ca[i][j] = max(min(ca[i - 1][j], ca[i][j - 1], ca[i - 1][j - 1]), d)
    return ca


def discrete_frechet(P, Q, ground: Callable = euclidean):
    """Discrete Frechet distance of two curves.

    Parameters
    ----------
    P, Q : Curve or sequence of vertices
        Curves of the same dimension.
    ground : callable, optional
        Vertex distance.  Passing :func:`squared_euclidean` yields the
        squared distance, which stays rational on rational input.

    Examples
    --------
    >>> discrete_frechet([(-1.5,), (4.5,)], [(0,), (2,)])
    2.5
    """
    return discrete_frechet_table(P, Q, ground)[-1][-1]


def discrete_frechet_decision(P, Q, rho, tol=0) -> bool:
    """Whether ``discrete_frechet(P, Q) <= rho + tol``.

    Runs reachability over the cells whose vertex distance is within
    ``rho + tol``.  Rational input is compared on squared distances, so no
    square root is ever taken on the exact path.
    """
    P, Q = _curve(P), _curve(Q)
    _check(P, Q)
    bound = rho + tol
    if bound < 0:
        return False
    if P.is_exact and Q.is_exact and isinstance(bound, (int, Fraction)):
        sq = bound * bound

        def free(a, b):
            return squared_euclidean(a, b) <= sq
    else:
        def free(a, b):
            return euclidean(a, b) <= bound

    n, m = len(P), len(Q)
    prev = [False] * m
    for i in range(n):
        cur = [False] * m
        for j in range(m):
            if not free(P[i], Q[j]):
                continue
            if i == 0 and j == 0:
                cur[j] = True
            else:
                cur[j] = (j > 0 and cur[j - 1]) or prev[j] or (j > 0 and prev[j - 1])
        if not any(cur):
            return False
        prev = cur
    return prev[-1]


def iter_couplings(n: int, m: int) -> Iterator[tuple]:
    """All monotone couplings of index ranges ``0..n-1`` and ``0..m-1``."""

    def walk(i, j, path):
        if i == n - 1 and j == m - 1:
            yield path
            return
        if i + 1 < n:
            yield from walk(i + 1, j, path + ((i + 1, j),))
        if j + 1 < m:
            yield from walk(i, j + 1, path + ((i, j + 1),))
        if i + 1 < n and j + 1 < m:
            yield from walk(i + 1, j + 1, path + ((i + 1, j + 1),))

    yield from walk(0, 0, ((0, 0),))


def discrete_frechet_bruteforce(P, Q, ground: Callable = euclidean):
    """Minimum over every coupling of the maximum paired vertex distance.

    Exponential; refuses inputs with more than ``BRUTEFORCE_CAP`` vertices
    in total.
    """
    P, Q = _curve(P), _curve(Q)
    _check(P, Q)
    if len(P) + len(Q) > BRUTEFORCE_CAP:
        raise TooLarge(f"|P| + |Q| = {len(P) + len(Q)} exceeds {BRUTEFORCE_CAP}")
    dist = [[ground(p, q) for q in Q] for p in P]
    return min(max(dist[i][j] for i, j in c) for c in iter_couplings(len(P), len(Q)))


def discrete_frechet_batch(S, queries: np.ndarray) -> np.ndarray:
    """Distances from one curve ``S`` to many query curves at once.

    ``queries`` has shape ``(N, len(Q), d)``; returns an array of ``N``
    floats.
    """
    S = np.asarray(_curve(S).as_float().vertices, dtype=float)
    queries = np.asarray(queries, dtype=float)
    if queries.ndim != 3 or queries.shape[2] != S.shape[1]:
        raise DimensionMismatch("queries must have shape (N, k, d) matching the curve")
    n, m = S.shape[0], queries.shape[1]
    # dist[i][j] has shape (N,)
    dist = [[np.linalg.norm(queries[:, j, :] - S[i], axis=1) for j in range(m)] for i in range(n)]
    ca = [[None] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            d = dist[i][j]
            if i == 0 and j == 0:
                ca[i][j] = d
            elif i == 0:
                ca[i][j] = np.maximum(ca[0][j - 1], d)
            elif j == 0:
                ca[i][j] = np.maximum(ca[i - 1][0], d)
            else:
                best = np.minimum(np.minimum(ca[i - 1][j], ca[i][j - 1]), ca[i - 1][j - 1])
                ca[i][j] = np.maximum(best, d)
    return ca[-1][-1]


def embed(P) -> tuple:
    """Concatenate the vertex coordinates of a curve into one point."""
    return tuple(x for v in _curve(P).vertices for x in v)
