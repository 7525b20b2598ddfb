"""Lower-bound curve families and their query curves.

A family consists of ``k`` well separated anchors ``p_1..p_k`` and ``G``
groups of ``m`` satellites each.  Curve ``(i, j)`` is the anchor sequence
with the anchor hosting group ``i`` replaced by satellite ``a_ij``.  For
every index tuple ``(j_1, .., j_G)`` a query curve is synthesized whose set
of nearest curves is predicted by :func:`predicted_neighbors`; distinct
tuples give distinct sets, so the family has at least ``m^G`` Voronoi
regions under the discrete Frechet distance.

One dimension uses exact rational coordinates: anchors at ``2m(i-1)``,
two groups straddling ``p_2`` at integer offsets and, from ``p_3`` on, one
group just left of each anchor at offsets ``j / (m + 1)``.

From two dimensions on, ``p_1`` carries one group on a circle of radius
``2r``, ``p_2`` carries ``d + 1`` groups along the directions of a regular
simplex at distance ``r`` (pushed outwards by up to ``epsilon``) and every
later anchor carries ``d`` groups along the coordinate axes at distance
``r`` (pushed outwards by up to ``delta``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from . import geometry
from .dfd import Curve
from .errors import (
    AmbiguousSide,
    DegenerateInput,
    GeometryFailure,
    InvalidParams,
    NoSolution,
    RadiusTooSmall,
)

__all__ = [
    "ConstructionParams",
    "Group",
    "CurveFamily",
    "SynthesizedQuery",
    "epsilon_bound",
    "delta_bound",
    "group_count",
    "default_params",
    "validate_params",
    "build_family",
    "check_family",
    "synthesize_query",
    "predicted_neighbors",
    "iter_tuples",
    "tuple_from_index",
]


@dataclass(frozen=True)
class ConstructionParams:
    d: int
    k: int
    m: int
    r: Optional[float] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None

    @property
    def G(self) -> int:
        return group_count(self.d, self.k)

    @property
    def n(self) -> int:
        return self.m * self.G


def group_count(d: int, k: int) -> int:
    return k if d == 1 else d * (k - 1) + 2


def epsilon_bound(m: int, r: float) -> float:
    """Exclusive upper bound on the satellite offset at ``p_2``."""
    return r * (1.0 / math.cos(math.pi / m) - 1.0)


def delta_bound(d: int, r: float) -> float:
    """Inclusive upper bound on the satellite offset at ``p_3..p_k``.

    Largest offset for which ``d`` axis satellites still lie on a sphere of
    radius ``r``; equals ``(sqrt(2) - 1) r`` in the plane.
    """
    return (math.sqrt(d / (d - 1)) - 1.0) * r


def default_params(d: int, k: int, m: int, r: float = 1.0) -> ConstructionParams:
    if d == 1:
        return ConstructionParams(d, k, m)
    if m < 3:
        # no valid offsets exist; let validation report it
        return ConstructionParams(d, k, m, r, 0.0, 0.0)
    off = 0.9 * min(epsilon_bound(m, r), delta_bound(d, r))
    return ConstructionParams(d, k, m, r, off, off)


def validate_params(p: ConstructionParams) -> list[str]:
    """All constraint violations of ``p``; an empty list means valid."""
    out = []
    if not isinstance(p.d, int) or p.d < 1:
        out.append(f"d must be an integer >= 1 (got {p.d!r})")
        return out
    if not isinstance(p.k, int) or p.k < 2:
        out.append(f"k must be an integer >= 2 (got {p.k!r})")
    if not isinstance(p.m, int) or p.m < 1:
        out.append(f"m must be an integer >= 1 (got {p.m!r})")
    if p.d == 1:
        return out
    if isinstance(p.m, int) and p.m < 3:
        out.append(f"m must be >= 3 for d >= 2 (got {p.m})")
    if p.r is None or not p.r > 0 or not math.isfinite(p.r):
        out.append(f"r must be a finite positive number (got {p.r!r})")
        return out
    if p.epsilon is None or not p.epsilon > 0:
        out.append(f"epsilon must be positive (got {p.epsilon!r})")
    elif isinstance(p.m, int) and p.m >= 3 and not p.epsilon < epsilon_bound(p.m, p.r):
        out.append(
            f"epsilon = {p.epsilon!r} violates epsilon < r (1/cos(pi/m) - 1) = "
            f"{epsilon_bound(p.m, p.r)!r}"
        )
    if p.delta is None or not p.delta > 0:
        out.append(f"delta must be positive (got {p.delta!r})")
    elif not p.delta <= delta_bound(p.d, p.r):
        out.append(
            f"delta = {p.delta!r} violates delta <= (sqrt(d/(d-1)) - 1) r = "
            f"{delta_bound(p.d, p.r)!r}"
        )
    return out


@dataclass(frozen=True)
class Group:
    index: int
    host: int  # 1-based anchor index
    satellites: tuple


@dataclass(frozen=True)
class CurveFamily:
    params: ConstructionParams
    anchors: tuple
    groups: tuple
    curves: tuple

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def G(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return len(self.curves)

    @property
    def claimed_bound(self) -> int:
        return (self.n // self.G) ** self.G

    def satellite(self, i: int, j: int):
        return self.groups[i - 1].satellites[j - 1]

    def groups_at(self, host: int) -> list[Group]:
        return [g for g in self.groups if g.host == host]

    @cached_property
    def float_curves(self) -> tuple:
        return tuple(c.as_float() for c in self.curves)


@dataclass(frozen=True)
class SynthesizedQuery:
    Q: Curve
    radius: object  # Fraction in 1-D, float otherwise


def _offsets(total: float, m: int) -> list[float]:
    return [total * j / (m - 1) for j in range(m)]


def _axpy(base, scale, direction) -> tuple:
    return tuple(float(b + scale * u) for b, u in zip(base, direction))


def _assemble(params, anchors, groups) -> CurveFamily:
    curves = []
    for g in groups:
        for j, a in enumerate(g.satellites, start=1):
            verts = list(anchors)
            verts[g.host - 1] = a
            curves.append(Curve(tuple(verts), (g.index, j)))
    return CurveFamily(params, tuple(anchors), tuple(groups), tuple(curves))


def _build_1d(p: ConstructionParams) -> CurveFamily:
    k, m = p.k, p.m
    anchors = [(Fraction(2 * m * i),) for i in range(k)]
    p2 = anchors[1][0]
    groups = [
        Group(1, 2, tuple((p2 - j,) for j in range(1, m + 1))),
        Group(2, 2, tuple((p2 + j,) for j in range(1, m + 1))),
    ]
    for i in range(3, k + 1):
        pi = anchors[i - 1][0]
        groups.append(Group(i, i, tuple((pi - Fraction(j, m + 1),) for j in range(1, m + 1))))
    return _assemble(p, anchors, groups)


def _plane(d: int):
    return geometry.standard_axes(d)


def _build_nd(p: ConstructionParams, strict: bool) -> CurveFamily:
    d, k, m, r = p.d, p.k, p.m, float(p.r)
    eye = np.eye(d)
    anchors = [tuple(float(4.0 * r * l) if a == 0 else 0.0 for a in range(d)) for l in range(k)]
    groups = [Group(1, 1, tuple(geometry.evenly_on_circle(anchors[0], 2.0 * r, m, _plane(d))))]
    eps = _offsets(float(p.epsilon), m)
    for s, u in enumerate(geometry.regular_simplex_directions(d)):
        sats = tuple(_axpy(anchors[1], r + e, u) for e in eps)
        groups.append(Group(2 + s, 2, sats))
    dels = _offsets(float(p.delta), m)
    for l in range(3, k + 1):
        for a in range(d):
            sats = tuple(_axpy(anchors[l - 1], r + e, eye[a]) for e in dels)
            groups.append(Group(len(groups) + 1, l, sats))
    fam = _assemble(p, anchors, groups)
    if strict:
        _check_extremes(fam)
    return fam


def _check_extremes(f: CurveFamily) -> None:
    """Numerically confirm the extreme offset choices admit a query.

    Checks every choice of innermost/outermost satellite at ``p_2``: the
    circumradius must lie in ``[r, r + epsilon]`` and stay below
    ``r / cos(pi/m)``.  At later anchors the outermost satellites must fit
    on a sphere of radius ``r``.
    """
    p = f.params
    r, tol = float(p.r), 1e-9 * float(p.r)
    hi = min(r + float(p.epsilon), r / math.cos(math.pi / p.m))
    at_p2 = f.groups_at(2)
    problems = []
    for choice in itertools.product((1, p.m), repeat=len(at_p2)):
        pts = [g.satellites[j - 1] for g, j in zip(at_p2, choice)]
        try:
            rad = geometry.circumcenter(pts).radius
        except DegenerateInput:
            problems.append(f"degenerate satellites at p_2 for choice {choice}")
            continue
        if not (r - tol <= rad <= hi + tol):
            problems.append(f"circumradius {rad!r} at p_2 outside [{r!r}, {hi!r}] for {choice}")
    if p.k >= 3:
        outer = [g.satellites[-1] for g in f.groups_at(3)]
        try:
            geometry.sphere_center_with_radius(outer, r, f.anchors[2])
        except (RadiusTooSmall, AmbiguousSide, DegenerateInput) as exc:
            problems.append(f"outermost satellites at p_3 admit no radius-r sphere: {exc}")
    if problems:
        raise InvalidParams(problems)


def build_family(p: ConstructionParams, strict: bool = True) -> CurveFamily:
    """Build the lower-bound family for ``p``.

    ``strict=False`` skips every parameter check; meant for building
    deliberately broken families in negative tests.

    Raises
    ------
    InvalidParams
        If :func:`validate_params` reports violations.
    """
    if strict:
        violations = validate_params(p)
        if violations:
            raise InvalidParams(violations)
    if p.d == 1:
        return _build_1d(p)
    return _build_nd(p, strict)


def check_family(f: CurveFamily) -> list[str]:
    """Structural invariants of a family; returns the violations found."""
    out = []
    if len(f.anchors) != f.k:
        out.append(f"expected {f.k} anchors, found {len(f.anchors)}")
    if f.G != group_count(f.d, f.k):
        out.append(f"expected {group_count(f.d, f.k)} groups, found {f.G}")
    for c in f.curves:
        if len(c) != f.k:
            out.append(f"curve {c.label} has {len(c)} vertices, expected {f.k}")
            continue
        i, j = c.label
        g = f.groups[i - 1]
        diff = [t for t in range(f.k) if c[t] != f.anchors[t]]
        if diff != [g.host - 1] or c[g.host - 1] != g.satellites[j - 1]:
            out.append(f"curve {c.label} does not replace anchor {g.host} by its satellite")
    labels = [c.label for c in f.curves]
    if len(set(labels)) != len(labels):
        out.append("duplicate curve labels")
    return out


def _check_tuple(f: CurveFamily, t) -> tuple:
    t = tuple(int(x) for x in t)
    if len(t) != f.G:
        raise ValueError(f"index tuple needs {f.G} entries, got {len(t)}")
    if any(not 1 <= x <= f.m for x in t):
        raise ValueError(f"index tuple entries must lie in [1, {f.m}]")
    return t


def _query_1d(f: CurveFamily, t: tuple) -> SynthesizedQuery:
    a1 = f.satellite(1, t[0])[0]
    a2 = f.satellite(2, t[1])[0]
    r = (a2 - a1) / 2
    if not r > 0:
        raise GeometryFailure(f"non-positive radius {r} for tuple {t}")
    verts = [(f.anchors[0][0] - r,), ((a1 + a2) / 2,)]
    for i in range(3, f.k + 1):
        verts.append((f.satellite(i, t[i - 1])[0] + r,))
    return SynthesizedQuery(Curve(tuple(verts)), r)


def _query_nd(f: CurveFamily, t: tuple) -> SynthesizedQuery:
    p = f.params
    r, eps = float(p.r), float(p.epsilon)
    tol = 1e-9 * r
    p1, p2 = f.anchors[0], f.anchors[1]

    at_p2 = [f.satellite(g.index, t[g.index - 1]) for g in f.groups_at(2)]
    try:
        sphere = geometry.circumcenter(at_p2)
    except DegenerateInput as exc:
        raise GeometryFailure(f"satellites at p_2 are degenerate for {t}: {exc}") from exc
    rp = sphere.radius
    if not (r - tol <= rp <= r + eps + tol):
        raise GeometryFailure(f"radius {rp!r} outside [r, r + epsilon] for {t}")
    if math.dist(sphere.center, p2) > rp * (1 + 1e-12):
        raise GeometryFailure(f"sphere through the p_2 satellites misses p_2 for {t}")

    j1 = t[0]
    a1 = f.satellite(1, j1)
    others = [a for j, a in enumerate(f.groups[0].satellites, start=1) if j != j1]
    try:
        cands = geometry.equidistant_pair(p1, a1, rp, _plane(f.d))
    except NoSolution as exc:
        raise GeometryFailure(f"no first vertex at radius {rp!r} for {t}") from exc
    good = [c for c in cands if all(math.dist(c, a1) < math.dist(c, o) for o in others)]
    if not good:
        raise GeometryFailure(f"first-vertex candidates are not closest to a_1{j1} for {t}")
    q1 = min(good)

    verts = [q1, sphere.center]
    for l in range(3, f.k + 1):
        pts = [f.satellite(g.index, t[g.index - 1]) for g in f.groups_at(l)]
        try:
            verts.append(geometry.sphere_center_with_radius(pts, rp, f.anchors[l - 1]))
        except (RadiusTooSmall, AmbiguousSide, DegenerateInput) as exc:
            raise GeometryFailure(f"no vertex {l} at radius {rp!r} for {t}: {exc}") from exc
    return SynthesizedQuery(Curve(tuple(verts)), rp)


def synthesize_query(f: CurveFamily, t) -> SynthesizedQuery:
    """Query curve whose nearest neighbors are :func:`predicted_neighbors`.

    Raises
    ------
    GeometryFailure
        If a geometric step fails; this signals parameters outside the
        admissible range.
    """
    t = _check_tuple(f, t)
    if f.d == 1:
        return _query_1d(f, t)
    return _query_nd(f, t)


def predicted_neighbors(f: CurveFamily, t) -> frozenset:
    """Labels of the curves the query for ``t`` is nearest to.

    Every group contributes its first ``j_i`` curves, except that from two
    dimensions on group 1 contributes only curve ``(1, j_1)``.
    """
    t = _check_tuple(f, t)
    out = set()
    for i, ji in enumerate(t, start=1):
        if i == 1 and f.d >= 2:
            out.add((1, ji))
        else:
            out.update((i, j) for j in range(1, ji + 1))
    return frozenset(out)


def iter_tuples(f: CurveFamily) -> Iterator[tuple]:
    return itertools.product(range(1, f.m + 1), repeat=f.G)


def tuple_from_index(index: int, m: int, G: int) -> tuple:
    """The ``index``-th tuple (0-based) in lexicographic order."""
    digits = []
    for _ in range(G):
        index, rem = divmod(index, m)
        digits.append(rem + 1)
    return tuple(reversed(digits))
