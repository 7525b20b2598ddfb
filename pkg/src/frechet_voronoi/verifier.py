"""Certification of region counts.

For each index tuple the synthesized query is compared against every curve
of the family; the set of nearest curves must equal the predicted one with
a positive margin.  Independently, :func:`oracle_region_sets` enumerates a
grid of query curves and counts distinct nearest-neighbor sets without
using any synthesis.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Optional, Sequence

import numpy as np

from .constructions import (
    CurveFamily,
    iter_tuples,
    predicted_neighbors,
    synthesize_query,
    tuple_from_index,
)
from .dfd import Curve, discrete_frechet, discrete_frechet_batch
from .errors import EmptyFamily, GridTooLarge, NotOneDimensional, TooManyTuples

__all__ = [
    "NeighborSet",
    "TupleRecord",
    "Sampler",
    "VerificationReport",
    "Grid",
    "nearest_neighbor_set",
    "verify_tuple",
    "exact_verify_1d",
    "verify_all",
    "default_grid",
    "oracle_region_sets",
    "oracle_region_count",
    "TOL_REL",
    "MARGIN_FLOOR_REL",
    "MAX_ALL_TUPLES",
    "MAX_GRID",
]

TOL_REL = 1e-9
MARGIN_FLOOR_REL = 1e-6
MAX_ALL_TUPLES = 10**6
MAX_GRID = 10**7


@dataclass(frozen=True)
class NeighborSet:
    labels: frozenset
    min_distance: object
    margin: object
    distances: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def max_in_distance(self):
        return max(self.distances[l] for l in self.labels)


def nearest_neighbor_set(f: CurveFamily, Q, tol=0, curves: Optional[Sequence[Curve]] = None) -> NeighborSet:
    """Curves of ``f`` within ``tol`` of the smallest distance to ``Q``.

    ``margin`` is the smallest excluded distance minus the largest included
    one (``inf`` when nothing is excluded).  Pass ``curves`` to override the
    curve list, e.g. with exact rational copies.
    """
    curves = f.float_curves if curves is None else curves
    if not curves:
        raise EmptyFamily("family has no curves")
    dist = {c.label: discrete_frechet(Q, c) for c in curves}
    lo = min(dist.values())
    inside = frozenset(l for l, v in dist.items() if v <= lo + tol)
    outside = [v for l, v in dist.items() if l not in inside]
    top = max(dist[l] for l in inside)
    margin = min(outside) - top if outside else math.inf
    return NeighborSet(inside, lo, margin, dist)


@dataclass(frozen=True)
class TupleRecord:
    tuple: tuple
    predicted: frozenset
    actual: frozenset
    sets_equal: bool
    margin: object
    radius: object
    min_distance: object
    max_in_distance: object
    fragile: bool
    match: bool


def _record(t, predicted, nn: NeighborSet, radius, floor) -> TupleRecord:
    equal = nn.labels == predicted
    robust = nn.margin > floor
    return TupleRecord(
        tuple=t,
        predicted=predicted,
        actual=nn.labels,
        sets_equal=equal,
        margin=nn.margin,
        radius=radius,
        min_distance=nn.min_distance,
        max_in_distance=nn.max_in_distance,
        fragile=equal and not robust,
        match=equal and robust,
    )


def verify_tuple(f: CurveFamily, t, tol: Optional[float] = None) -> TupleRecord:
    """Check one tuple in floating point.

    ``tol`` defaults to ``1e-9`` times the realized radius.  A matching set
    whose margin does not exceed ``1e-6`` times the radius is flagged
    ``fragile`` instead of ``match``.
    """
    t = tuple(t)
    sq = synthesize_query(f, t)
    radius = float(sq.radius)
    if tol is None:
        tol = TOL_REL * radius
    nn = nearest_neighbor_set(f, sq.Q.as_float(), tol)
    return _record(t, predicted_neighbors(f, t), nn, radius, MARGIN_FLOOR_REL * radius)


def exact_verify_1d(f: CurveFamily, t) -> TupleRecord:
    """Check one tuple of a one-dimensional family in rational arithmetic.

    Ties are decided exactly (``tol = 0``) and any positive margin counts,
    since no rounding can blur it.
    """
    if f.d != 1:
        raise NotOneDimensional(f"exact verification needs d = 1, family has d = {f.d}")
    t = tuple(t)
    sq = synthesize_query(f, t)
    Q = sq.Q.as_fraction()
    curves = [c.as_fraction() for c in f.curves]
    nn = nearest_neighbor_set(f, Q, 0, curves=curves)
    return _record(t, predicted_neighbors(f, t), nn, Fraction(sq.radius), 0)


@dataclass(frozen=True)
class Sampler:
    """Which tuples to check: ``all`` of them or ``count`` seeded random ones."""

    kind: str = "all"
    seed: Optional[int] = None
    count: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "Sampler":
        if text == "all":
            return cls()
        parts = text.split(":")
        if len(parts) == 3 and parts[0] == "random":
            seed, count = int(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError("sample count must be positive")
            return cls("random", seed, count)
        raise ValueError(f"tuple sampler must be 'all' or 'random:SEED:COUNT', got {text!r}")

    def __str__(self) -> str:
        return "all" if self.kind == "all" else f"random:{self.seed}:{self.count}"

    def tuples(self, f: CurveFamily) -> list[tuple]:
        total = f.m**f.G
        if self.kind == "all":
            if total > MAX_ALL_TUPLES:
                raise TooManyTuples(f"{total} tuples exceed {MAX_ALL_TUPLES}; sample instead")
            return list(iter_tuples(f))
        rng = random.Random(self.seed)
        picks = rng.sample(range(total), min(self.count, total))
        return sorted(tuple_from_index(i, f.m, f.G) for i in picks)


@dataclass
class VerificationReport:
    records: list
    distinct_region_count: int
    claimed_bound: int
    min_margin: object
    sampler: Sampler
    exact: bool
    tuple_count: int

    @property
    def mismatches(self) -> list:
        return [r for r in self.records if not r.sets_equal]

    @property
    def fragile(self) -> list:
        return [r for r in self.records if r.fragile]

    @property
    def status(self) -> str:
        if self.mismatches:
            return "mismatch"
        if self.sampler.kind == "all" and not self.fragile and self.distinct_region_count != self.tuple_count:
            return "mismatch"
        if self.fragile:
            return "fragile"
        return "success"

    @property
    def success(self) -> bool:
        return self.status == "success"


def verify_all(
    f: CurveFamily,
    tol: Optional[float] = None,
    sampler: Sampler | str = "all",
    exact: bool = False,
    workers: int = 1,
) -> VerificationReport:
    """Verify every sampled tuple and count distinct robust regions.

    Fragile records do not contribute to ``distinct_region_count``.  The
    records are sorted by tuple, so the report does not depend on
    ``workers``.
    """
    if isinstance(sampler, str):
        sampler = Sampler.parse(sampler)
    tuples = sampler.tuples(f)
    if exact:
        check = partial(exact_verify_1d, f)
    else:
        check = partial(verify_tuple, f, tol=tol)
    if workers > 1 and len(tuples) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(check, tuples, chunksize=max(1, len(tuples) // (4 * workers))))
    else:
        records = [check(t) for t in tuples]
    records.sort(key=lambda r: r.tuple)
    robust = {r.actual for r in records if r.margin > (0 if exact else MARGIN_FLOOR_REL * r.radius)}
    return VerificationReport(
        records=records,
        distinct_region_count=len(robust),
        claimed_bound=f.claimed_bound,
        min_margin=min((r.margin for r in records), default=math.inf),
        sampler=sampler,
        exact=exact,
        tuple_count=len(tuples),
    )


@dataclass(frozen=True)
class Grid:
    """Axis-aligned grid over the ``d * k`` coordinates of a query curve."""

    ranges: tuple  # one (lo, hi) per embedded coordinate
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        object.__setattr__(self, "ranges", tuple((float(lo), float(hi)) for lo, hi in self.ranges))

    def counts(self) -> list[int]:
        return [0 if hi < lo else int(math.floor((hi - lo) / self.step + 1e-9)) + 1 for lo, hi in self.ranges]

    def axes(self) -> list[np.ndarray]:
        return [lo + self.step * np.arange(n) for (lo, _), n in zip(self.ranges, self.counts())]

    @property
    def size(self) -> int:
        return math.prod(self.counts())


def default_grid(f: CurveFamily, step: float = 0.25) -> Grid:
    """Window spanning every curve vertex coordinate, padded by the spread.

    The padding is the largest satellite-to-anchor distance, which bounds
    the realized radius of every synthesized query.
    """
    pad = max(
        math.dist([float(x) for x in a], [float(x) for x in f.anchors[g.host - 1]])
        for g in f.groups
        for a in g.satellites
    )
    ranges = []
    for v in range(f.k):
        for c in range(f.d):
            vals = [float(curve[v][c]) for curve in f.curves]
            ranges.append((min(vals) - pad, max(vals) + pad))
    return Grid(tuple(ranges), step)


def oracle_region_sets(f: CurveFamily, grid: Grid, tol: float = 1e-9, chunk: int = 200_000) -> set:
    """Distinct nearest-neighbor label sets over all grid query curves."""
    if not f.curves:
        raise EmptyFamily("family has no curves")
    if len(grid.ranges) != f.d * f.k:
        raise ValueError(f"grid needs {f.d * f.k} coordinate ranges, got {len(grid.ranges)}")
    shape = tuple(grid.counts())
    total = math.prod(shape)
    if total > MAX_GRID:
        raise GridTooLarge(f"grid has {total} query curves, limit is {MAX_GRID}")
    axes = grid.axes()
    labels = [c.label for c in f.curves]
    seen = set()
    for start in range(0, total, chunk):
        idx = np.unravel_index(np.arange(start, min(total, start + chunk)), shape)
        coords = np.stack([axes[a][idx[a]] for a in range(len(axes))], axis=1)
        queries = coords.reshape(-1, f.k, f.d)
        D = np.stack([discrete_frechet_batch(c, queries) for c in f.float_curves])
        inside = D <= D.min(axis=0) + tol
        packed = np.packbits(inside, axis=0).T
        seen.update(row.tobytes() for row in packed)
    out = set()
    for key in seen:
        bits = np.unpackbits(np.frombuffer(key, dtype=np.uint8))[: len(labels)]
        out.add(frozenset(l for l, b in zip(labels, bits) if b))
    return out


def oracle_region_count(f: CurveFamily, grid: Grid, tol: float = 1e-9) -> int:
    """Number of distinct nearest-neighbor sets met by grid query curves.

    A lower bound on the number of Voronoi regions that makes no use of
    query synthesis.
    """
    return len(oracle_region_sets(f, grid, tol))
