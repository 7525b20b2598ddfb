"""Command line interface: ``frechet-voronoi generate|verify|oracle|export``.

Exit codes: 0 success, 1 mismatch, 2 invalid parameters or flags,
3 I/O or file format failure, 4 fragile margins.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import constructions as cons
from .errors import GeometryFailure, GridTooLarge, TooManyTuples
from .export import distance_csv, family_svg
from .fileformat import (
    FormatError,
    canonical,
    family_to_dict,
    load_family,
    report_to_dict,
    write_json,
)
from .verifier import Grid, Sampler, default_grid, oracle_region_sets, verify_all

log = logging.getLogger("frechet_voronoi")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FRAGILE = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path):
    try:
        return load_family(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    except (json.JSONDecodeError, FormatError, ValueError) as exc:
        raise CliError(f"cannot parse {path}: {exc}", EXIT_IO) from exc


def _write(path, writer):
    try:
        writer(path)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _write_text(path, text: str):
    def go(p):
        if str(p) == "-":
            sys.stdout.write(text)
        else:
            Path(p).write_text(text, encoding="utf-8")

    _write(path, go)


def _parse_tuple(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise CliError(f"bad tuple {text!r}; expected e.g. 1,2,1", EXIT_USAGE) from exc


def cmd_generate(args) -> int:
    base = cons.default_params(args.d, args.k, args.m, args.r if args.r is not None else 1.0)
    params = cons.ConstructionParams(
        args.d,
        args.k,
        args.m,
        base.r,
        args.epsilon if args.epsilon is not None else base.epsilon,
        args.delta if args.delta is not None else base.delta,
    )
    violations = cons.validate_params(params)
    if violations:
        for v in violations:
            print(f"invalid parameters: {v}", file=sys.stderr)
        return EXIT_USAGE
    try:
        fam = cons.build_family(params)
    except cons.InvalidParams as exc:
        for v in exc.violations:
            print(f"invalid parameters: {v}", file=sys.stderr)
        return EXIT_USAGE
    _write(args.out, lambda p: write_json(p, family_to_dict(fam)))
    print(
        f"family d={fam.d} k={fam.k} m={fam.m}: {fam.n} curves in {fam.G} groups, "
        f"claimed bound {fam.claimed_bound}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    fam, digest = _load(args.family)
    try:
        sampler = Sampler.parse(args.tuples)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    if args.exact and fam.d != 1:
        raise CliError(f"--exact needs a one-dimensional family (d = {fam.d})", EXIT_USAGE)
    for problem in cons.check_family(fam):
        log.warning("family structure: %s", problem)
    try:
        report = verify_all(fam, tol=args.tol, sampler=sampler, exact=args.exact, workers=args.workers)
    except TooManyTuples as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    except GeometryFailure as exc:
        print(f"mismatch: query synthesis failed: {exc}", file=sys.stderr)
        if args.out:
            doc = {
                "schema_version": 1,
                "kind": "report",
                "family_sha256": digest,
                "sampler": {"spec": str(sampler)},
                "status": "mismatch",
                "error": str(exc),
            }
            _write(args.out, lambda p: write_json(p, doc))
        return EXIT_MISMATCH
    if args.out:
        _write(args.out, lambda p: write_json(p, report_to_dict(report, digest, tol=args.tol)))

    for rec in report.mismatches[:10]:
        print(f"  tuple {rec.tuple}: predicted {sorted(rec.predicted)} actual {sorted(rec.actual)}")
    for rec in report.fragile[:10]:
        print(f"  tuple {rec.tuple}: fragile margin {rec.margin!r}")
    if sampler.kind == "all":
        rel = ">=" if report.distinct_region_count >= report.claimed_bound else "<"
        print(f"{report.distinct_region_count} regions {rel} claimed {report.claimed_bound}")
    else:
        print(
            f"{report.tuple_count} sampled tuples, {report.distinct_region_count} distinct regions "
            f"(claimed bound {report.claimed_bound} over all tuples)"
        )
    print(f"status: {report.status}, min margin {float(report.min_margin):.6g}")
    return {"success": EXIT_OK, "fragile": EXIT_FRAGILE}.get(report.status, EXIT_MISMATCH)


def _parse_range(text: str) -> tuple:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise CliError(f"bad range {text!r}; expected LO:HI", EXIT_USAGE) from exc


def _reachable(fam, grid: Grid) -> int | None:
    """Distinct predicted sets of the tuples whose query lies on the grid."""
    if fam.m**fam.G > 10**4:
        return None
    axes = grid.axes()
    found = set()
    for t in cons.iter_tuples(fam):
        try:
            q = cons.synthesize_query(fam, t)
        except GeometryFailure:
            continue
        coords = [float(x) for v in q.Q.vertices for x in v]
        if all(len(a) and abs(a - x).min() <= 1e-9 for a, x in zip(axes, coords)):
            found.add(cons.predicted_neighbors(fam, t))
    return len(found)


def cmd_oracle(args) -> int:
    fam, digest = _load(args.family)
    if args.range:
        ranges = tuple(_parse_range(r) for r in args.range)
        if len(ranges) != fam.d * fam.k:
            raise CliError(f"need {fam.d * fam.k} --range values (one per coordinate)", EXIT_USAGE)
        grid = Grid(ranges, args.step)
    else:
        grid = default_grid(fam, args.step)
    try:
        sets = oracle_region_sets(fam, grid, tol=args.tol)
    except GridTooLarge as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    target = fam.m**fam.G
    reach = _reachable(fam, grid)
    print(f"oracle: {len(sets)} distinct nearest-neighbor sets over {grid.size} grid curves")
    print(f"m^G = {target}; count >= m^G: {'yes' if len(sets) >= target else 'no'}")
    if reach is not None:
        print(f"synthesized regions on this grid: {reach}; count >= that: {'yes' if len(sets) >= reach else 'no'}")
    if args.out:
        doc = {
            "schema_version": 1,
            "kind": "oracle",
            "family_sha256": digest,
            "grid": {"ranges": [list(r) for r in grid.ranges], "step": grid.step},
            "tol": args.tol,
            "count": len(sets),
            "target": target,
            "reachable": reach,
        }
        _write(args.out, lambda p: write_json(p, doc))
    return EXIT_OK


def cmd_export(args) -> int:
    fam, _ = _load(args.family)
    query = None
    if args.tuple:
        t = _parse_tuple(args.tuple)
        try:
            query = cons.synthesize_query(fam, t)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_USAGE) from exc
        except GeometryFailure as exc:
            raise CliError(f"query synthesis failed: {exc}", EXIT_MISMATCH) from exc
    if args.format == "svg":
        if fam.d > 2:
            raise CliError("svg export supports d <= 2 only", EXIT_USAGE)
        text = family_svg(fam, query)
    elif args.format == "csv":
        text = distance_csv(fam, query)
    else:
        text = canonical(family_to_dict(fam)) + "\n"
    _write_text(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frechet-voronoi",
        description="Lower-bound families for Voronoi diagrams of curves under the discrete Frechet distance.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a curve family and write it as JSON")
    g.add_argument("-d", type=int, required=True, help="ambient dimension")
    g.add_argument("-k", type=int, required=True, help="vertices per curve")
    g.add_argument("-m", type=int, required=True, help="curves per group")
    g.add_argument("--r", type=float, default=None, help="base radius (d >= 2, default 1)")
    g.add_argument("--epsilon", type=float, default=None, help="satellite offset at p_2")
    g.add_argument("--delta", type=float, default=None, help="satellite offset at p_3..p_k")
    g.add_argument("-o", "--out", default="-", help="output path (default stdout)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="certify the region count of a family")
    v.add_argument("family")
    v.add_argument("--tuples", default="all", help="'all' or 'random:SEED:COUNT'")
    v.add_argument("--exact", action="store_true", help="rational arithmetic (d = 1 only)")
    v.add_argument("--tol", type=float, default=None, help="absolute membership tolerance")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("-o", "--out", default=None, help="report path")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="count distinct neighbor sets over a grid of query curves")
    o.add_argument("family")
    o.add_argument(
        "--range",
        action="append",
        metavar="LO:HI",
        help="one per query coordinate, in vertex order; write negative bounds as --range=-3:1",
    )
    o.add_argument("--step", type=float, default=0.25)
    o.add_argument("--tol", type=float, default=1e-9)
    o.add_argument("-o", "--out", default=None)
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("export", help="write an SVG drawing, CSV distance table or JSON copy")
    e.add_argument("family")
    e.add_argument("--tuple", default=None, help="index tuple of a query to include, e.g. 1,2")
    e.add_argument("--format", choices=["svg", "csv", "json"], required=True)
    e.add_argument("-o", "--out", default="-")
    e.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
