"""JSON documents for families (``FamilyFileV1``) and reports (``ReportFileV1``).

Rational coordinates are stored as ``[numerator, denominator]`` pairs,
floats as JSON numbers in shortest round-trip form.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from pathlib import Path

from .constructions import ConstructionParams, CurveFamily, Group
from .dfd import Curve
from .verifier import MARGIN_FLOOR_REL, TOL_REL, VerificationReport

SCHEMA_VERSION = 1


class FormatError(ValueError):
    """A document does not follow the expected schema."""


def encode_number(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        x = Fraction(x)
        return [x.numerator, x.denominator]
    x = float(x)
    return x if math.isfinite(x) else None


def decode_number(v):
    if isinstance(v, list):
        if len(v) != 2 or not all(isinstance(t, int) for t in v):
            raise FormatError(f"rational must be [numerator, denominator], got {v!r}")
        return Fraction(v[0], v[1])
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return float(v)
    raise FormatError(f"not a number: {v!r}")


def _point(p) -> list:
    return [encode_number(x) for x in p]


def _unpoint(p) -> tuple:
    if not isinstance(p, list) or not p:
        raise FormatError(f"point must be a nonempty list, got {p!r}")
    return tuple(decode_number(x) for x in p)


def family_to_dict(f: CurveFamily) -> dict:
    p = f.params
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "family",
        "params": {
            "d": p.d,
            "k": p.k,
            "m": p.m,
            "r": p.r,
            "epsilon": p.epsilon,
            "delta": p.delta,
        },
        "anchors": [_point(a) for a in f.anchors],
        "groups": [
            {"group": g.index, "host": g.host, "satellites": [_point(a) for a in g.satellites]}
            for g in f.groups
        ],
        "curves": [
            {"label": {"i": c.label[0], "j": c.label[1]}, "vertices": [_point(v) for v in c.vertices]}
            for c in f.curves
        ],
    }


def family_from_dict(doc: dict) -> CurveFamily:
    if not isinstance(doc, dict) or doc.get("kind") != "family":
        raise FormatError("not a family document")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {doc.get('schema_version')!r}")
    try:
        pp = doc["params"]
        params = ConstructionParams(
            d=int(pp["d"]),
            k=int(pp["k"]),
            m=int(pp["m"]),
            r=pp.get("r"),
            epsilon=pp.get("epsilon"),
            delta=pp.get("delta"),
        )
        anchors = tuple(_unpoint(a) for a in doc["anchors"])
        groups = tuple(
            Group(int(g["group"]), int(g["host"]), tuple(_unpoint(a) for a in g["satellites"]))
            for g in doc["groups"]
        )
        curves = tuple(
            Curve(
                tuple(_unpoint(v) for v in c["vertices"]),
                (int(c["label"]["i"]), int(c["label"]["j"])),
            )
            for c in doc["curves"]
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed family document: {exc!r}") from exc
    return CurveFamily(params, anchors, groups, curves)


def canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def content_hash(doc: dict) -> str:
    return hashlib.sha256(canonical(doc).encode("utf-8")).hexdigest()


def _labels(s) -> list:
    return [list(l) for l in sorted(s)]


def report_to_dict(report: VerificationReport, family_sha256: str, tol=None, error=None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "report",
        "family_sha256": family_sha256,
        "tolerance": {
            "membership": "absolute",
            "exact": report.exact,
            "tol": 0 if report.exact else tol,
            "tol_rel_radius": None if report.exact or tol is not None else TOL_REL,
            "margin_floor_rel_radius": 0 if report.exact else MARGIN_FLOOR_REL,
        },
        "sampler": {
            "spec": str(report.sampler),
            "kind": report.sampler.kind,
            "seed": report.sampler.seed,
            "count": report.sampler.count,
        },
        "tuple_count": report.tuple_count,
        "records": [
            {
                "tuple": list(r.tuple),
                "predicted": _labels(r.predicted),
                "actual": _labels(r.actual),
                "sets_equal": r.sets_equal,
                "fragile": r.fragile,
                "match": r.match,
                "margin": encode_number(r.margin),
                "radius": encode_number(r.radius),
                "min_distance": encode_number(r.min_distance),
                "max_in_distance": encode_number(r.max_in_distance),
            }
            for r in report.records
        ],
        "distinct_region_count": report.distinct_region_count,
        "claimed_bound": report.claimed_bound,
        "min_margin": encode_number(report.min_margin),
        "status": report.status,
    }
    if error is not None:
        doc["status"] = "mismatch"
        doc["error"] = error
    return doc


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path, doc: dict) -> None:
    text = json.dumps(doc, indent=1) + "\n"
    if str(path) == "-":
        print(text, end="")
        return
    Path(path).write_text(text, encoding="utf-8")


def load_family(path) -> tuple[CurveFamily, str]:
    """Family from a file together with its content hash."""
    doc = read_json(path)
    return family_from_dict(doc), content_hash(doc)
