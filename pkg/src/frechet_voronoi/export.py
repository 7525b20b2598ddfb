"""SVG drawings and CSV distance tables of a family."""

from __future__ import annotations

import csv
import io
from typing import Optional

from .constructions import CurveFamily, SynthesizedQuery
from .dfd import discrete_frechet

VIEWBOX = 1000.0
PAD = 0.05 * VIEWBOX

_PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


def curve_name(label) -> str:
    return f"S{label[0]}_{label[1]}"


def distance_csv(f: CurveFamily, query: Optional[SynthesizedQuery] = None) -> str:
    """Pairwise distance matrix of the family, plus a row for the query."""
    curves = f.float_curves
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["curve"] + [curve_name(c.label) for c in curves])
    for a in curves:
        w.writerow([curve_name(a.label)] + [repr(float(discrete_frechet(a, b))) for b in curves])
    if query is not None:
        Q = query.Q.as_float()
        w.writerow(["Q"] + [repr(float(discrete_frechet(Q, b))) for b in curves])
    return buf.getvalue()


class _Canvas:
    """Uniform world-to-viewbox transform with y pointing up."""

    def __init__(self, xs, ys):
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0) or 1.0
        self.s = (VIEWBOX - 2 * PAD) / span
        self.items = []

    def xy(self, x, y):
        return PAD + (x - self.x0) * self.s, VIEWBOX - PAD - (y - self.y0) * self.s

    def circle(self, x, y, rad, **style):
        cx, cy = self.xy(x, y)
        self.items.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{rad:.3f}"{_style(style)}/>')

    def disk(self, x, y, radius, **style):
        self.circle(x, y, radius * self.s, **style)

    def polyline(self, pts, **style):
        coords = " ".join("{:.3f},{:.3f}".format(*self.xy(x, y)) for x, y in pts)
        self.items.append(f'<polyline points="{coords}" fill="none"{_style(style)}/>')

    def rect(self, x0, y0, x1, y1, **style):
        ax, ay = self.xy(x0, y1)
        bx, by = self.xy(x1, y0)
        self.items.append(
            f'<rect x="{ax:.3f}" y="{ay:.3f}" width="{bx - ax:.3f}" height="{by - ay:.3f}"{_style(style)}/>'
        )

    def text(self, x, y, s, size=14):
        tx, ty = self.xy(x, y)
        self.items.append(f'<text x="{tx:.3f}" y="{ty - 6:.3f}" font-size="{size}">{s}</text>')

    def render(self) -> str:
        body = "\n  ".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEWBOX:g} {VIEWBOX:g}">\n'
            f"  {body}\n</svg>\n"
        )


def _style(style) -> str:
    return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in style.items())


def _svg_1d(f: CurveFamily, query: Optional[SynthesizedQuery]) -> str:
    # every curve gets its own row; the anchors sit on the bottom axis
    rows = len(f.curves) + (1 if query else 0)
    xs = [float(v[0]) for c in f.curves for v in c.vertices]
    if query:
        rad = float(query.radius)
        xs += [float(v[0]) + s * rad for v in query.Q.vertices for s in (-1, 1)]
    span = max(xs) - min(xs) or 1.0
    row_h = span / (rows + 1)
    cv = _Canvas(xs, [0.0, row_h * (rows + 1)])
    cv.polyline([(min(xs), 0.0), (max(xs), 0.0)], stroke="black")
    for i, a in enumerate(f.anchors, start=1):
        cv.circle(float(a[0]), 0.0, 5, fill="black")
        cv.text(float(a[0]), 0.0, f"p{i}")
    for row, c in enumerate(f.curves, start=1):
        y = row * row_h
        color = _PALETTE[(c.label[0] - 1) % len(_PALETTE)]
        pts = [(float(v[0]), y) for v in c.vertices]
        cv.polyline(pts, stroke=color)
        for x, _ in pts:
            cv.circle(x, y, 3, fill=color)
        cv.text(pts[0][0], y, curve_name(c.label), size=10)
    if query:
        y = rows * row_h
        rad = float(query.radius)
        for v in query.Q.vertices:
            x = float(v[0])
            cv.rect(x - rad, y - row_h / 3, x + rad, y + row_h / 3, fill="#d62728", fill_opacity="0.15")
        pts = [(float(v[0]), y) for v in query.Q.vertices]
        cv.polyline(pts, stroke="#d62728", stroke_width="2")
        for x, _ in pts:
            cv.circle(x, y, 4, fill="#d62728")
        cv.text(pts[0][0], y, "Q")
    return cv.render()


def _svg_2d(f: CurveFamily, query: Optional[SynthesizedQuery]) -> str:
    pts = [v for c in f.curves for v in c.vertices]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    if query:
        rad = float(query.radius)
        for q in query.Q.vertices:
            xs += [q[0] - rad, q[0] + rad]
            ys += [q[1] - rad, q[1] + rad]
    cv = _Canvas(xs, ys)
    for c in f.curves:
        cv.polyline([(float(v[0]), float(v[1])) for v in c.vertices], stroke="#bbbbbb", stroke_width="0.5")
    for g in f.groups:
        color = _PALETTE[(g.index - 1) % len(_PALETTE)]
        for a in g.satellites:
            cv.circle(a[0], a[1], 3, fill=color)
    for i, a in enumerate(f.anchors, start=1):
        cv.circle(a[0], a[1], 5, fill="black")
        cv.text(a[0], a[1], f"p{i}")
    if query:
        rad = float(query.radius)
        for q in query.Q.vertices:
            cv.disk(q[0], q[1], rad, fill="#d62728", fill_opacity="0.12", stroke="#d62728")
        cv.polyline([(q[0], q[1]) for q in query.Q.vertices], stroke="#d62728", stroke_width="2")
        for q in query.Q.vertices:
            cv.circle(q[0], q[1], 4, fill="#d62728")
    return cv.render()


def family_svg(f: CurveFamily, query: Optional[SynthesizedQuery] = None) -> str:
    """Drawing of anchors, satellites, curves and optionally a query.

    The query's radius neighborhoods are drawn around its vertices (disks
    in the plane, intervals on the line).
    """
    if f.d == 1:
        return _svg_1d(f, query)
    if f.d == 2:
        return _svg_2d(f, query)
    raise ValueError("SVG export supports d <= 2 only")
