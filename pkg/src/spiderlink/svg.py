"""Deterministic SVG 1.1 figures of work spaces and Voronoi overlays.

Drawing is in plane coordinates with ``y`` flipped by hand (no transforms),
so text stays upright.  Every stratum is one element carrying a ``class``
(``face``, ``arc``, ``vertex``, ``puncture``, ``critical-circle``, ``zone``,
``voronoi-edge``, ``critical-point``) so figures can be audited by counting.
"""

import math
from xml.sax.saxutils import escape, quoteattr

import numpy as np

WIDTH = 640
MARGIN = 24
STYLE = """
.zone { fill: none; stroke: #bbbbbb; stroke-width: 0.8; }
.critical-circle { fill: none; stroke: #7a9cc6; stroke-width: 0.8; }
.face { fill: #f4d58d; fill-opacity: 0.6; fill-rule: evenodd; stroke: none; }
.arc { fill: none; stroke: #c0392b; stroke-width: 1.6; }
.vertex { fill: #1b1b1b; }
.puncture { fill: #ffffff; stroke: #1b1b1b; stroke-width: 1; }
.foot { fill: #2c3e50; }
.voronoi-edge { stroke: #555555; stroke-width: 1; stroke-dasharray: 5 4; fill: none; }
.critical-point { stroke: #1b1b1b; stroke-width: 0.6; }
.idx-0 { fill: #27ae60; } .idx-1 { fill: #f39c12; } .idx-2 { fill: #8e44ad; }
.label { font-family: sans-serif; font-size: 10px; }
"""


def _fmt(v):
    return f"{v:.4f}"


class _Canvas:
    def __init__(self, lo, hi):
        span = max(hi[0] - lo[0], hi[1] - lo[1], 1e-12)
        self.k = (WIDTH - 2 * MARGIN) / span
        self.lo = lo
        self.hi = hi
        self.height = int(math.ceil((hi[1] - lo[1]) * self.k + 2 * MARGIN))
        self.items = []

    def xy(self, p):
        return (MARGIN + (p[0] - self.lo[0]) * self.k, MARGIN + (self.hi[1] - p[1]) * self.k)

    def add(self, s):
        self.items.append(s)

    def circle(self, center, r, cls, extra=""):
        x, y = self.xy(center)
        self.add(f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r * self.k)}"{extra}/>')

    def dot(self, p, cls, r=3.0, extra=""):
        x, y = self.xy(p)
        self.add(f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}"{extra}/>')

    def text(self, p, s, dx=4, dy=-4):
        x, y = self.xy(p)
        self.add(f'<text class="label" x="{_fmt(x + dx)}" y="{_fmt(y + dy)}">{escape(s)}</text>')

    def render(self, title=None):
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
            f'height="{self.height}" viewBox="0 0 {WIDTH} {self.height}">',
            f"<style>{STYLE}</style>",
        ]
        if title:
            head.append(f"<title>{escape(title)}</title>")
        return "\n".join(head + self.items + ["</svg>"]) + "\n"


def _bounds(mech):
    f = mech.feet_array
    R = np.array([z.outer for z in mech.zones])
    lo = (f - R[:, None]).min(axis=0)
    hi = (f + R[:, None]).max(axis=0)
    return lo, hi


def _arc_path(canvas, center, r, start, sweep, forward, move=True):
    """Path segment for a counter-clockwise arc, traversed either way."""
    t0, t1 = (start, start + sweep) if forward else (start + sweep, start)
    p0 = np.asarray(center) + r * np.array([math.cos(t0), math.sin(t0)])
    parts = []
    if move:
        x, y = canvas.xy(p0)
        parts.append(f"M {_fmt(x)} {_fmt(y)}")
    # split long sweeps so no single SVG arc command is ambiguous
    pieces = max(1, int(math.ceil(abs(sweep) / (0.75 * math.pi))))
    rr = _fmt(r * canvas.k)
    for m in range(1, pieces + 1):
        t = t0 + (t1 - t0) * m / pieces
        p = np.asarray(center) + r * np.array([math.cos(t), math.sin(t)])
        x, y = canvas.xy(p)
        # y is flipped, so counter-clockwise in the plane is sweep-flag 0
        parts.append(f"A {rr} {rr} 0 0 {0 if forward else 1} {_fmt(x)} {_fmt(y)}")
    return parts


def _cycle_path(canvas, ws, halfedges):
    parts = []
    for n, (k, forward) in enumerate(halfedges):
        arc = ws.arcs[k]
        c = ws.circles[arc.circle]
        parts += _arc_path(canvas, c.center, c.radius, arc.start, arc.sweep, forward, move=(n == 0))
    parts.append("Z")
    return " ".join(parts)


def _draw_workspace(canvas, ws):
    mech = ws.mechanism
    f = mech.feet_array
    for i, z in enumerate(mech.zones):
        for r in sorted({z.inner, z.outer}):
            if r > 0:
                canvas.circle(f[i], r, "zone", f' data-leg="{i}"')
    for k, face in enumerate(ws.faces):
        d = " ".join([_cycle_path(canvas, ws, face.boundary)]
                     + [_cycle_path(canvas, ws, h) for h in face.hole_boundaries])
        canvas.add(f'<path class="face" data-face="{k}" data-chi="{face.chi}" d="{d}"/>')
    for k, c in enumerate(ws.circles):
        canvas.circle(c.center, c.radius, "critical-circle", f' data-leg="{c.leg}" data-circle="{k}"')
    for k, arc in enumerate(ws.arcs):
        c = ws.circles[arc.circle]
        d = " ".join(_arc_path(canvas, c.center, c.radius, arc.start, arc.sweep, True))
        canvas.add(f'<path class="arc" data-arc="{k}" data-circle="{arc.circle}" d="{d}"/>')
    for k, v in enumerate(ws.vertices):
        canvas.dot(v.point, "vertex", 2.5, f' data-vertex="{k}"')
    for i in range(mech.n):
        canvas.dot(f[i], "foot", 2.0, f' data-foot="{i}"')
        canvas.text(f[i], f"A{i + 1}", dx=4, dy=12)
    for i in ws.punctures:
        canvas.dot(f[i], "puncture", 3.5, f' data-puncture="{i}"')


def point_label(index, top):
    """``m`` for minima, ``M`` for maxima and ``S`` for everything between."""
    if index is None:
        return "?"
    if index == 0:
        return "m"
    if index >= top:
        return "M"
    return "S"


def _draw_components(canvas, components, top):
    for k, c in enumerate(components):
        cls = f"critical-point idx-{min(c.index, 2) if c.index is not None else 1}"
        extra = f' data-case={quoteattr(c.case)} data-index="{c.index}"'
        canvas.dot(c.x, cls, 3.5, extra)
        canvas.text(c.x, point_label(c.index, top))


def workspace_svg(ws, components=(), title=None):
    """Work space strata, optionally with critical components on top."""
    canvas = _Canvas(*_bounds(ws.mechanism))
    _draw_workspace(canvas, ws)
    _draw_components(canvas, list(components), ws.mechanism.dim)
    return canvas.render(title)


def _clip_edge(edge, lo, hi):
    """Finite segment of a Voronoi edge inside the box ``[lo, hi]``."""
    o = np.asarray(edge.origin)
    d = np.asarray(edge.direction)
    t0, t1 = edge.interval
    for ax in range(2):
        if abs(d[ax]) < 1e-15:
            continue
        a, b = (lo[ax] - o[ax]) / d[ax], (hi[ax] - o[ax]) / d[ax]
        t0, t1 = max(t0, min(a, b)), min(t1, max(a, b))
    if t0 >= t1:
        return None
    return edge.point(t0), edge.point(t1)


def voronoi_svg(ws, report, title=None):
    """Work space, dashed Voronoi diagram, critical circles and labeled points."""
    lo, hi = _bounds(ws.mechanism)
    canvas = _Canvas(lo, hi)
    _draw_workspace(canvas, ws)
    for e in report.structure.edges:
        seg = _clip_edge(e, lo, hi)
        if seg is None:
            continue
        (x0, y0), (x1, y1) = canvas.xy(seg[0]), canvas.xy(seg[1])
        canvas.add(f'<line class="voronoi-edge" data-sites="{e.sites[0]},{e.sites[1]}" '
                   f'x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}"/>')
    f = ws.mechanism.feet_array
    for p in report.non_isolated:
        if p.kind == "circle":
            canvas.circle(f[p.leg], p.radius, "non-isolated", ' style="fill:none;stroke:#16a085;stroke-width:2.5"')
        else:
            sweep = (p.end - p.start) % (2 * math.pi) or 2 * math.pi
            d = " ".join(_arc_path(canvas, f[p.leg], p.radius, p.start, sweep, True))
            canvas.add(f'<path class="non-isolated" style="fill:none;stroke:#16a085;stroke-width:2.5" d="{d}"/>')
    _draw_components(canvas, report.isolated, ws.mechanism.dim)
    return canvas.render(title)
