"""Stratified work space: zones, the critical-circle arrangement and fibers.

The work space ``W`` is the intersection of the legs' zones.  All critical
circles together cut ``W`` into open faces, open arcs and vertices; over each
stratum the fiber of the work map is a fixed product of polygon spaces, which
gives the Euler characteristic of the spider space as a stratified sum.

Faces are recovered from a half-edge structure on the arcs that lie in ``W``:
counter-clockwise boundary cycles are outer boundaries, clockwise ones are
holes attached to the smallest enclosing outer cycle.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import polynomial, polyspace
from .errors import EmptyWorkspace, OutsideWorkspace, UnsupportedFibers
from .geometry import angle_of, circle_intersections, wrap_angle

TWO_PI = 2.0 * math.pi
# tilted ray for winding numbers, avoids axis-aligned coincidences
_RAY_ANGLE = 0.3183098861837907
_RAY = np.array([math.cos(_RAY_ANGLE), math.sin(_RAY_ANGLE)])


@dataclass(frozen=True)
class Circle:
    leg: int
    center: tuple
    radius: float
    sign_vectors: tuple


@dataclass(frozen=True)
class Vertex:
    point: tuple
    circles: tuple


@dataclass(frozen=True)
class Arc:
    """Counter-clockwise arc ``start -> end`` on ``circle``; ``full`` for a whole circle."""

    circle: int
    start: float
    end: float
    full: bool
    vertices: tuple = ()

    @property
    def sweep(self):
        if self.full:
            return TWO_PI
        s = wrap_angle(self.end - self.start)
        return s if s > 0 else TWO_PI

    def angle_at(self, frac):
        return self.start + frac * self.sweep


@dataclass(frozen=True)
class Face:
    sample: tuple
    holes: int
    punctures: tuple
    area: float
    boundary: tuple  # (arc index, forward) half-edges of the outer cycle
    hole_boundaries: tuple = ()

    @property
    def chi(self):
        return 1 - self.holes - len(self.punctures)


@dataclass(frozen=True)
class FiberDescriptor:
    """Fiber of the work map over a point: product of leg closures.

    ``circle_factor`` is set when the body sits on a foot, which contributes an
    extra circle of rotations of that (closed) leg.
    """

    point: tuple
    factors: tuple
    circle_factor: bool = False
    aligned: tuple = ()

    @property
    def chi(self):
        if self.circle_factor:
            return 0
        out = 1
        for f in self.factors:
            c = _factor_chi(f)
            if c is None:
                return None
            out *= c
        return out

    @property
    def poincare(self):
        polys = []
        for f in self.factors:
            if f.generic and not f.empty:
                polys.append(f.betti)
            elif _degenerate_point(f):
                polys.append((1,))
            else:
                return None
        if self.circle_factor:
            polys.append((1, 1))
        return polynomial.product(polys)

    @property
    def dim(self):
        return sum(max(f.dim, 0) for f in self.factors) + (1 if self.circle_factor else 0)


def _degenerate_point(f):
    # an aligned closure of a 2-edge leg is a single flat triangle
    return not f.generic and not f.empty and len(f.lengths) == 3


def _factor_chi(f):
    if f.empty:
        return 0
    if f.generic:
        return f.euler
    if _degenerate_point(f):
        return 1
    return None


@dataclass
class StratifiedWorkspace:
    mechanism: object
    circles: list
    vertices: list
    arcs: list
    faces: list
    punctures: list = field(default_factory=list)

    @property
    def empty(self):
        return not (self.faces or self.arcs or self.vertices)

    def contains(self, x, slack=None):
        return self.mechanism.in_workspace(x, slack=slack)

    def arc_point(self, k, frac=0.5):
        arc = self.arcs[k]
        c = self.circles[arc.circle]
        t = arc.angle_at(frac)
        return np.asarray(c.center) + c.radius * np.array([math.cos(t), math.sin(t)])

    def chi_c(self):
        """Compactly supported Euler characteristic of ``W`` from its strata."""
        return (sum(f.chi for f in self.faces)
                - sum(0 if a.full else 1 for a in self.arcs)
                + len(self.vertices) + len(self.punctures))

    def summary(self):
        return {
            "circles": len(self.circles),
            "vertices": len(self.vertices),
            "arcs": len(self.arcs),
            "faces": len(self.faces),
            "punctures": len(self.punctures),
            "face_chi": [f.chi for f in self.faces],
        }


def _arc_area(c, r, t0, sweep):
    """Signed area term ``(1/2) int x dy - y dx`` along an arc."""
    t1 = t0 + sweep
    return 0.5 * (r * r * sweep + r * c[0] * (math.sin(t1) - math.sin(t0))
                  - r * c[1] * (math.cos(t1) - math.cos(t0)))


def _ray_crossings(q, c, r, t0, sweep, forward):
    """Signed crossings of the ray from ``q`` along ``_RAY`` with an arc."""
    d = q - c
    b = float(np.dot(d, _RAY))
    cc = float(np.dot(d, d)) - r * r
    disc = b * b - cc
    if disc <= 0:
        return 0
    total = 0
    for s in (-b - math.sqrt(disc), -b + math.sqrt(disc)):
        if s <= 0:
            continue
        p = q + s * _RAY - c
        t = math.atan2(p[1], p[0])
        rel = wrap_angle(t - t0)
        if rel >= sweep:
            continue
        tangent = np.array([-math.sin(t), math.cos(t)]) * (1 if forward else -1)
        # crossing sign: tangent to the left or right of the ray
        side = _RAY[0] * tangent[1] - _RAY[1] * tangent[0]
        total += 1 if side > 0 else -1
    return total


class _Cycle:
    def __init__(self, halfedges, ws):
        self.halfedges = halfedges
        self.ws = ws
        self.area = sum(self._term(h, _arc_area) for h in halfedges)

    def _geom(self, h):
        arc = self.ws.arcs[h[0]]
        circ = self.ws.circles[arc.circle]
        return arc, np.asarray(circ.center, dtype=float), circ.radius

    def _term(self, h, fn):
        arc, c, r = self._geom(h)
        if h[1]:
            return fn(c, r, arc.start, arc.sweep)
        return fn(c, r, arc.start + arc.sweep, -arc.sweep)

    def winding(self, q):
        q = np.asarray(q, dtype=float)
        total = 0
        for h in self.halfedges:
            arc, c, r = self._geom(h)
            total += _ray_crossings(q, c, r, arc.start, arc.sweep, h[1])
        return total

    def left_sample(self):
        """A point just to the left of the longest arc of the cycle."""
        h = max(self.halfedges, key=lambda h: self.ws.arcs[h[0]].sweep * self.ws.circles[self.ws.arcs[h[0]].circle].radius)
        arc, c, r = self._geom(h)
        t = arc.angle_at(0.5)
        m = c + r * np.array([math.cos(t), math.sin(t)])
        gap = 0.5 * r
        for k, other in enumerate(self.ws.circles):
            if k == arc.circle:
                continue
            gap = min(gap, abs(np.linalg.norm(m - np.asarray(other.center)) - other.radius))
        delta = 0.5 * gap
        inward = (c - m) / r
        return m + (delta if h[1] else -delta) * inward


def arrangement_circles(mech):
    out = []
    f = mech.feet_array
    for i, c in mech.circles:
        if c.degenerate:
            continue
        out.append(Circle(leg=i, center=tuple(f[i]), radius=c.radius, sign_vectors=c.sign_vectors))
    return out


def build(mech, extra_circles=(), strict=False):
    """Stratify the work space of ``mech`` by its critical circles.

    ``extra_circles`` are additional ``(center, radius)`` refinements (used by
    additivity audits).  With ``strict`` an empty work space raises
    :class:`EmptyWorkspace`; otherwise an empty structure is returned.
    """
    circles = arrangement_circles(mech)
    for center, radius in extra_circles:
        circles.append(Circle(leg=-1, center=tuple(map(float, center)), radius=float(radius), sign_vectors=()))
    slack = 10 * mech.atol
    merge = 100 * mech.atol

    # split points on every circle from all pairwise intersections
    cuts = [[] for _ in circles]
    vertex_pts = []
    vertex_circles = []

    def vertex_id(x, ci, cj):
        for k, v in enumerate(vertex_pts):
            if np.linalg.norm(v - x) < merge:
                vertex_circles[k].update((ci, cj))
                return k
        vertex_pts.append(np.asarray(x, dtype=float))
        vertex_circles.append({ci, cj})
        return len(vertex_pts) - 1

    for a in range(len(circles)):
        for b in range(a + 1, len(circles)):
            ca, cb = circles[a], circles[b]
            if np.linalg.norm(np.subtract(ca.center, cb.center)) < merge:
                continue
            for x in circle_intersections(ca.center, ca.radius, cb.center, cb.radius):
                vid = vertex_id(x, a, b)
                for k, c in ((a, ca), (b, cb)):
                    t = wrap_angle(angle_of(np.asarray(x) - np.asarray(c.center)))
                    cuts[k].append((t, vid))

    arcs = []
    used_vertices = set()
    for k, c in enumerate(circles):
        center = np.asarray(c.center)
        pts = sorted(set(cuts[k]))
        # collapse duplicated vertex ids on a circle (tangencies)
        dedup = []
        for t, vid in pts:
            if not any(v == vid for _, v in dedup):
                dedup.append((t, vid))
        pts = dedup
        if not pts:
            probe = center + c.radius * np.array([1.0, 0.0])
            if mech.in_workspace(probe, slack=slack):
                arcs.append(Arc(circle=k, start=0.0, end=TWO_PI, full=True))
            continue
        for idx, (t0, v0) in enumerate(pts):
            t1, v1 = pts[(idx + 1) % len(pts)]
            sweep = wrap_angle(t1 - t0) or TWO_PI
            tm = t0 + 0.5 * sweep
            mid = center + c.radius * np.array([math.cos(tm), math.sin(tm)])
            if mech.in_workspace(mid, slack=slack):
                arcs.append(Arc(circle=k, start=t0, end=t0 + sweep, full=False, vertices=(v0, v1)))
                used_vertices.update((v0, v1))

    # vertices that survive only as isolated touching points are dropped
    keep = sorted(used_vertices)
    remap = {old: new for new, old in enumerate(keep)}
    vertices = [Vertex(point=tuple(vertex_pts[v]), circles=tuple(sorted(vertex_circles[v]))) for v in keep]
    arcs = [
        Arc(a.circle, a.start, a.end, a.full, tuple(remap[v] for v in a.vertices)) if not a.full else a
        for a in arcs
    ]

    ws = StratifiedWorkspace(mechanism=mech, circles=circles, vertices=vertices, arcs=arcs, faces=[])
    ws.faces, ws.punctures = _trace_faces(ws, mech)
    if strict and ws.empty:
        raise EmptyWorkspace("the zones have empty intersection")
    return ws


def _trace_faces(ws, mech):
    # half-edge h = (arc index, forward); forward runs counter-clockwise
    outgoing = {}
    loops = []
    for k, arc in enumerate(ws.arcs):
        if arc.full:
            loops.append([(k, True)])
            loops.append([(k, False)])
            continue
        v0, v1 = arc.vertices
        t0, t1 = arc.start, arc.start + arc.sweep
        # tangent directions leaving each endpoint
        out_fwd = angle_of((-math.sin(t0), math.cos(t0)))
        out_bwd = angle_of((math.sin(t1), -math.cos(t1)))
        outgoing.setdefault(v0, []).append((wrap_angle(out_fwd), (k, True)))
        outgoing.setdefault(v1, []).append((wrap_angle(out_bwd), (k, False)))
    for v in outgoing:
        outgoing[v].sort()

    def dest(h):
        arc = ws.arcs[h[0]]
        return arc.vertices[1] if h[1] else arc.vertices[0]

    def nxt(h):
        v = dest(h)
        twin = (h[0], not h[1])
        ring = outgoing[v]
        pos = next(i for i, (_, e) in enumerate(ring) if e == twin)
        return ring[pos - 1][1]

    seen = set()
    cycles = [_Cycle(loop, ws) for loop in loops]
    for v in sorted(outgoing):
        for _, h in outgoing[v]:
            if h in seen:
                continue
            cyc = []
            cur = h
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = nxt(cur)
            cycles.append(_Cycle(cyc, ws))

    outers = [c for c in cycles if c.area > 0]
    inners = [c for c in cycles if c.area <= 0]
    holes = {id(c): 0 for c in outers}
    members = {id(c): [] for c in outers}
    for h in inners:
        q = h.left_sample()
        owners = [o for o in outers if o.winding(q) != 0]
        if owners:
            owner = min(owners, key=lambda o: o.area)
            holes[id(owner)] += 1
            members[id(owner)].append(h)

    faces = []
    punctures = []
    f = mech.feet_array
    for o in outers:
        sample = o.left_sample()
        if not mech.in_workspace(sample, slack=0.0):
            continue
        punct = []
        for i in range(mech.n):
            inside = o.winding(f[i]) != 0 and all(h.winding(f[i]) == 0 for h in members[id(o)])
            if inside and mech.in_workspace(f[i], slack=0.0):
                punct.append(i)
                punctures.append(i)
        faces.append(Face(sample=tuple(sample), holes=holes[id(o)], punctures=tuple(punct),
                          area=o.area - sum(-h.area for h in members[id(o)]),
                          boundary=tuple(o.halfedges),
                          hole_boundaries=tuple(tuple(h.halfedges) for h in members[id(o)])))
    return faces, sorted(punctures)


def fiber(mech, x):
    """Fiber descriptor of the work map over ``x``."""
    x = np.asarray(x, dtype=float)
    if not mech.in_workspace(x):
        raise OutsideWorkspace(f"{tuple(x)} is not in the work space")
    d = mech.distances(x)
    factors = []
    aligned = []
    circle = False
    for i, leg in enumerate(mech.legs):
        desc = polyspace.closure_descriptor(leg, float(d[i]), mech.tol)
        if d[i] <= mech.atol:
            circle = True
        elif not desc.generic:
            aligned.append(i)
        factors.append(desc)
    return FiberDescriptor(point=tuple(x), factors=tuple(factors), circle_factor=circle,
                           aligned=tuple(aligned))


@dataclass(frozen=True)
class EulerCertificate:
    value: int
    terms: tuple  # (kind, index, chi_c, fiber chi)


def euler_via_strata(mech, ws=None):
    """Euler characteristic of the spider space as a sum over strata of ``W``."""
    ws = build(mech) if ws is None else ws
    if ws.empty:
        raise EmptyWorkspace("the zones have empty intersection")
    terms = []

    def add(kind, idx, chi_c, point):
        if chi_c == 0:
            terms.append((kind, idx, 0, None))
            return
        fchi = fiber(mech, point).chi
        if fchi is None:
            raise UnsupportedFibers(
                f"fiber over {kind} {idx} has an aligned leg with 3 or more edges")
        terms.append((kind, idx, chi_c, fchi))

    for k, face in enumerate(ws.faces):
        add("face", k, face.chi, face.sample)
    for k, arc in enumerate(ws.arcs):
        add("arc", k, 0 if arc.full else -1, ws.arc_point(k))
    for k, v in enumerate(ws.vertices):
        add("vertex", k, 1, v.point)
    for i in ws.punctures:
        add("puncture", i, 1, mech.feet_array[i])
    value = sum(c * f for _, _, c, f in terms if f is not None)
    return EulerCertificate(value=int(value), terms=tuple(terms))
