"""Voronoi distance ``V(x) = min_i |x - s_i|^2`` and its lift to a spider space.

The sites ``s_i`` are the feet, or small displacements of them (the legs stay
rooted at the feet).  In the plane, the critical points of ``V`` are the
sites (minima), midpoints of Delaunay edges crossing their dual Voronoi edge
(saddles) and Voronoi vertices inside their Delaunay triangle (maxima).

On the spider space a configuration is critical when

* its body sits at a planar critical point (the whole fiber is critical);
* inside an open cell ``i`` it is critical for ``|X - s_i|^2`` with one or two
  aligned legs; a leg aligned on a circle about ``s_i`` itself gives whole
  arcs of critical points when ``s_i`` is that leg's foot;
* on a Voronoi edge, one leg is aligned and the line through the body and
  that leg's foot separates the two sites of the edge.

Displacing every site off its foot turns the critical arcs into isolated
points and yields a Morse polynomial for the perturbed function.
"""

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import arm, morse, polynomial
from .errors import (
    DegenerateCone, FourCocircular, NonIsolatedRemaining, NotVoronoiGeneric,
    OffsetTooLarge,
)
from .geometry import angle_of, cross, wrap_angle
from .mechanism import strong_genericity_report

MAX_SITES = 32

PLANE = "PlaneCritical"
CELL_ONE = "CellOneAligned"
CELL_TWO = "CellTwoAligned"
EDGE_ONE = "EdgeOneAligned"


# -- planar Voronoi / Delaunay ----------------------------------------------

def _circumcenter(a, b, c):
    ba, ca = b - a, c - a
    d = 2.0 * cross(ba, ca)
    # collinear up to rounding: the circumcenter is not representable
    if abs(d) <= 1e-12 * np.linalg.norm(ba) * np.linalg.norm(ca):
        return None
    ux = (ca[1] * (ba @ ba) - ba[1] * (ca @ ca)) / d
    uy = (ba[0] * (ca @ ca) - ca[0] * (ba @ ba)) / d
    return a + np.array([ux, uy])


@dataclass(frozen=True)
class VoronoiEdge:
    sites: tuple  # (i, j), i < j
    origin: tuple  # midpoint of s_i s_j
    direction: tuple  # unit vector along the bisector
    interval: tuple  # (t_lo, t_hi), may be infinite

    def point(self, t):
        return np.asarray(self.origin) + t * np.asarray(self.direction)

    def contains(self, x, tol):
        t = float(np.dot(np.asarray(x) - self.origin, self.direction))
        return self.interval[0] + tol < t < self.interval[1] - tol


@dataclass(frozen=True)
class VoronoiStructure:
    sites: tuple
    edges: tuple  # VoronoiEdge
    triangles: tuple  # Delaunay triples (i, j, k)
    vertices: tuple  # circumcenters, aligned with triangles
    tol: float

    @property
    def delaunay_edges(self):
        return tuple(e.sites for e in self.edges)

    def nearest(self, x):
        """``(i, gap)``: nearest site and distance gap to the runner-up."""
        d = np.linalg.norm(np.asarray(self.sites) - np.asarray(x), axis=1)
        order = np.argsort(d)
        gap = float(d[order[1]] - d[order[0]]) if len(d) > 1 else math.inf
        return int(order[0]), gap

    def in_cell(self, i, x, margin=None):
        margin = 10 * self.tol if margin is None else margin
        j, gap = self.nearest(x)
        return j == i and gap > margin

    def distance_to_diagram(self, x):
        return self.nearest(x)[1]


def structure(sites, tol=1e-9):
    """Voronoi edges and Delaunay triangles by brute force.

    ``tol`` is an absolute distance.  Four sites on an empty circle raise
    :class:`FourCocircular`.
    """
    s = np.asarray(sites, dtype=float)
    n = len(s)
    if n > MAX_SITES:
        raise ValueError(f"at most {MAX_SITES} sites are supported")
    triangles, vertices = [], []
    for i, j, k in itertools.combinations(range(n), 3):
        c = _circumcenter(s[i], s[j], s[k])
        if c is None:
            continue
        r = np.linalg.norm(c - s[i])
        others = [m for m in range(n) if m not in (i, j, k)]
        d = np.linalg.norm(s[others] - c, axis=1) if others else np.zeros(0)
        if np.any(d < r - tol):
            continue
        if np.any(np.abs(d - r) <= tol):
            raise FourCocircular(f"sites {i}, {j}, {k} and another lie on one empty circle")
        triangles.append((i, j, k))
        vertices.append(tuple(c))
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        m = 0.5 * (s[i] + s[j])
        dvec = s[j] - s[i]
        tau = np.array([-dvec[1], dvec[0]]) / np.linalg.norm(dvec)
        lo, hi = -math.inf, math.inf
        for k in range(n):
            if k in (i, j):
                continue
            # |x - s_i|^2 <= |x - s_k|^2 along x = m + t tau
            w = s[k] - s[i]
            coef = 2.0 * tau @ w
            rhs = s[k] @ s[k] - s[i] @ s[i] - 2.0 * m @ w
            if abs(coef) < 1e-300:
                if rhs < 0:
                    lo, hi = math.inf, -math.inf
                continue
            if coef > 0:
                hi = min(hi, rhs / coef)
            else:
                lo = max(lo, rhs / coef)
        if hi - lo > tol:
            edges.append(VoronoiEdge(sites=(i, j), origin=tuple(m), direction=tuple(tau),
                                     interval=(lo, hi)))
    return VoronoiStructure(sites=tuple(map(tuple, s)), edges=tuple(edges),
                            triangles=tuple(triangles), vertices=tuple(vertices), tol=tol)


@dataclass(frozen=True)
class PlanePoint:
    point: tuple
    value: float
    index: int
    sites: tuple


@dataclass(frozen=True)
class PlaneCritical:
    minima: tuple
    saddles: tuple
    maxima: tuple
    degenerate: tuple = ()

    @property
    def all(self):
        return self.minima + self.saddles + self.maxima

    @property
    def euler(self):
        return len(self.minima) - len(self.saddles) + len(self.maxima)


def plane_critical(sites, tol=1e-9, vs=None):
    """Critical points of ``V`` in the plane, paired with their Delaunay cells."""
    vs = structure(sites, tol) if vs is None else vs
    s = np.asarray(vs.sites)
    minima = tuple(PlanePoint(tuple(p), 0.0, 0, (i,)) for i, p in enumerate(s))
    saddles, maxima, degenerate = [], [], []
    for e in vs.edges:
        i, j = e.sites
        m = np.asarray(e.origin)
        value = float(np.sum((s[i] - s[j]) ** 2) / 4.0)
        lo, hi = e.interval
        if lo + tol < 0.0 < hi - tol:
            saddles.append(PlanePoint(tuple(m), value, 1, (i, j)))
        elif lo - tol <= 0.0 <= hi + tol:
            degenerate.append(PlanePoint(tuple(m), value, 1, (i, j)))
    for tri, c in zip(vs.triangles, vs.vertices):
        c = np.asarray(c)
        a, b, d = s[list(tri)]
        # barycentric signs relative to the triangle orientation
        area = cross(b - a, d - a)
        w = np.array([cross(d - b, c - b), cross(a - d, c - d), cross(b - a, c - a)]) / area
        value = float(np.sum((c - a) ** 2))
        edge_len = max(np.linalg.norm(b - a), np.linalg.norm(d - b), np.linalg.norm(a - d))
        if np.all(w * edge_len > tol):
            maxima.append(PlanePoint(tuple(c), value, 2, tuple(tri)))
        elif np.all(w * edge_len > -tol):
            degenerate.append(PlanePoint(tuple(c), value, 2, tuple(tri)))
    return PlaneCritical(minima=minima, saddles=tuple(saddles), maxima=tuple(maxima),
                         degenerate=tuple(degenerate))


def cone_test(x, a_i, a_j, a_k, tol=1e-12):
    """True iff the ray ``x -> a_k`` lies strictly inside the cone of rays
    ``x -> a_i`` and ``x -> a_j``."""
    x, a_i, a_j, a_k = (np.asarray(v, dtype=float) for v in (x, a_i, a_j, a_k))
    u, v, w = a_i - x, a_j - x, a_k - x
    nu, nv, nw = (np.linalg.norm(t) for t in (u, v, w))
    if min(nu, nv, nw) == 0:
        raise DegenerateCone("cone apex coincides with a point")
    u, v, w = u / nu, v / nv, w / nw
    if abs(cross(u, v)) <= tol and u @ v < 0:
        raise DegenerateCone("the cone is a half-plane")
    c_uw, c_wv, c_uv = cross(u, w), cross(w, v), cross(u, v)
    if abs(c_uw) <= tol and u @ w > 0 or abs(c_wv) <= tol and w @ v > 0:
        raise DegenerateCone("the ray lies on the boundary of the cone")
    if abs(c_uv) <= tol:
        return False
    s = math.copysign(1.0, c_uv)
    return bool(s * c_uw > 0 and s * c_wv > 0)


# -- lifted analysis ----------------------------------------------------------

@dataclass(frozen=True)
class NonIsolatedPiece:
    """Arc or full circle of critical bodies for a leg aligned about its own site."""

    leg: int
    sign_vector: object
    radius: float
    kind: str  # "circle" or "arc"
    start: float
    end: float
    transversal_index: int
    endpoints: tuple = ()
    crossings: tuple = ()
    fiber_points: int = None

    def point(self, frac, center):
        t = self.start + frac * (wrap_angle(self.end - self.start) or 2 * math.pi)
        return np.asarray(center) + self.radius * np.array([math.cos(t), math.sin(t)])


@dataclass
class VoronoiCriticalReport:
    sites: tuple
    offsets: tuple
    isolated: list
    non_isolated: list
    limit_points: list
    cone_tests: list
    plane: PlaneCritical
    structure: VoronoiStructure
    morsification: dict = field(default_factory=dict)

    @property
    def contributions(self):
        """Counts of isolated critical points per index (pieces of a
        component counted separately)."""
        return morse.index_histogram(self.isolated, isolated_only=False)

    @property
    def fully_isolated(self):
        return not self.non_isolated and not self.limit_points

    def polynomial(self):
        if not self.fully_isolated:
            raise NonIsolatedRemaining(
                f"{len(self.non_isolated)} non-isolated pieces and {len(self.limit_points)} limit points remain")
        return morse.morse_bott_polynomial(self.isolated)

    def to_dict(self):
        out = {
            "sites": [list(map(float, s)) for s in self.sites],
            "offsets": [list(map(float, o)) for o in self.offsets],
            "isolated": [c.to_dict() for c in self.isolated],
            "contributions": {str(k): v for k, v in self.contributions.items()},
            "non_isolated": [
                {"leg": p.leg, "eps": list(p.sign_vector.eps), "radius": p.radius, "kind": p.kind,
                 "start": p.start, "end": p.end, "transversal_index": p.transversal_index,
                 "endpoints": [list(map(float, e)) for e in p.endpoints],
                 "crossings": [list(map(float, c)) for c in p.crossings],
                 "fiber_points": p.fiber_points}
                for p in self.non_isolated
            ],
            "limit_points": [{"x": list(map(float, x)), "leg": k, "edge": list(e)} for x, k, e in self.limit_points],
            "cone_tests": self.cone_tests,
            "morsification": self.morsification,
        }
        if self.fully_isolated:
            out["polynomial"] = list(self.polynomial().coefficients)
        return out


def _fiber_components(mech, x, skip):
    comp = morse.CriticalComponent(case="probe", x=tuple(x), factors=morse._closures(mech, x, skip))
    return comp.multiplicity


def _check_generic(mech, vs, plane, sites):
    rep = strong_genericity_report(mech)
    if rep.errors:
        raise NotVoronoiGeneric("strong", "mechanism is not strongly generic: " + ", ".join(rep.codes()))
    atol = mech.atol
    if plane.degenerate:
        raise NotVoronoiGeneric("degenerate-plane", "a planar critical point is degenerate")
    for pt in plane.all:
        x = np.asarray(pt.point)
        if not mech.in_workspace(x, slack=10 * atol):
            continue
        d = mech.distances(x)
        for i, c in mech.circles:
            if abs(d[i] - c.radius) < 10 * atol and not (c.degenerate and d[i] < 10 * atol):
                raise NotVoronoiGeneric("critical-on-circle", f"planar critical point {tuple(x)} lies on a circle of leg {i}")
    for v in vs.vertices:
        x = np.asarray(v)
        if not mech.in_workspace(x, slack=10 * atol):
            continue
        d = mech.distances(x)
        for i, c in mech.circles:
            if abs(d[i] - c.radius) < 10 * atol:
                raise NotVoronoiGeneric("vertex-on-circle", f"Voronoi vertex {tuple(x)} lies on a circle of leg {i}")
    for i, ci, j, cj, x in morse.two_aligned_points(mech):
        if vs.distance_to_diagram(x) < 10 * atol:
            raise NotVoronoiGeneric("two-aligned-on-voronoi", f"two-aligned point {tuple(x)} lies on the Voronoi diagram")


def _own_site(mech, sites, i):
    return np.linalg.norm(np.asarray(sites[i]) - mech.feet_array[i]) <= mech.atol


def spider_voronoi_critical(mech, sites=None, certified=True):
    """Critical set of the (possibly perturbed) Voronoi distance on the spider space."""
    f = mech.feet_array
    sites = f.copy() if sites is None else np.asarray(sites, dtype=float)
    atol = mech.atol
    try:
        vs = structure(sites, tol=atol)
    except FourCocircular as exc:
        raise NotVoronoiGeneric("4vc", str(exc)) from None
    plane = plane_critical(sites, atol, vs)
    if certified:
        _check_generic(mech, vs, plane, sites)

    isolated = []
    dropped = []

    # (1) planar critical points inside W and off the circles
    for pt in plane.all:
        x = np.asarray(pt.point)
        if mech.zone_margin(x) <= 10 * atol:
            continue
        d = mech.distances(x)
        at_foot = [i for i in range(mech.n) if d[i] <= atol]
        comp = morse.CriticalComponent(
            case=PLANE, x=tuple(x), index=pt.index, factors=morse._closures(mech, x, at_foot),
            circle_factor=bool(at_foot), value=pt.value, tags=(("m", "S", "M")[pt.index],),
        )
        if comp.multiplicity:
            isolated.append(comp)

    own = [_own_site(mech, sites, i) for i in range(mech.n)]
    pairs = list(morse.two_aligned_points(mech, dropped))
    non_isolated = []
    for i in range(mech.n):
        region = lambda x, i=i: vs.in_cell(i, x)
        legs = [j for j in range(mech.n) if not (own[i] and j == i)]
        # (2a) one aligned leg, squared distance to the cell's site
        for c in morse.one_aligned(mech, sites[i], legs=legs, dropped=dropped, region=region):
            isolated.append(replace(c, case=CELL_ONE, value=c.value, tags=(f"cell {i}",)))
        # (3) two aligned legs inside the cell
        cell_pairs = [p for p in pairs if not (own[i] and i in (p[0], p[2]))]
        for c in morse.two_aligned(mech, sites[i], dropped=dropped, region=region, pairs=cell_pairs):
            isolated.append(replace(c, case=CELL_TWO, tags=(f"cell {i}",)))
        if own[i]:
            non_isolated.extend(_own_arcs(mech, vs, i))

    # (2b) one aligned leg on a Voronoi edge
    cone_tests = []
    limit_points = []
    for e in vs.edges:
        i, j = e.sites
        for k, circ in mech.circles:
            if circ.degenerate:
                continue
            for x in _line_circle(e, f[k], circ.radius):
                if not e.contains(x, 10 * atol):
                    continue
                if mech.zone_margin(x, skip=(k,)) <= 10 * atol:
                    continue
                if (own[i] and k == i) or (own[j] and k == j):
                    limit_points.append((tuple(x), k, (i, j)))
                    continue
                entry, comps = _edge_point(mech, sites, x, i, j, k, circ)
                cone_tests.append(entry)
                isolated.extend(comps)

    isolated = [c for c in isolated if c.multiplicity]
    isolated.sort(key=morse.CriticalComponent.sort_key)
    offsets = tuple(tuple(map(float, s - a)) for s, a in zip(sites, f))
    return VoronoiCriticalReport(
        sites=tuple(map(tuple, sites)), offsets=offsets, isolated=isolated,
        non_isolated=non_isolated, limit_points=limit_points, cone_tests=cone_tests,
        plane=plane, structure=vs,
    )


def _line_circle(edge, center, r):
    o = np.asarray(edge.origin) - center
    d = np.asarray(edge.direction)
    b = float(o @ d)
    c = float(o @ o) - r * r
    disc = b * b - c
    if disc <= 0:
        return []
    h = math.sqrt(disc)
    return [np.asarray(edge.origin) + t * d for t in (-b - h, -b + h)]


def _edge_point(mech, sites, x, i, j, k, circ):
    """Criticality and index of a body on a Voronoi edge with leg ``k`` aligned.

    Along the circle the function is the lower envelope of the two cell
    potentials; it has a kink maximum iff their slopes have opposite signs.
    Across the circle it behaves like ``kappa`` times the leg's reach, where
    ``kappa > 0`` exactly when the ray from the body to the foot passes
    between the two sites.
    """
    f = mech.feet_array
    n = (x - f[k]) / np.linalg.norm(x - f[k])
    tau = np.array([-n[1], n[0]])
    si, sj = np.asarray(sites[i]), np.asarray(sites[j])
    slope_i, slope_j = float((x - si) @ tau), float((x - sj) @ tau)
    try:
        inside = cone_test(x, si, sj, f[k])
    except DegenerateCone:
        inside = None
    entry = {"x": list(map(float, x)), "edge": [i, j], "leg": k, "radius": circ.radius,
             "cone": inside, "critical": slope_i * slope_j < 0}
    if slope_i * slope_j >= 0:
        return entry, []
    if inside is None:
        raise NotVoronoiGeneric("cone", f"foot {k} seen from {tuple(x)} along a cone boundary")
    factors = morse._closures(mech, x, (k,))
    value = float(min(np.sum((x - si) ** 2), np.sum((x - sj) ** 2)))
    comps = []
    p = len(mech.legs[k])
    for sv in circ.sign_vectors:
        idx = 1 + (sv.pos - 1 if inside else p - sv.pos)
        comps.append(morse.CriticalComponent(
            case=EDGE_ONE, x=tuple(x), aligned=((k, sv),), index=idx, factors=factors,
            value=value, index_source="inferred", tags=(f"edge {i}-{j}",),
        ))
    entry["indices"] = [c.index for c in comps]
    return entry, comps


def _own_arcs(mech, vs, i):
    """Pieces of leg ``i``'s circles inside its own open cell and ``W``."""
    f = mech.feet_array
    atol = mech.atol
    s = np.asarray(vs.sites)
    pieces = []
    for k, circ in mech.circles:
        if k != i or circ.degenerate:
            continue
        r = circ.radius
        cuts = []
        for j, cj in mech.circles:
            if j == i or cj.degenerate:
                continue
            d = np.linalg.norm(f[j] - f[i])
            if abs(r - cj.radius) < d < r + cj.radius:
                a = (r * r - cj.radius ** 2 + d * d) / (2 * d)
                h = math.sqrt(max(r * r - a * a, 0.0))
                base = angle_of(f[j] - f[i])
                dt = math.atan2(h, a)
                cuts += [(wrap_angle(base + dt), "circle"), (wrap_angle(base - dt), "circle")]
        for m in range(len(s)):
            if m == i:
                continue
            # bisector of s_i, s_m: (x - mid) . (s_m - s_i) = 0 with x = a_i + r e(t)
            w = s[m] - s[i]
            mid = 0.5 * (s[m] + s[i])
            c0 = (f[i] - mid) @ w
            amp = r * np.linalg.norm(w)
            if amp > abs(c0):
                base = angle_of(w)
                dt = math.acos(-c0 / amp)
                cuts += [(wrap_angle(base + dt), "bisector"), (wrap_angle(base - dt), "bisector")]
        cuts.sort()

        def at(t):
            return f[i] + r * np.array([math.cos(t), math.sin(t)])

        def keep(t):
            x = at(t)
            return mech.zone_margin(x, skip=(i,)) > 10 * atol and vs.in_cell(i, x)

        if not cuts:
            if keep(0.0):
                for sv in circ.sign_vectors:
                    pieces.append(NonIsolatedPiece(
                        leg=i, sign_vector=sv, radius=r, kind="circle", start=0.0, end=2 * math.pi,
                        transversal_index=arm.aligned_index(mech.legs[i], sv, mech.tol),
                        fiber_points=_fiber_components(mech, at(0.0), (i,))))
            continue
        spans = []
        for idx, (t0, _) in enumerate(cuts):
            t1 = cuts[(idx + 1) % len(cuts)][0]
            sweep = wrap_angle(t1 - t0) or 2 * math.pi
            spans.append((t0, sweep, keep(t0 + 0.5 * sweep)))
        # merge runs of kept spans
        if all(k for _, _, k in spans):
            runs = [(spans[0][0], 2 * math.pi, [t for t, _ in cuts])]
            kind = "circle"
        else:
            first = next(n for n, sp in enumerate(spans) if not sp[2])
            order = spans[first + 1:] + spans[:first + 1]
            runs, cur = [], None
            for t0, sweep, kept in order:
                if kept:
                    if cur is None:
                        cur = [t0, sweep, []]
                    else:
                        cur[2].append(t0)
                        cur[1] += sweep
                elif cur is not None:
                    runs.append(tuple(cur))
                    cur = None
            if cur is not None:
                runs.append(tuple(cur))
            kind = "arc"
        for t0, sweep, inner in runs:
            ends = () if kind == "circle" else (tuple(at(t0)), tuple(at(t0 + sweep)))
            for sv in circ.sign_vectors:
                pieces.append(NonIsolatedPiece(
                    leg=i, sign_vector=sv, radius=r, kind=kind, start=float(t0),
                    end=float(t0 + sweep),
                    transversal_index=arm.aligned_index(mech.legs[i], sv, mech.tol),
                    endpoints=ends, crossings=tuple(tuple(at(t)) for t in inner),
                    fiber_points=_fiber_components(mech, at(t0 + 0.5 * sweep), (i,))))
    return pieces


# -- Morsification --------------------------------------------------------------

def default_eps(mech):
    f = mech.feet_array
    if mech.n < 2:
        return 1e-3 * mech.scale
    return 1e-3 * min(np.linalg.norm(f[a] - f[b]) for a, b in itertools.combinations(range(mech.n), 2))


def random_offsets(mech, rng, eps=None):
    eps = default_eps(mech) if eps is None else eps
    rng = np.random.default_rng(rng)
    ang = rng.uniform(0, 2 * np.pi, mech.n)
    return eps * np.column_stack([np.cos(ang), np.sin(ang)])


def _signature(c):
    return (c.case if c.case != PLANE else (PLANE, c.tags)), tuple((i, sv.eps) for i, sv in c.aligned), c.index, c.multiplicity


def _check_counterparts(base, pert, bound):
    """Every isolated unperturbed component must survive nearby with the same data."""
    pool = list(pert)
    for c in base.isolated:
        best = None
        for k, d in enumerate(pool):
            if _signature(d) != _signature(c):
                continue
            dist = np.linalg.norm(np.subtract(d.x, c.x))
            if best is None or dist < best[1]:
                best = (k, dist)
        if best is None or best[1] > bound:
            raise OffsetTooLarge(f"component {c.case} at {c.x} (index {c.index}) has no nearby counterpart")
        pool.pop(best[0])


def morsify(mech, offsets=None, seed=None, eps=None, max_tries=20):
    """Voronoi analysis with every site displaced off its foot.

    Explicit ``offsets`` are used as given; otherwise seeded random directions
    of length ``eps`` (default ``1e-3`` times the smallest feet distance) are
    drawn until no wall is crossed.
    """
    base = spider_voronoi_critical(mech)
    f = mech.feet_array
    eps = default_eps(mech) if eps is None else float(eps)
    dmin = max(default_eps(mech) * 1e3, 1e-300)
    rng = np.random.default_rng(mech.seed if seed is None else seed)
    tries = 1 if offsets is not None else max_tries
    last = None
    for attempt in range(tries):
        off = np.asarray(offsets, dtype=float) if offsets is not None else random_offsets(mech, rng, eps)
        size = float(np.max(np.linalg.norm(off, axis=1)))
        if np.any(np.linalg.norm(off, axis=1) <= mech.atol):
            raise NonIsolatedRemaining("every site must be displaced off its foot")
        bound = 100.0 * size * mech.scale / dmin
        try:
            pert = spider_voronoi_critical(mech, sites=f + off)
            base_plane = (len(base.plane.saddles), len(base.plane.maxima))
            if (len(pert.plane.saddles), len(pert.plane.maxima)) != base_plane \
                    or sorted(pert.structure.delaunay_edges) != sorted(base.structure.delaunay_edges):
                raise OffsetTooLarge("the Delaunay structure changed")
            _check_counterparts(base, pert.isolated, bound)
        except (OffsetTooLarge, NotVoronoiGeneric) as exc:
            last = exc
            continue
        if not pert.fully_isolated:
            raise NonIsolatedRemaining("non-isolated critical pieces remain after the perturbation")
        pert.morsification = {
            "offsets": [list(map(float, o)) for o in off],
            "eps": eps,
            "attempts": attempt + 1,
            "replaced_pieces": len(base.non_isolated),
            "replaced_limit_points": len(base.limit_points),
            "unperturbed_contributions": {str(k): v for k, v in base.contributions.items()},
            "note": "the perturbed polynomial may depend on the offsets",
        }
        return pert
    if isinstance(last, NotVoronoiGeneric):
        raise OffsetTooLarge(f"perturbed sites are not generic: {last}")
    raise last if last is not None else OffsetTooLarge("no admissible offsets")


def polynomial_euler(poly):
    return int(polynomial.evaluate(poly.coefficients, -1))
