"""Reproducible example mechanisms.

None of the classical examples come with numbers, so each builder either
constructs the geometry directly (two-leg lens) or runs a seeded search over
a family and returns the first instance with the required structure.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import voronoi, workspace
from .errors import SpiderError
from .mechanism import strong_genericity_report, validate


def equilateral_feet(circumradius=1.0):
    angles = np.deg2rad([90.0, 210.0, 330.0])
    return circumradius * np.column_stack([np.cos(angles), np.sin(angles)])


@dataclass(frozen=True)
class Instance:
    mechanism: object
    z: tuple = None
    note: str = ""
    trials: int = 0


# -- tripod with a hexagonal work space ----------------------------------------

def is_hexagonal_tripod(mech, z):
    ws = workspace.build(mech)
    if len(ws.faces) != 1 or ws.faces[0].chi != 1 or ws.punctures:
        return False
    if len(ws.arcs) != 6 or len(ws.vertices) != 6 or any(a.full for a in ws.arcs):
        return False
    return strong_genericity_report(mech, z).certified


def hexagonal_tripod(seed=0, max_trials=2000):
    """Equilateral tripod, common 2-edge legs, ``z`` at the center.

    The work space is the intersection of three equal annuli; the search
    keeps the first leg pair for which it is a single hexagonal face bounded
    by three inner and three outer arcs.
    """
    rng = np.random.default_rng(seed)
    feet = equilateral_feet()
    z = (0.0, 0.0)
    for trial in range(1, max_trials + 1):
        inner = rng.uniform(0.3, 1.0)  # the center must lie in every annulus
        outer = rng.uniform(1.0, 2.5)
        legs = [(0.5 * (outer + inner), 0.5 * (outer - inner))] * 3
        mech = validate({"feet": feet.tolist(), "legs": legs, "seed": seed})
        if is_hexagonal_tripod(mech, z):
            return Instance(mech, z, "hexagonal tripod", trial)
    raise SpiderError("no hexagonal tripod found")


# -- two legs whose work space is a lens --------------------------------------------

def lens(p1, p2, seed=0, overlap=0.5, short_edge=None):
    """Two legs of nearly unit edges whose maximal circles overlap in a lens.

    The overlap is below twice the shortest edge, so no other critical
    circle reaches the lens.  With ``short_edge`` the last edge of leg 1 is
    replaced by a short one, whose circle ``R_1 - 2 s`` then crosses the lens.
    """
    rng = np.random.default_rng(seed)
    l1 = list(1.0 + rng.uniform(-0.05, 0.05, p1))
    l2 = list(1.0 + rng.uniform(-0.05, 0.05, p2))
    if short_edge is not None:
        if not 0 < short_edge < overlap / 2:
            raise ValueError("the short edge must be below half the overlap")
        l1[-1] = short_edge
    d = sum(l1) + sum(l2) - overlap
    return validate({"feet": [[0.0, 0.0], [d, 0.0]], "legs": [l1, l2], "seed": seed})


def lens_interior_z(mech, seed=0):
    """A point of the lens near its center, slightly off the axis."""
    rng = np.random.default_rng(seed)
    d = mech.feet_array[1, 0]
    lo, hi = d - mech.zones[1].outer, mech.zones[0].outer
    for _ in range(1000):
        z = (0.5 * (lo + hi) + rng.uniform(-0.1, 0.1) * (hi - lo), rng.uniform(0.02, 0.1) * (hi - lo))
        if mech.in_workspace(z, slack=0.0) and strong_genericity_report(mech, z).certified:
            return z
    raise SpiderError("no generic interior point")


def lens_exterior_z(mech, height=10.0):
    """A point far above the lens, off its symmetry axis."""
    d = mech.feet_array[1, 0]
    x = 0.5 * (d + mech.zones[0].outer - mech.zones[1].outer) + 0.013 * d
    return (x, height * max(mech.zones[0].outer, mech.zones[1].outer))


# -- Voronoi tripod ---------------------------------------------------------------

VORONOI_TARGET = {0: 4, 1: 36, 2: 22}


def is_voronoi_tripod(mech):
    try:
        rep = voronoi.spider_voronoi_critical(mech)
    except SpiderError:
        return None
    if rep.contributions != VORONOI_TARGET or rep.limit_points:
        return None
    kinds = [p.kind for p in rep.non_isolated]
    if sorted(kinds) != ["arc", "circle"]:
        return None
    legs = {p.leg for p in rep.non_isolated}
    if len(legs) != 2:
        return None
    # a line through the arc's foot must be able to miss it
    if any(p.kind == "arc" and p.end - p.start > 0.9 * math.pi for p in rep.non_isolated):
        return None
    if len(rep.plane.saddles) != 3 or len(rep.plane.maxima) != 1:
        return None
    return rep


def voronoi_tripod(seed=0, max_trials=20000):
    """Tripod with 2-edge legs whose unperturbed Voronoi analysis has isolated
    contributions ``4 + 36 t + 22 t^2``, one critical circle and one critical
    arc shorter than a half circle (on different legs), found by seeded search around an equilateral
    triangle of feet."""
    rng = np.random.default_rng(seed)
    base = equilateral_feet()
    for trial in range(1, max_trials + 1):
        feet = base + rng.normal(0.0, 0.12, base.shape)
        legs = []
        for _ in range(3):
            inner = rng.uniform(0.05, 0.9)
            outer = rng.uniform(1.2, 2.6)
            legs.append((0.5 * (outer + inner), 0.5 * (outer - inner)))
        try:
            mech = validate({"feet": feet.tolist(), "legs": legs, "seed": seed})
        except SpiderError:
            continue
        rep = is_voronoi_tripod(mech)
        if rep is not None:
            return Instance(mech, None, "Voronoi tripod", trial)
    raise SpiderError("no Voronoi tripod found")


def voronoi_offsets(mech, pattern="crossing", eps=None):
    """Site offsets for two replacement patterns of the critical arc.

    ``"crossing"`` moves the arc's site toward the middle of the arc, so the line
    through foot and site crosses the arc and the arc is replaced by a
    minimum and its two corners.  ``"missing"`` moves it along a line
    missing the arc in both directions, so only the corners remain.  The
    circle's site moves in a fixed direction and every other site moves
    perpendicular to its nearest neighbour.
    """
    rep = voronoi.spider_voronoi_critical(mech)
    f = mech.feet_array
    eps = voronoi.default_eps(mech) if eps is None else eps
    circle = next(p for p in rep.non_isolated if p.kind == "circle")
    arc = next(p for p in rep.non_isolated if p.kind == "arc")
    off = np.zeros_like(f)
    for i in range(mech.n):
        j = min((j for j in range(mech.n) if j != i), key=lambda j: np.linalg.norm(f[j] - f[i]))
        d = f[j] - f[i]
        off[i] = eps * np.array([-d[1], d[0]]) / np.linalg.norm(d)
    off[circle.leg] = eps * np.array([math.cos(0.7), math.sin(0.7)])
    if pattern == "crossing":
        theta = 0.5 * (arc.start + arc.end)
    elif pattern == "missing":
        theta = _missing_direction(arc)
    else:
        raise ValueError(f"unknown pattern {pattern!r}")
    off[arc.leg] = eps * np.array([math.cos(theta), math.sin(theta)])
    return off


def _missing_direction(arc):
    """Direction whose line through the arc's center avoids the arc."""
    span = arc.end - arc.start
    if span >= math.pi:
        raise SpiderError("the arc is too long for a line to miss it")
    # the arc and its antipodal copy cover 2*span of the circle; aim at the gap
    return arc.end + 0.5 * (math.pi - span)
