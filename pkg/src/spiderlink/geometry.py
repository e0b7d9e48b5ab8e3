"""Small planar geometry helpers shared by the analysis modules."""

import math

import numpy as np


def as_point(p):
    return np.asarray(p, dtype=float).reshape(2)


def circle_intersections(c1, r1, c2, r2):
    """Intersection points of two circles, ordered left-of-(c1->c2) first.

    Returns an empty list for disjoint, nested or concentric circles. A
    tangency returns the single touching point twice so callers can see the
    degeneracy.
    """
    c1 = as_point(c1)
    c2 = as_point(c2)
    d_vec = c2 - c1
    d = math.hypot(*d_vec)
    if d == 0.0:
        return []
    if d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h2 = r1 * r1 - a * a
    h = math.sqrt(max(h2, 0.0))
    u = d_vec / d
    base = c1 + a * u
    perp = np.array([-u[1], u[0]])
    return [base + h * perp, base - h * perp]


def tangency_gap(c1, r1, c2, r2):
    """Signed distance from tangency for a pair of circles (0 means tangent)."""
    d = float(np.linalg.norm(as_point(c2) - as_point(c1)))
    return min(abs(d - (r1 + r2)), abs(d - abs(r1 - r2)))


def distance_to_line(p, a, b):
    """Distance from ``p`` to the infinite line through ``a`` and ``b``."""
    p, a, b = as_point(p), as_point(a), as_point(b)
    d = b - a
    n = np.linalg.norm(d)
    if n == 0.0:
        return float(np.linalg.norm(p - a))
    return abs(d[0] * (p - a)[1] - d[1] * (p - a)[0]) / n


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def unit(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ZeroDivisionError("zero vector has no direction")
    return v / n


def angle_of(v):
    return math.atan2(v[1], v[0])


def wrap_angle(t):
    """Map an angle into [0, 2*pi)."""
    t = math.fmod(t, 2.0 * math.pi)
    return t + 2.0 * math.pi if t < 0 else t


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])
