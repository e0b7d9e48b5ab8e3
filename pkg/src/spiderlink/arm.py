"""Single-leg (robot arm) analysis.

A leg with edge lengths ``l_1..l_p`` anchored at foot ``A`` can place its
endpoint ``X`` anywhere in an annulus (or disc) around ``A``.  Aligned
configurations, where every edge points along the line ``AX``, sit over
circles of radius ``|sum eps_j l_j|`` and are the isolated critical points of
``|a - x|^2`` on the arm's torus of configurations.

Sign vectors are always stored relative to the direction ``A -> X`` of the
alignment: ``+1`` means the edge points from ``A`` towards ``X``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAlignment, GenericityViolation

X_BETWEEN = "X-between"
Z_BETWEEN = "Z-between"
A_BETWEEN = "A-between"
BETWEENNESS = (X_BETWEEN, Z_BETWEEN, A_BETWEEN)


@dataclass(frozen=True, order=True)
class SignVector:
    eps: tuple

    def __post_init__(self):
        if any(e not in (-1, 1) for e in self.eps):
            raise ValueError(f"sign vector entries must be +-1, got {self.eps}")

    @property
    def pos(self):
        """Number of positively directed edges."""
        return sum(1 for e in self.eps if e == 1)

    def __len__(self):
        return len(self.eps)

    def negated(self):
        return SignVector(tuple(-e for e in self.eps))

    def signed_sum(self, leg):
        return float(np.dot(self.eps, leg))

    def __str__(self):
        return "".join("+" if e == 1 else "-" for e in self.eps)


@dataclass(frozen=True)
class CriticalCircle:
    """Circle about a foot over which the leg can align.

    ``sign_vectors`` lists every alignment class realizing the radius, each
    normalized to point along ``A -> X``.
    """

    radius: float
    sign_vectors: tuple
    foot: int = -1
    degenerate: bool = False


@dataclass(frozen=True)
class Zone:
    foot: int
    inner: float
    outer: float

    def contains(self, dist, slack=0.0):
        return self.inner - slack <= dist <= self.outer + slack


def _leg_array(leg):
    arr = np.asarray(leg, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a leg is a non-empty list of edge lengths")
    if np.any(arr <= 0):
        raise ValueError("edge lengths must be positive")
    return arr


def normalize(leg, eps, tol=1e-9):
    """Return ``eps`` oriented so that its signed sum is non-negative."""
    sv = eps if isinstance(eps, SignVector) else SignVector(tuple(int(e) for e in eps))
    if len(sv) != len(leg):
        raise ValueError("sign vector and leg have different lengths")
    s = sv.signed_sum(leg)
    if s < -tol * float(np.sum(leg)):
        return sv.negated()
    return sv


def critical_radii(leg, tol=1e-9, foot=-1):
    """All critical circles of a leg, sorted by radius.

    Enumerates the ``2**p`` sign vectors, identifies ``eps ~ -eps`` and groups
    equal radii (within ``tol`` relative to the total length).
    """
    arr = _leg_array(leg)
    total = float(arr.sum())
    band = tol * total
    classes = []
    for eps in itertools.product((1, -1), repeat=arr.size):
        s = float(np.dot(eps, arr))
        if s < -band:
            continue
        if abs(s) <= band and eps[0] != 1:
            continue
        classes.append((abs(s), SignVector(eps)))
    classes.sort(key=lambda c: (c[0], c[1].eps))

    circles = []
    group = []
    for r, sv in classes:
        if group and r - group[0][0] > band:
            circles.append(_make_circle(group, band, foot))
            group = []
        group.append((r, sv))
    if group:
        circles.append(_make_circle(group, band, foot))
    return circles


def _make_circle(group, band, foot):
    radius = float(np.mean([r for r, _ in group]))
    svs = tuple(sorted((sv for _, sv in group), key=lambda s: tuple(-e for e in s.eps)))
    return CriticalCircle(radius=radius, sign_vectors=svs, foot=foot, degenerate=radius <= band)


def zone(leg, foot=-1):
    arr = _leg_array(leg)
    total = float(arr.sum())
    inner = max(2.0 * float(arr.max()) - total, 0.0)
    return Zone(foot=foot, inner=inner, outer=total)


def aligned_index(leg, eps, tol=1e-9):
    """Morse index ``Pos - 1`` of ``|a - x|^2`` at an aligned configuration.

    Measured on the torus of configurations with the first bar fixed.
    """
    arr = _leg_array(leg)
    sv = normalize(arr, eps, tol)
    if abs(sv.signed_sum(arr)) <= tol * float(arr.sum()):
        raise DegenerateAlignment("aligned configuration closes up on the foot (radius 0)")
    return sv.pos - 1


def one_leg_index(leg, eps, betweenness, tol=1e-9):
    """Morse index of ``|x - z|^2`` at an aligned one-leg configuration.

    The configuration space includes the rotation about the foot, so the
    index ranges over ``0..p``.  ``betweenness`` says which of the collinear
    points ``A, X, Z`` lies in the middle.
    """
    arr = _leg_array(leg)
    sv = normalize(arr, eps, tol)
    if abs(sv.signed_sum(arr)) <= tol * float(arr.sum()):
        raise GenericityViolation("aligned configuration has X on the foot")
    p = arr.size
    if betweenness == X_BETWEEN:
        return p - sv.pos
    if betweenness == Z_BETWEEN:
        return sv.pos - 1
    if betweenness == A_BETWEEN:
        return sv.pos
    raise ValueError(f"unknown betweenness {betweenness!r}")


def classify_betweenness(a, x, z, tol):
    """Which of the collinear points ``a, x, z`` lies between the other two.

    ``tol`` is an absolute distance; coincident points raise
    :class:`GenericityViolation`.
    """
    a, x, z = (np.asarray(v, dtype=float) for v in (a, x, z))
    if (np.linalg.norm(x - a) < tol or np.linalg.norm(z - a) < tol
            or np.linalg.norm(x - z) < tol):
        raise GenericityViolation("two of A, X, Z coincide")
    u = (z - a) / np.linalg.norm(z - a)
    t = float(np.dot(x - a, u))
    d = float(np.linalg.norm(z - a))
    if t < 0:
        return A_BETWEEN
    return X_BETWEEN if t < d else Z_BETWEEN
