"""Weighted Hooke energy ``H_w(x) = sum w_i |x - a_i|^2``.

Expanding the squares gives ``H_w(x) = s |x - z_w|^2 + kappa`` with
``s = sum w_i`` and ``z_w`` the weighted centroid, so the critical theory of
``H_w`` on the spider space is that of the squared distance to ``z_w``.  With
``s < 0`` the energy is a negative multiple of it and indices flip.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import morse
from .errors import InputError, ZeroTotalWeight


@dataclass(frozen=True)
class HookeReduction:
    weights: tuple
    centroid: tuple
    scale: float
    offset: float

    def energy(self, x):
        """``s |x - z_w|^2 + kappa`` evaluated at ``x`` (rows of points allowed)."""
        d = np.asarray(x, dtype=float) - np.asarray(self.centroid)
        return self.scale * np.sum(d * d, axis=-1) + self.offset


def energy(feet, weights, x):
    """Direct evaluation of ``sum w_i |x - a_i|^2``."""
    feet = np.asarray(feet, dtype=float)
    x = np.asarray(x, dtype=float)
    d = x[..., None, :] - feet
    return np.sum(np.asarray(weights) * np.sum(d * d, axis=-1), axis=-1)


def reduce(feet, weights, tol=1e-12):
    feet = np.asarray(feet, dtype=float)
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(feet),):
        raise InputError(f"{w.size} weights for {len(feet)} feet")
    s = float(w.sum())
    if abs(s) <= tol * max(float(np.abs(w).sum()), 1.0):
        raise ZeroTotalWeight("total weight vanishes; the energy is affine in x")
    z = (w @ feet) / s
    kappa = float(w @ np.sum(feet * feet, axis=1) - s * (z @ z))
    return HookeReduction(weights=tuple(map(float, w)), centroid=tuple(map(float, z)),
                          scale=s, offset=kappa)


def hooke_critical(mech, weights, certified=False):
    """Critical components of the Hooke energy, via the weighted centroid."""
    red = reduce(mech.feet_array, weights)
    comps = morse.enumerate_critical(mech, red.centroid, certified=certified)
    if red.scale < 0:
        comps = [morse.dualize(c, mech.dim) for c in comps]
    return [replace(c, value=float(red.energy(c.x))) for c in comps]
