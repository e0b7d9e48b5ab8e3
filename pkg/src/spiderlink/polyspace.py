"""Planar polygon spaces: genericity, Betti numbers and closures of legs.

Betti numbers come from counting short subsets: with ``m`` the index of a
longest side, ``a_k`` is the number of short subsets of size ``k + 1`` that
contain ``m`` and ``b_k = a_k + a_{p-3-k}``.  A subset ``J`` is short when its
total length is strictly less than that of its complement.
"""

from dataclasses import dataclass

import numpy as np

from . import polynomial
from .errors import EmptySpace, NonGeneric, TooManyEdges

MAX_EDGES = 24


@dataclass(frozen=True)
class PolygonSpaceDescriptor:
    lengths: tuple
    generic: bool
    empty: bool
    dim: int
    betti: tuple = None

    @property
    def poincare(self):
        return self.betti

    @property
    def euler(self):
        if self.empty:
            return 0
        if self.betti is None:
            return None
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    @property
    def components(self):
        return self.betti[0] if self.betti else 0


def _lengths(lengths):
    arr = np.asarray(lengths, dtype=float)
    if arr.ndim != 1 or arr.size < 3:
        raise ValueError("a polygon needs at least 3 sides")
    if np.any(arr <= 0):
        raise ValueError("polygon sides must be positive")
    if arr.size > MAX_EDGES:
        raise TooManyEdges(f"{arr.size} sides exceeds the cap of {MAX_EDGES}")
    return arr


def _subset_sums(arr):
    """Sums over all subsets, indexed by bitmask."""
    sums = np.zeros(1)
    for l in arr:
        sums = np.concatenate([sums, sums + l])
    return sums


def is_generic(lengths, tol=1e-9):
    """True iff no sign vector makes the signed sum of the sides vanish."""
    arr = _lengths(lengths)
    total = arr.sum()
    # eps with eps_0 = +1: 2 * (l_0 + sum over a subset of the rest) - total
    sums = arr[0] + _subset_sums(arr[1:])
    return bool(np.all(np.abs(2.0 * sums - total) > tol * total))


def is_empty(lengths, tol=1e-9):
    arr = _lengths(lengths)
    total = arr.sum()
    return bool(2.0 * arr.max() > total * (1.0 + tol))


def _short_counts(arr, m):
    rest = np.delete(arr, m)
    total = arr.sum()
    sums = arr[m] + _subset_sums(rest)
    sizes = np.zeros(1, dtype=int)
    for _ in rest:
        sizes = np.concatenate([sizes, sizes + 1])
    short = 2.0 * sums < total
    return np.bincount(sizes[short], minlength=arr.size)


def betti(lengths, tol=1e-9, check_choice=False):
    """Betti numbers ``b_0..b_{p-3}`` of a generic nonempty polygon space."""
    arr = _lengths(lengths)
    if is_empty(arr, tol):
        raise EmptySpace(f"no closed polygon with sides {tuple(arr)}")
    if not is_generic(arr, tol):
        raise NonGeneric(f"sides {tuple(arr)} admit an aligned configuration")
    d = arr.size - 3
    longest = np.flatnonzero(arr >= arr.max() * (1 - 1e-15))
    result = _betti_from_counts(_short_counts(arr, int(longest[0])), d)
    if check_choice and longest.size > 1:
        other = _betti_from_counts(_short_counts(arr, int(longest[-1])), d)
        assert other == result, "Betti numbers depend on the choice of longest side"
    return result


def _betti_from_counts(a, d):
    def at(k):
        return int(a[k]) if 0 <= k < len(a) else 0
    return tuple(at(k) + at(d - k) for k in range(d + 1))


def euler(lengths, tol=1e-9):
    return sum((-1) ** k * b for k, b in enumerate(betti(lengths, tol)))


def poincare(lengths, tol=1e-9):
    return polynomial.trim(betti(lengths, tol))


def describe(lengths, tol=1e-9):
    """Full descriptor of a polygon space; never raises for valid sides."""
    arr = _lengths(lengths)
    empty = is_empty(arr, tol)
    generic = is_generic(arr, tol)
    b = betti(arr, tol) if generic and not empty else None
    return PolygonSpaceDescriptor(
        lengths=tuple(float(l) for l in arr), generic=generic, empty=empty,
        dim=arr.size - 3, betti=b,
    )


def closure_descriptor(leg, closing_length, tol=1e-9):
    """Polygon space of a leg closed up by a bar of length ``closing_length``.

    A zero closing length describes the closed leg itself (the caller records
    the extra circle of rotations about the foot).
    """
    leg = tuple(float(l) for l in leg)
    total = sum(leg)
    if closing_length < 0:
        raise ValueError("closing length must be non-negative")
    if closing_length <= tol * total:
        if len(leg) >= 3:
            return describe(leg, tol)
        # a closed 2-edge leg exists only for equal edges and is then aligned
        equal = abs(leg[0] - leg[1]) <= tol * total
        return PolygonSpaceDescriptor(lengths=leg, generic=False, empty=not equal, dim=-1)
    return describe(leg + (float(closing_length),), tol)
