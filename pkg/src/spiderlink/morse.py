"""Critical components of the squared distance ``|X - z|^2`` on a spider space.

Critical configurations come in three kinds: the body sits at ``z`` (no leg
needs to be aligned), exactly one leg is aligned along the line through its
foot and ``z``, or two legs are aligned and the body sits at an intersection
of their critical circles.  Each kind is a product of polygon spaces (the
closures of the non-aligned legs), and the function is Morse-Bott along it.
"""

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from . import arm, polynomial, polyspace
from .errors import GenericityViolation, MissingBetti
from .mechanism import strong_genericity_report

BODY_AT_Z = "BodyAtZ"
ONE_ALIGNED = "OneAligned"
TWO_ALIGNED = "TwoAligned"
CASE_ORDER = {BODY_AT_Z: 0, ONE_ALIGNED: 1, TWO_ALIGNED: 2}


@dataclass(frozen=True)
class CriticalComponent:
    """One connected family of critical points sharing location and alignment.

    ``factors`` are the closures of the legs that are free to move; the
    component is their product (times a circle when ``circle_factor``).
    When that product is disconnected the component bundles its pieces; use
    :attr:`multiplicity` for the number of connected pieces.
    """

    case: str
    x: tuple
    aligned: tuple = ()  # ((leg, SignVector), ...)
    index: int = None
    factors: tuple = ()
    circle_factor: bool = False
    value: float = 0.0
    betweenness: str = None
    index_source: str = "theorem"
    tags: tuple = ()

    @property
    def dim(self):
        return sum(f.dim for f in self.factors) + (1 if self.circle_factor else 0)

    @property
    def poincare(self):
        polys = []
        for f in self.factors:
            if not f.generic or f.empty or f.betti is None:
                return None
            polys.append(f.betti)
        if self.circle_factor:
            polys.append((1, 1))
        return polynomial.product(polys)

    @property
    def euler(self):
        p = self.poincare
        return None if p is None else polynomial.evaluate(p, -1)

    @property
    def multiplicity(self):
        p = self.poincare
        return None if p is None else p[0]

    @property
    def isolated(self):
        return self.dim == 0

    @property
    def aligned_legs(self):
        return tuple(i for i, _ in self.aligned)

    def key(self, digits=9):
        return (
            self.case,
            tuple((i, sv.eps) for i, sv in self.aligned),
            tuple(round(float(c), digits) for c in self.x),
        )

    def sort_key(self):
        return (CASE_ORDER.get(self.case, 9), self.case, self.key())

    def to_dict(self):
        return {
            "case": self.case,
            "x": [float(c) for c in self.x],
            "aligned": [{"leg": i, "eps": list(sv.eps)} for i, sv in self.aligned],
            "index": self.index,
            "index_source": self.index_source,
            "value": float(self.value),
            "dim": self.dim,
            "poincare": list(self.poincare) if self.poincare is not None else None,
            "multiplicity": self.multiplicity,
            "factors": [list(f.lengths) for f in self.factors],
            "circle_factor": self.circle_factor,
            "tags": list(self.tags),
        }


@dataclass(frozen=True)
class MorseBottPolynomial:
    coefficients: tuple

    def __call__(self, t):
        return polynomial.evaluate(self.coefficients, t)

    def __str__(self):
        return polynomial.to_str(self.coefficients)

    def padded(self, n):
        c = list(self.coefficients)
        return tuple(c + [0] * (n - len(c)))


@dataclass
class Enumeration:
    """Components together with the genericity report and dropped candidates."""

    components: list
    report: object
    dropped: list = field(default_factory=list)


def _closures(mech, x, skip):
    d = mech.distances(x)
    return tuple(
        polyspace.closure_descriptor(mech.legs[j], float(d[j]), mech.tol)
        for j in range(mech.n) if j not in skip
    )


def _strictly_inside(mech, x, skip, dropped, what):
    margin = mech.zone_margin(x, skip=skip)
    if margin > 10 * mech.atol:
        return True
    if margin > -10 * mech.atol:
        dropped.append((what, tuple(map(float, x)), "touches a zone boundary"))
    return False


def body_at_z(mech, z, dropped=None):
    """Case 1: the minimum manifold over ``z`` when ``z`` lies inside ``W``."""
    dropped = [] if dropped is None else dropped
    z = np.asarray(z, dtype=float)
    if not _strictly_inside(mech, z, (), dropped, BODY_AT_Z):
        return []
    d = mech.distances(z)
    at_foot = [i for i in range(mech.n) if d[i] <= mech.atol]
    comp = CriticalComponent(
        case=BODY_AT_Z, x=tuple(z), index=0, factors=_closures(mech, z, at_foot),
        circle_factor=bool(at_foot), value=0.0,
    )
    return [comp]


def one_aligned(mech, z, legs=None, dropped=None, region=None):
    """Case 2: one leg aligned on the line through its foot and ``z``.

    ``region`` optionally filters candidate body positions (used by the
    Voronoi analysis to restrict to a power cell).
    """
    dropped = [] if dropped is None else dropped
    z = np.asarray(z, dtype=float)
    f = mech.feet_array
    out = []
    for i, circ in mech.circles:
        if legs is not None and i not in legs:
            continue
        if circ.degenerate:
            continue
        dz = z - f[i]
        nz = np.linalg.norm(dz)
        if nz <= mech.atol:
            continue
        u = dz / nz
        for sgn in (1.0, -1.0):
            x = f[i] + sgn * circ.radius * u
            if np.linalg.norm(x - z) <= mech.atol:
                dropped.append((ONE_ALIGNED, tuple(x), "body coincides with z"))
                continue
            if not _strictly_inside(mech, x, (i,), dropped, ONE_ALIGNED):
                continue
            if region is not None and not region(x):
                continue
            where = arm.classify_betweenness(f[i], x, z, mech.atol)
            factors = _closures(mech, x, (i,))
            for sv in circ.sign_vectors:
                idx = arm.one_leg_index(mech.legs[i], sv, where, mech.tol)
                out.append(CriticalComponent(
                    case=ONE_ALIGNED, x=tuple(x), aligned=((i, sv),), index=idx,
                    factors=factors, value=float(np.dot(x - z, x - z)), betweenness=where,
                ))
    return out


def two_aligned_coefficients(a_i, a_j, x, z):
    """Coefficients of ``x - z`` in the basis of unit vectors ``a_k -> x``."""
    e = np.column_stack([(x - a_i) / np.linalg.norm(x - a_i), (x - a_j) / np.linalg.norm(x - a_j)])
    return np.linalg.solve(e, x - z)


def two_aligned_index(legs, svs, coeffs):
    """Index at a two-aligned point: each aligned leg adds ``Pos - 1`` when the
    function grows with that leg's reach, and ``p - Pos`` when it shrinks."""
    mu = 0
    for leg, sv, c in zip(legs, svs, coeffs):
        mu += sv.pos - 1 if c > 0 else len(leg) - sv.pos
    return mu


def two_aligned_points(mech, dropped=None):
    """All intersections of critical circles of two legs strictly inside ``W``.

    Yields ``(i, ci, j, cj, x)``; independent of the potential.
    """
    dropped = [] if dropped is None else dropped
    from .geometry import circle_intersections

    f = mech.feet_array
    nondeg = [(i, c) for i, c in mech.circles if not c.degenerate]
    for (i, ci), (j, cj) in itertools.combinations(nondeg, 2):
        if i == j:
            continue
        for x in circle_intersections(f[i], ci.radius, f[j], cj.radius):
            x = np.asarray(x)
            if _strictly_inside(mech, x, (i, j), dropped, TWO_ALIGNED):
                yield i, ci, j, cj, x


def two_aligned(mech, z, dropped=None, region=None, pairs=None):
    """Case 3: two legs aligned, body at an intersection of their circles."""
    dropped = [] if dropped is None else dropped
    z = np.asarray(z, dtype=float)
    f = mech.feet_array
    out = []
    for i, ci, j, cj, x in (two_aligned_points(mech, dropped) if pairs is None else pairs):
        if region is not None and not region(x):
            continue
        c = two_aligned_coefficients(f[i], f[j], x, z)
        factors = _closures(mech, x, (i, j))
        for si, sj in itertools.product(ci.sign_vectors, cj.sign_vectors):
            idx = two_aligned_index((mech.legs[i], mech.legs[j]), (si, sj), c)
            out.append(CriticalComponent(
                case=TWO_ALIGNED, x=tuple(x), aligned=((i, si), (j, sj)), index=idx,
                factors=factors, value=float(np.dot(x - z, x - z)),
            ))
    return out


def analyze(mech, z, certified=False):
    """Enumerate all critical components of ``|X - z|^2`` with diagnostics.

    In ``certified`` mode any genericity error raises
    :class:`GenericityViolation`; otherwise the result carries the report and
    should be read as best effort.
    """
    z = np.asarray(z, dtype=float)
    report = strong_genericity_report(mech, z)
    if certified and report.errors:
        raise GenericityViolation(
            "mechanism and z are not strongly generic: " + ", ".join(report.codes()), report)
    dropped = []
    comps = body_at_z(mech, z, dropped) + one_aligned(mech, z, dropped=dropped) + two_aligned(mech, z, dropped)
    comps.sort(key=CriticalComponent.sort_key)
    return Enumeration(components=comps, report=report, dropped=dropped)


def enumerate_critical(mech, z, certified=False):
    return analyze(mech, z, certified).components


def morse_bott_polynomial(components):
    """``sum P_Sigma(t) t^index`` over the components."""
    total = (0,)
    for c in components:
        p = c.poincare
        if p is None:
            raise MissingBetti(f"component at {c.x} has a non-generic factor")
        if c.index is None:
            raise MissingBetti(f"component at {c.x} has no index")
        total = polynomial.add(total, polynomial.shift(p, c.index))
    return MorseBottPolynomial(polynomial.trim(total))


def euler_from_morse(poly):
    coeffs = poly.coefficients if isinstance(poly, MorseBottPolynomial) else tuple(poly)
    return int(polynomial.evaluate(coeffs, -1))


def index_histogram(components, isolated_only=True):
    """Number of critical points per index, counting the pieces of each component."""
    hist = {}
    for c in components:
        if isolated_only and not c.isolated:
            continue
        hist[c.index] = hist.get(c.index, 0) + (c.multiplicity or 0)
    return dict(sorted(hist.items()))


def dualize(component, dim_s):
    """Index of the same component for the negated function."""
    return replace(component, index=dim_s - component.dim - component.index)


@dataclass(frozen=True)
class BettiBounds:
    bounds: tuple
    polynomials: tuple
    perfect: bool = False


def betti_bounds(mech, zs, reference=None):
    """Coefficientwise minimum of Morse-Bott polynomials over several ``z``.

    ``reference`` (known Betti numbers) lets the result flag a perfect
    function, one whose polynomial equals the Poincare polynomial.
    """
    polys = []
    for z in zs:
        polys.append(morse_bott_polynomial(enumerate_critical(mech, z)))
    if not polys:
        raise ValueError("at least one z is required")
    n = mech.dim + 1
    mats = np.array([p.padded(n) for p in polys])
    bounds = polynomial.trim(tuple(int(v) for v in mats.min(axis=0)))
    perfect = False
    if reference is not None:
        ref = polynomial.trim(tuple(reference))
        perfect = any(p.coefficients == ref for p in polys)
    return BettiBounds(bounds=bounds, polynomials=tuple(polys), perfect=perfect)


def certified_dim(components):
    """Largest ``index + dim`` over the components (must not exceed ``dim S``)."""
    return max((c.index + c.dim for c in components), default=0)
