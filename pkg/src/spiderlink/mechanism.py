"""Spider mechanisms: validation, documents and genericity checks."""

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import arm
from .errors import DuplicateFeet, InputError, LegTooShort, NonpositiveLength, SamplingExhausted
from .geometry import circle_intersections, distance_to_line, tangency_gap

DEFAULT_TOL = 1e-9
DOCUMENT_FIELDS = ("feet", "legs", "z", "weights", "tol", "seed")

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class SpiderMechanism:
    """Fixed feet joined to a common body by articulated legs.

    ``tol`` is relative: absolute predicates use ``tol * scale`` where
    ``scale`` is the diameter of the zones' bounding box.
    """

    feet: tuple
    legs: tuple
    tol: float = DEFAULT_TOL
    seed: int = 0

    @property
    def n(self):
        return len(self.feet)

    @property
    def p(self):
        return tuple(len(leg) for leg in self.legs)

    @property
    def dim(self):
        return 2 - 2 * self.n + sum(self.p)

    @cached_property
    def feet_array(self):
        return np.array(self.feet, dtype=float)

    @cached_property
    def zones(self):
        return tuple(arm.zone(leg, foot=i) for i, leg in enumerate(self.legs))

    @cached_property
    def circles(self):
        """Critical circles of every leg, as ``(leg index, CriticalCircle)``."""
        return tuple(
            (i, c)
            for i, leg in enumerate(self.legs)
            for c in arm.critical_radii(leg, self.tol, foot=i)
        )

    @cached_property
    def scale(self):
        f = self.feet_array
        reach = np.array([z.outer for z in self.zones])
        lo = (f - reach[:, None]).min(axis=0)
        hi = (f + reach[:, None]).max(axis=0)
        return float(np.linalg.norm(hi - lo))

    @property
    def atol(self):
        return self.tol * self.scale

    def distances(self, x):
        x = np.asarray(x, dtype=float)
        return np.linalg.norm(self.feet_array - x, axis=1)

    def in_workspace(self, x, slack=None, skip=()):
        """Closed membership ``x in W``; legs in ``skip`` are ignored."""
        slack = self.atol if slack is None else slack
        d = self.distances(x)
        return all(
            z.inner - slack <= d[i] <= z.outer + slack
            for i, z in enumerate(self.zones) if i not in skip
        )

    def zone_margin(self, x, skip=()):
        """Smallest signed distance from ``x`` to a zone boundary (positive inside)."""
        d = self.distances(x)
        margins = [
            min(d[i] - z.inner if z.inner > 0 else math.inf, z.outer - d[i])
            for i, z in enumerate(self.zones) if i not in skip
        ]
        return min(margins) if margins else math.inf

    def to_document(self):
        return {
            "feet": [list(map(float, a)) for a in self.feet],
            "legs": [list(map(float, leg)) for leg in self.legs],
            "tol": self.tol,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Configuration:
    """A point of the spider space: body and joint positions of every leg."""

    body: tuple
    joints: tuple

    def chain(self, mech, i):
        """Full vertex list ``A_i, A_i^1, ..., X`` of leg ``i``."""
        return np.vstack([mech.feet_array[i], np.reshape(self.joints[i], (-1, 2)), self.body])

    def residual(self, mech):
        res = []
        for i, leg in enumerate(mech.legs):
            pts = self.chain(mech, i)
            res.extend(np.linalg.norm(np.diff(pts, axis=0), axis=1) - np.asarray(leg))
        return np.asarray(res)


@dataclass(frozen=True)
class Document:
    mechanism: SpiderMechanism
    z: tuple = None
    weights: tuple = None


def validate(raw):
    """Build a :class:`SpiderMechanism` from parsed numbers.

    ``raw`` is a mapping with ``feet``, ``legs`` and optional ``tol``/``seed``.
    """
    try:
        feet = tuple(tuple(float(c) for c in a) for a in raw["feet"])
        legs = tuple(tuple(float(l) for l in leg) for leg in raw["legs"])
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad numeric input: {exc}") from None
    tol = float(raw.get("tol", DEFAULT_TOL) if raw.get("tol") is not None else DEFAULT_TOL)
    seed = int(raw.get("seed", 0) if raw.get("seed") is not None else 0)

    if not feet:
        raise InputError("a spider needs at least one foot")
    if any(len(a) != 2 for a in feet):
        raise InputError("feet must be 2D points")
    if len(legs) != len(feet):
        raise InputError(f"{len(feet)} feet but {len(legs)} legs")
    if not all(math.isfinite(c) for a in feet for c in a):
        raise InputError("feet coordinates must be finite")
    for i, leg in enumerate(legs):
        if len(leg) < 2:
            raise LegTooShort(f"leg {i} has {len(leg)} edge(s); at least 2 are required")
        if any(not (l > 0) or not math.isfinite(l) for l in leg):
            raise NonpositiveLength(f"leg {i} has a non-positive length: {leg}")
    if tol <= 0:
        raise InputError("tol must be positive")

    mech = SpiderMechanism(feet=feet, legs=legs, tol=tol, seed=seed)
    f = mech.feet_array
    for i, j in itertools.combinations(range(mech.n), 2):
        if np.linalg.norm(f[i] - f[j]) <= mech.atol:
            raise DuplicateFeet(f"feet {i} and {j} coincide at {feet[i]}")
    return mech


def parse_document(doc):
    """Validate a full input document (mechanism plus optional ``z``/``weights``)."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    unknown = sorted(set(doc) - set(DOCUMENT_FIELDS))
    if unknown:
        raise InputError(f"unknown field(s): {', '.join(unknown)}")
    mech = validate(doc)
    z = doc.get("z")
    if z is not None:
        try:
            z = tuple(float(c) for c in z)
        except (TypeError, ValueError):
            raise InputError("z must be a pair of numbers") from None
        if len(z) != 2:
            raise InputError("z must be a 2D point")
    w = doc.get("weights")
    if w is not None:
        try:
            w = tuple(float(c) for c in w)
        except (TypeError, ValueError):
            raise InputError("weights must be numbers") from None
        if len(w) != mech.n:
            raise InputError(f"{len(w)} weights for {mech.n} feet")
    return Document(mechanism=mech, z=z, weights=w)


def load_document(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
    return parse_document(doc)


def serialize(mech):
    return json.dumps(mech.to_document(), sort_keys=True)


def random_mechanism(rng, n, p, box=((-2.0, 2.0), (-2.0, 2.0)), lengths=(0.5, 2.0), tol=DEFAULT_TOL):
    """Random mechanism: feet uniform in ``box``, lengths log-uniform.

    ``p`` is either an int (same edge count for every leg) or a sequence.
    """
    rng = np.random.default_rng(rng)
    ps = [p] * n if np.isscalar(p) else list(p)
    feet = np.column_stack([rng.uniform(*box[0], n), rng.uniform(*box[1], n)])
    lo, hi = np.log(lengths[0]), np.log(lengths[1])
    legs = [tuple(np.exp(rng.uniform(lo, hi, k))) for k in ps]
    return validate({"feet": feet.tolist(), "legs": legs, "tol": tol,
                     "seed": int(rng.integers(0, 2**63 - 1))})


# -- strong genericity -----------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    witness: tuple
    severity: str
    detail: str = ""


@dataclass(frozen=True)
class GenericityReport:
    violations: tuple = ()

    @property
    def certified(self):
        return not self.violations

    @property
    def errors(self):
        return tuple(v for v in self.violations if v.severity == ERROR)

    def codes(self):
        return sorted({v.code for v in self.violations})


def _grade(gap, atol):
    if gap < atol:
        return ERROR
    if gap < 10 * atol:
        return WARNING
    return None


def aligned_pairs(mech):
    """Pairwise intersections of critical circles of distinct legs.

    Yields ``(i, ci, j, cj, x)`` with ``x`` inside the closed work space.
    """
    slack = 10 * mech.atol
    f = mech.feet_array
    for (i, ci), (j, cj) in itertools.combinations(mech.circles, 2):
        if i == j or ci.degenerate or cj.degenerate:
            continue
        for x in circle_intersections(f[i], ci.radius, f[j], cj.radius):
            if mech.in_workspace(x, slack=slack):
                yield i, ci, j, cj, x


def strong_genericity_report(mech, z=None):
    """Check every strong-genericity clause and return the violations found.

    Codes: ``1a`` three concurrent critical circles, ``1b`` tangent circle
    pair (parallel aligned legs), ``1c`` zero critical radius with the foot in
    the work space, ``2`` ``z`` on the line of a two-aligned leg, ``3`` ``z``
    on a foot, ``4`` ``z`` on a critical circle.  Only witnesses that lie in
    the work space (where a configuration exists) count for 1a/1b/1c/2.
    """
    atol = mech.atol
    f = mech.feet_array
    out = []

    for i, c in mech.circles:
        if c.degenerate and mech.in_workspace(f[i], slack=10 * atol):
            out.append(Violation("1c", tuple(f[i]), ERROR, f"leg {i} closes up aligned on its foot"))

    nondeg = [(i, c) for i, c in mech.circles if not c.degenerate]
    for (i, ci), (j, cj) in itertools.combinations(nondeg, 2):
        if i == j:
            continue
        gap = tangency_gap(f[i], ci.radius, f[j], cj.radius)
        sev = _grade(gap, atol)
        if sev:
            d = f[j] - f[i]
            u = d / np.linalg.norm(d)
            dist = np.linalg.norm(d)
            inner_j = abs(dist - abs(ci.radius - cj.radius)) < abs(dist - ci.radius - cj.radius) and cj.radius > ci.radius
            touch = f[i] - ci.radius * u if inner_j else f[i] + ci.radius * u
            if mech.in_workspace(touch, slack=10 * atol):
                out.append(Violation("1b", tuple(touch), sev,
                                     f"circles r={ci.radius:.6g} (leg {i}) and r={cj.radius:.6g} (leg {j}) are tangent"))

    pairs = list(aligned_pairs(mech))
    for i, ci, j, cj, x in pairs:
        for k, ck in nondeg:
            if k in (i, j) or k < max(i, j):
                continue
            gap = abs(np.linalg.norm(x - f[k]) - ck.radius)
            sev = _grade(gap, atol)
            if sev:
                out.append(Violation("1a", tuple(x), sev, f"circles of legs {i}, {j}, {k} concur"))

    if z is not None:
        z = np.asarray(z, dtype=float)
        for i, ci, j, cj, x in pairs:
            for k in (i, j):
                sev = _grade(distance_to_line(z, f[k], x), atol)
                if sev:
                    out.append(Violation("2", tuple(x), sev,
                                         f"z on the line of aligned leg {k} at a two-aligned point of legs {i}, {j}"))
        dist = np.linalg.norm(f - z, axis=1)
        for i in range(mech.n):
            sev = _grade(dist[i], atol)
            if sev:
                out.append(Violation("3", tuple(f[i]), sev, f"z coincides with foot {i}"))
        for i, c in mech.circles:
            sev = _grade(abs(dist[i] - c.radius), atol)
            if sev:
                out.append(Violation("4", tuple(z), sev, f"z on critical circle r={c.radius:.6g} of leg {i}"))

    out.sort(key=lambda v: (v.code, v.witness))
    return GenericityReport(tuple(out))


def random_generic_point(mech, rng, inside=None, max_tries=10_000):
    """A seeded random ``z`` passing the genericity report.

    ``inside=True`` restricts to the work space, ``False`` to its complement,
    ``None`` samples the zones' bounding box.
    """
    rng = np.random.default_rng(rng)
    f = mech.feet_array
    reach = np.array([zn.outer for zn in mech.zones])
    lo = (f - reach[:, None]).min(axis=0)
    hi = (f + reach[:, None]).max(axis=0)
    for _ in range(max_tries):
        z = rng.uniform(lo, hi)
        if inside is not None and mech.in_workspace(z, slack=0.0) != inside:
            continue
        if strong_genericity_report(mech, z).certified:
            return z
    raise SamplingExhausted("no generic point found")
