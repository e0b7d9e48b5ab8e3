"""Numerical critical-point oracle.

Everything here works directly on edge angles and never uses alignment
circles, sign vectors or polygon-space formulas: the spider space is the zero
set of the leg-closure residuals, critical points are solutions of the
Lagrange system found by multi-start Newton, and indices are read from the
reduced Hessian on the constraint null space.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg, optimize

from .errors import SamplingExhausted
from .mechanism import Configuration, strong_genericity_report, validate

ETA_FEAS = 1e-10
ETA_KKT = 1e-9
TAU_EIG = 1e-7


# -- generic equality-constrained problems ---------------------------------

@dataclass
class ConstrainedProblem:
    """Minimal interface: objective and constraints with derivatives.

    ``objective(x) -> (f, grad, hess)``; ``constraints(x) -> (g, J)``;
    ``constraint_hessian(x, lam) -> sum_k lam_k * hess(g_k)``.
    """

    size: int
    objective: object
    constraints: object
    constraint_hessian: object

    def n_cons(self):
        return len(self.constraints(np.zeros(self.size))[0])


def project(problem, x0, max_iter=60):
    """Pull ``x0`` onto the constraint set with minimum-norm Gauss-Newton steps."""
    x = np.asarray(x0, dtype=float).copy()
    g, J = problem.constraints(x)
    if len(g) == 0:
        return x, True
    r = np.linalg.norm(g)
    for _ in range(max_iter):
        if r < 1e-2 * ETA_FEAS:
            break
        step = np.linalg.lstsq(J, -g, rcond=None)[0]
        t = 1.0
        while t > 1e-4:
            x_new = x + t * step
            g_new, J_new = problem.constraints(x_new)
            r_new = np.linalg.norm(g_new)
            if r_new < r:
                break
            t *= 0.5
        else:
            break
        x, g, J, r = x_new, g_new, J_new, r_new
    return x, bool(r < ETA_FEAS)


def _kkt_system(problem, m):
    def F(v):
        x, lam = v[:problem.size], v[problem.size:]
        _, grad, _ = problem.objective(x)
        g, J = problem.constraints(x)
        return np.concatenate([grad - J.T @ lam, g]) if m else grad

    def JF(v):
        x, lam = v[:problem.size], v[problem.size:]
        _, _, hess = problem.objective(x)
        if not m:
            return hess
        _, J = problem.constraints(x)
        HL = hess - problem.constraint_hessian(x, lam)
        top = np.hstack([HL, -J.T])
        bottom = np.hstack([J, np.zeros((m, m))])
        return np.vstack([top, bottom])

    return F, JF


def initial_multipliers(problem, x):
    _, grad, _ = problem.objective(x)
    g, J = problem.constraints(x)
    if len(g) == 0:
        return np.zeros(0)
    return np.linalg.lstsq(J.T, grad, rcond=None)[0]


def kkt_solve(problem, x0, methods=("hybr", "lm")):
    """Newton on the Lagrange system from a feasible start.

    ``methods`` are tried in order; their basins differ, so multi-start
    searches alternate the order.  Returns ``(x, lam, residual)`` or ``None`` when no method converges.
    """
    m = problem.n_cons()
    F, JF = _kkt_system(problem, m)
    v0 = np.concatenate([x0, initial_multipliers(problem, x0)])
    best = None
    for method in methods:
        try:
            sol = optimize.root(F, v0, jac=JF, method=method, options={"xtol": 1e-14} if method == "hybr" else {"xtol": 1e-15, "ftol": 1e-15})
        except (ValueError, np.linalg.LinAlgError):
            continue
        r = float(np.linalg.norm(F(sol.x)))
        if best is None or r < best[2]:
            best = (sol.x[:problem.size], sol.x[problem.size:], r)
        if r < ETA_KKT:
            break
    if best is None:
        return None
    # a couple of plain Newton polish steps (least-squares for singular systems)
    v = np.concatenate([best[0], best[1]])
    for _ in range(3):
        step = np.linalg.lstsq(JF(v), -F(v), rcond=None)[0]
        v_new = v + step
        if np.linalg.norm(F(v_new)) < np.linalg.norm(F(v)):
            v = v_new
    return v[:problem.size], v[problem.size:], float(np.linalg.norm(F(v)))


def reduced_hessian(problem, x, lam):
    _, _, hess = problem.objective(x)
    g, J = problem.constraints(x)
    if len(g) == 0:
        return hess
    HL = hess - problem.constraint_hessian(x, lam)
    N = linalg.null_space(J)
    return N.T @ HL @ N


def signature(H, tau=TAU_EIG):
    """``(negative, zero, positive)`` eigenvalue counts with a relative zero band."""
    ev = np.linalg.eigvalsh(0.5 * (H + H.T)) if H.size else np.zeros(0)
    if ev.size == 0:
        return ev, (0, 0, 0)
    band = tau * max(float(np.max(np.abs(ev))), 1e-300)
    neg = int(np.sum(ev < -band))
    pos = int(np.sum(ev > band))
    return ev, (neg, ev.size - neg - pos, pos)


# -- spider charts ---------------------------------------------------------

class SpiderChart:
    """Absolute edge-angle coordinates for a spider mechanism.

    The body is the endpoint of the first leg; each further leg contributes a
    residual ``a_i + sum l e(theta) - X``.
    """

    def __init__(self, mech):
        self.mech = mech
        self.legs = [np.asarray(leg, dtype=float) for leg in mech.legs]
        self.offsets = np.cumsum([0] + [len(l) for l in self.legs])
        self.size = int(self.offsets[-1])
        self.feet = mech.feet_array

    def leg_slice(self, i):
        return slice(self.offsets[i], self.offsets[i + 1])

    def endpoint(self, theta, i):
        t = theta[self.leg_slice(i)]
        return self.feet[i] + self.legs[i] @ np.column_stack([np.cos(t), np.sin(t)])

    def body(self, theta):
        return self.endpoint(theta, 0)

    def body_jacobian(self, theta):
        J = np.zeros((2, self.size))
        s = self.leg_slice(0)
        t = theta[s]
        J[0, s] = -self.legs[0] * np.sin(t)
        J[1, s] = self.legs[0] * np.cos(t)
        return J

    def residual(self, theta):
        X = self.body(theta)
        return np.concatenate([self.endpoint(theta, i) - X for i in range(1, self.mech.n)]) \
            if self.mech.n > 1 else np.zeros(0)

    def residual_jacobian(self, theta):
        m = 2 * (self.mech.n - 1)
        J = np.zeros((m, self.size))
        JX = self.body_jacobian(theta)
        for i in range(1, self.mech.n):
            s = self.leg_slice(i)
            t = theta[s]
            rows = slice(2 * (i - 1), 2 * i)
            J[rows, s] = np.vstack([-self.legs[i] * np.sin(t), self.legs[i] * np.cos(t)])
            J[rows] -= JX
        return J

    def residual_hessian(self, theta, lam):
        """``sum_k lam_k hess(g_k)``; diagonal because each angle enters once."""
        d = np.zeros(self.size)
        if self.mech.n == 1:
            return np.diag(d)
        lam = lam.reshape(-1, 2)
        lam_total = lam.sum(axis=0)
        s0 = self.leg_slice(0)
        t0 = theta[s0]
        # second derivative of -X along leg 0 is +l e(theta)
        d[s0] = self.legs[0] * (np.cos(t0) * lam_total[0] + np.sin(t0) * lam_total[1])
        for i in range(1, self.mech.n):
            s = self.leg_slice(i)
            t = theta[s]
            d[s] = -self.legs[i] * (np.cos(t) * lam[i - 1, 0] + np.sin(t) * lam[i - 1, 1])
        return np.diag(d)

    def configuration(self, theta):
        joints = []
        for i in range(self.mech.n):
            t = theta[self.leg_slice(i)]
            pts = self.feet[i] + np.cumsum(self.legs[i][:, None] * np.column_stack([np.cos(t), np.sin(t)]), axis=0)
            joints.append(tuple(map(tuple, pts[:-1])))
        return Configuration(body=tuple(self.body(theta)), joints=tuple(joints))

    def joint_vector(self, theta):
        out = []
        for i in range(self.mech.n):
            t = theta[self.leg_slice(i)]
            pts = self.feet[i] + np.cumsum(self.legs[i][:, None] * np.column_stack([np.cos(t), np.sin(t)]), axis=0)
            out.append(pts.ravel())
        return np.concatenate(out)

    def problem(self, potential):
        def objective(theta):
            X = self.body(theta)
            val, grad, hess = potential(X)
            JX = self.body_jacobian(theta)
            H = JX.T @ hess @ JX
            s0 = self.leg_slice(0)
            t0 = theta[s0]
            H[s0, s0] += np.diag(-self.legs[0] * (np.cos(t0) * grad[0] + np.sin(t0) * grad[1]))
            return val, JX.T @ grad, H

        return ConstrainedProblem(
            size=self.size,
            objective=objective,
            constraints=lambda th: (self.residual(th), self.residual_jacobian(th)),
            constraint_hessian=self.residual_hessian,
        )


# -- potentials in the body coordinate --------------------------------------

def sqdist(z):
    z = np.asarray(z, dtype=float)

    def pot(X):
        d = X - z
        return float(d @ d), 2.0 * d, 2.0 * np.eye(2)
    return pot


def hooke(feet, weights):
    """Weighted Hooke energy ``sum w_i |X - a_i|^2`` evaluated term by term."""
    feet = np.asarray(feet, dtype=float)
    w = np.asarray(weights, dtype=float)

    def pot(X):
        d = X - feet
        return float(np.sum(w * np.sum(d * d, axis=1))), 2.0 * (w @ d), 2.0 * w.sum() * np.eye(2)
    return pot


def negated(pot):
    def neg(X):
        v, g, h = pot(X)
        return -v, -g, -h
    return neg


# -- sampling and search ----------------------------------------------------

def sample_configuration(mech, rng, max_tries=200):
    """A random point of the spider space, as a :class:`Configuration`."""
    chart = SpiderChart(mech)
    theta = _sample_theta(chart, np.random.default_rng(rng), max_tries)
    return chart.configuration(theta)


def _sample_theta(chart, rng, max_tries=200):
    problem = ConstrainedProblem(chart.size, None,
                                 lambda th: (chart.residual(th), chart.residual_jacobian(th)), None)
    for _ in range(max_tries):
        theta0 = rng.uniform(-np.pi, np.pi, chart.size)
        theta, ok = project(problem, theta0)
        if ok:
            return theta
    raise SamplingExhausted(f"no feasible configuration after {max_tries} attempts")


@dataclass(frozen=True)
class NumericCriticalPoint:
    theta: tuple
    x: tuple
    value: float
    eigenvalues: tuple
    signature: tuple
    kkt: float
    feasibility: float
    joints: tuple = ()
    cluster: int = -1

    @property
    def index(self):
        return self.signature[0]

    @property
    def null(self):
        return self.signature[1]


def _one_start(chart, problem, seed_seq, region):
    rng = np.random.default_rng(seed_seq)
    try:
        theta0 = _sample_theta(chart, rng, max_tries=20)
    except SamplingExhausted:
        return None
    sol = kkt_solve(problem, theta0)
    if sol is None:
        return None
    theta, lam, kkt = sol
    feas = float(np.linalg.norm(chart.residual(theta))) if chart.mech.n > 1 else 0.0
    if feas > ETA_FEAS or kkt > ETA_KKT:
        return None
    X = chart.body(theta)
    if region is not None and not region(X):
        return None
    H = reduced_hessian(problem, theta, lam)
    ev, sig = signature(H)
    val = problem.objective(theta)[0]
    return NumericCriticalPoint(
        theta=tuple(np.mod(theta, 2 * np.pi)), x=tuple(X), value=float(val),
        eigenvalues=tuple(ev), signature=sig, kkt=kkt, feasibility=feas,
        joints=tuple(chart.joint_vector(theta)),
    )


def find_critical(mech, potential, starts=200, seed=0, region=None):
    """Multi-start search for critical points of ``potential(X)`` on the spider space.

    ``region(X) -> bool`` discards converged points outside a region (used
    for piecewise potentials).  Returns one representative per cluster,
    sorted by value and location.
    """
    chart = SpiderChart(mech)
    problem = chart.problem(potential)
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    seqs = root.spawn(starts)
    raw = [pt for pt in (_one_start(chart, problem, s, region) for s in seqs) if pt is not None]
    return cluster(raw, tol=1e-6 * mech.scale)


ORACLE_TOL = 1e-5


def well_conditioned(mech, z=None, tol=ORACLE_TOL):
    """Strong genericity with a band wide enough for the oracle to resolve.

    The numerical search separates points and reads Hessian signs only to
    about ``1e-6`` of the diameter; an instance that is generic at the
    default tolerance but within that of a violation (for instance a
    critical point almost on a third circle, whose fiber polygon is then
    almost flat) cannot be certified numerically.  The check reruns the
    genericity report at ``tol`` and rejects warnings as well as errors.
    """
    coarse = validate({**mech.to_document(), "tol": tol})
    return not strong_genericity_report(coarse, z).violations


def cluster(points, tol):
    """Merge converged points.

    Isolated points (no null directions) are told apart by their joint
    positions; points on critical manifolds only by body position and
    signature, since a whole manifold shares one body position.
    """
    reps = []
    for pt in points:
        for k, rep in enumerate(reps):
            if rep.signature != pt.signature:
                continue
            if np.linalg.norm(np.subtract(rep.x, pt.x)) > tol:
                continue
            if pt.null == 0 and np.max(np.abs(np.subtract(rep.joints, pt.joints))) > 1e3 * tol:
                continue
            break
        else:
            reps.append(pt)
    reps.sort(key=lambda p: (round(p.value, 9), tuple(round(c, 9) for c in p.x), p.signature, p.joints))
    return [NumericCriticalPoint(**{**p.__dict__, "cluster": k}) for k, p in enumerate(reps)]


# -- comparison with predictions -------------------------------------------

MATCHED = "matched"
INDEX_MISMATCH = "index-mismatch"
MULTIPLICITY_MISMATCH = "multiplicity-mismatch"
UNMATCHED_PREDICTED = "unmatched-predicted"
UNMATCHED_NUMERIC = "unmatched-numeric"


@dataclass
class ComparisonReport:
    entries: list = field(default_factory=list)

    @property
    def all_matched(self):
        return bool(self.entries) and all(e["verdict"] == MATCHED for e in self.entries)

    def counts(self):
        out = {}
        for e in self.entries:
            out[e["verdict"]] = out.get(e["verdict"], 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self):
        return {"all_matched": self.all_matched, "counts": self.counts(), "entries": self.entries}


def compare(predicted, numeric, diameter, tol=1e-6):
    """Match predicted components to numeric clusters by body position.

    A predicted component is matched when numeric clusters at its location
    have signature ``(index, dim, *)``; for isolated components the number of
    such clusters must equal the predicted number of points.
    """
    radius = tol * diameter
    used = set()
    report = ComparisonReport()
    groups = {}
    for c in predicted:
        key = (tuple(round(v / radius) for v in c.x), c.index, c.dim)
        groups.setdefault(key, []).append(c)
    for (_, index, dim), comps in sorted(groups.items(), key=lambda kv: kv[0]):
        x = np.asarray(comps[0].x)
        near = [k for k, p in enumerate(numeric) if np.linalg.norm(np.subtract(p.x, x)) <= radius]
        good = [k for k in near if numeric[k].signature[:2] == (index, dim)]
        entry = {"x": [float(v) for v in x], "index": index, "dim": dim,
                 "case": comps[0].case, "numeric": [numeric[k].signature for k in near]}
        if not near:
            entry["verdict"] = UNMATCHED_PREDICTED
        elif not good:
            entry["verdict"] = INDEX_MISMATCH
        else:
            expected = sum(c.multiplicity or 0 for c in comps) if dim == 0 else None
            entry["expected_points"] = expected
            entry["found_points"] = len(good)
            if expected is not None and expected != len(good):
                entry["verdict"] = MULTIPLICITY_MISMATCH
            else:
                entry["verdict"] = MATCHED
            used.update(good)
        report.entries.append(entry)
    for k, p in enumerate(numeric):
        if k not in used:
            report.entries.append({"x": [float(v) for v in p.x], "index": p.signature[0],
                                   "dim": p.signature[1], "case": None, "numeric": [p.signature],
                                   "verdict": UNMATCHED_NUMERIC})
    return report


# -- polygon-space oracles --------------------------------------------------

def diagonal_sweep_components(lengths):
    """Connected components of a quadrilateral space by sweeping a diagonal.

    With the diagonal ``d = |V0 V2|`` fixed, each of the triangles
    ``(l0, l1, d)`` and ``(l2, l3, d)`` has two mirror placements, so the
    space is four branches over the feasible interval of ``d``.  At an end of
    the interval one triangle flattens and its two placements meet.
    """
    l0, l1, l2, l3 = map(float, lengths)
    lo = max(abs(l0 - l1), abs(l2 - l3))
    hi = min(l0 + l1, l2 + l3)
    if lo > hi:
        return 0
    parent = {b: b for b in [(s, t) for s in (1, -1) for t in (1, -1)]}

    def find(b):
        while parent[b] != b:
            b = parent[b]
        return b

    def join(a, b):
        parent[find(a)] = find(b)

    for d in (lo, hi):
        first = np.isclose(d, abs(l0 - l1)) or np.isclose(d, l0 + l1)
        second = np.isclose(d, abs(l2 - l3)) or np.isclose(d, l2 + l3)
        for t in (1, -1):
            if first:
                join((1, t), (-1, t))
            if second:
                join((t, 1), (t, -1))
    return len({find(b) for b in parent})


def polygon_diagonal_problem(lengths):
    """Polygon space with the first edge along the x-axis; potential is the
    squared diagonal ``|V0 V2|^2``."""
    ls = np.asarray(lengths, dtype=float)
    size = len(ls) - 1

    def angles(x):
        return np.concatenate([[0.0], x])

    def objective(x):
        t = angles(x)
        v = ls[:2] @ np.column_stack([np.cos(t[:2]), np.sin(t[:2])])
        J = np.zeros((2, size))
        J[:, 0] = ls[1] * np.array([-np.sin(t[1]), np.cos(t[1])])
        H = 2 * J.T @ J
        H[0, 0] += 2 * v @ (-ls[1] * np.array([np.cos(t[1]), np.sin(t[1])]))
        return float(v @ v), 2 * J.T @ v, H

    def constraints(x):
        t = angles(x)
        g = ls @ np.column_stack([np.cos(t), np.sin(t)])
        J = np.vstack([-ls[1:] * np.sin(t[1:]), ls[1:] * np.cos(t[1:])])
        return g, J

    def constraint_hessian(x, lam):
        t = angles(x)[1:]
        return np.diag(-ls[1:] * (lam[0] * np.cos(t) + lam[1] * np.sin(t)))

    return ConstrainedProblem(size, objective, constraints, constraint_hessian)


def polygon_critical_points(lengths, starts=300, seed=0):
    """Critical points of the squared diagonal on a polygon space."""
    problem = polygon_diagonal_problem(lengths)
    rng_root = np.random.SeedSequence(seed).spawn(starts)
    found = []
    scale = float(np.sum(lengths))
    for ss in rng_root:
        rng = np.random.default_rng(ss)
        x0, ok = project(problem, rng.uniform(-np.pi, np.pi, problem.size))
        if not ok:
            continue
        sol = kkt_solve(problem, x0)
        if sol is None or sol[2] > ETA_KKT:
            continue
        x, lam, _ = sol
        if np.linalg.norm(problem.constraints(x)[0]) > ETA_FEAS:
            continue
        ev, sig = signature(reduced_hessian(problem, x, lam))
        t = np.concatenate([[0.0], x])
        verts = np.cumsum(np.asarray(lengths)[:, None] * np.column_stack([np.cos(t), np.sin(t)]), axis=0)
        found.append((verts.ravel(), sig))
    reps = []
    for v, sig in found:
        if not any(sig == s and np.max(np.abs(v - w)) < 1e-6 * scale for w, s in reps):
            reps.append((v, sig))
    return [s for _, s in reps]


def polygon_euler_by_morse(lengths, starts=300, seed=0):
    """Signed count of isolated critical points of the squared diagonal.

    Critical circles (one null direction) contribute nothing; any other
    degenerate critical set makes the count unusable and raises.
    """
    total = 0
    for neg, null, _ in polygon_critical_points(lengths, starts, seed):
        if null == 0:
            total += (-1) ** neg
        elif null != 1:
            raise ValueError("critical set of dimension > 1; signed count undefined")
    return total


# -- local index from a link ----------------------------------------------

def link_sign_changes(mech, f, theta, radius=1e-3, samples=720):
    """Sign changes of ``f - f(center)`` around a small loop in a 2D spider space.

    For ``dim S = 2``: 0 changes means a local extremum (sign says which),
    2 a regular point and 4 a saddle.  Works for piecewise smooth ``f``, but
    at a kink the sectors where ``f`` rises can be only ``O(radius)`` wide, so
    ``samples`` must be well above ``1 / radius`` there.
    """
    chart = SpiderChart(mech)
    theta = np.asarray(theta, dtype=float)
    problem = ConstrainedProblem(chart.size, None,
                                 lambda th: (chart.residual(th), chart.residual_jacobian(th)), None)
    J = chart.residual_jacobian(theta) if mech.n > 1 else np.zeros((0, chart.size))
    N = linalg.null_space(J) if J.size else np.eye(chart.size)
    if N.shape[1] != 2:
        raise ValueError("link test needs a 2-dimensional spider space")
    B = chart.body_jacobian(theta) @ N
    if np.linalg.svd(B, compute_uv=False)[-1] > 1e-3 * mech.scale:
        # the body is a local coordinate: loop around a round circle in the plane
        N = N @ np.linalg.inv(B)
    f0 = f(chart.body(theta))
    signs = []
    for a in np.linspace(0, 2 * np.pi, samples, endpoint=False):
        th, ok = project(problem, theta + radius * (N @ np.array([np.cos(a), np.sin(a)])))
        signs.append(np.sign(f(chart.body(th)) - f0))
    signs = np.array(signs)
    changes = int(np.sum(signs != np.roll(signs, 1)))
    return changes, int(signs[0])


def link_index(mech, f, theta, radius=1e-3, samples=720):
    """Morse index read off the link: 0 minimum, 1 saddle, 2 maximum, None regular."""
    changes, s = link_sign_changes(mech, f, theta, radius, samples)
    if changes == 0:
        return 0 if s > 0 else 2
    if changes == 4:
        return 1
    return None


def fiber_thetas(mech, x, aligned=None):
    """Edge angles of every configuration over ``x`` for 2-edge legs.

    ``aligned`` maps a leg index to a sign vector for legs lying straight
    along the line from their foot to ``x``.
    """
    aligned = aligned or {}
    x = np.asarray(x, dtype=float)
    per_leg = []
    for i, leg in enumerate(mech.legs):
        d = x - mech.feet_array[i]
        L = float(np.linalg.norm(d))
        base = float(np.arctan2(d[1], d[0]))
        if i in aligned:
            per_leg.append([[base if e > 0 else base + np.pi for e in aligned[i].eps]])
            continue
        if len(leg) != 2:
            raise ValueError("fiber enumeration needs 2-edge legs")
        l1, l2 = leg
        c = (l1 * l1 + L * L - l2 * l2) / (2 * l1 * L)
        if abs(c) > 1:
            return []
        a = float(np.arccos(c))
        opts = []
        for s in (1, -1):
            t1 = base + s * a
            joint = mech.feet_array[i] + l1 * np.array([np.cos(t1), np.sin(t1)])
            t2 = float(np.arctan2(*(x - joint)[::-1]))
            opts.append([t1, t2])
        per_leg.append(opts)
    out = [[]]
    for opts in per_leg:
        out = [prev + o for prev in out for o in opts]
    return [np.asarray(t) for t in out]


def voronoi_value(sites):
    s = np.asarray(sites, dtype=float)

    def f(X):
        return float(np.min(np.sum((s - X) ** 2, axis=1)))
    return f


def find_critical_cellwise(mech, sites, starts=200, seed=0):
    """Critical points of ``min_i |X - s_i|^2`` inside the open power cells.

    Each cell is searched with its own smooth piece ``|X - s_i|^2`` and only
    points strictly nearer to ``s_i`` than to any other site are kept.
    Points on the diagram itself are out of reach of this search.
    """
    sites = np.asarray(sites, dtype=float)
    margin = 1e-6 * mech.scale
    out = []
    for i, ss in enumerate(np.random.SeedSequence(seed).spawn(len(sites))):
        def region(X, i=i):
            d = np.linalg.norm(sites - X, axis=1)
            others = np.delete(d, i)
            return others.size == 0 or d[i] < others.min() - margin
        for pt in find_critical(mech, sqdist(sites[i]), starts=starts, seed=ss, region=region):
            out.append(pt)
    out.sort(key=lambda p: (round(p.value, 9), tuple(round(c, 9) for c in p.x), p.signature, p.joints))
    return [NumericCriticalPoint(**{**p.__dict__, "cluster": k}) for k, p in enumerate(out)]
