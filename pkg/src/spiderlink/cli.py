"""``spider``: command-line front end.

One input document drives every command; ``--z``, ``--weights`` and
``--seed`` override the document's values.  Reports are JSON (see
:mod:`spiderlink.report`), written to stdout or ``--out``.

Exit codes: 0 success, 1 input or analysis error, 2 genericity violation.
"""

import argparse
import sys

import numpy as np

from . import hooke, morse, oracle, report, svg, voronoi, workspace
from .errors import GenericityViolation, NotVoronoiGeneric, SpiderError
from .mechanism import load_document, random_generic_point, strong_genericity_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GENERICITY = 2


class UsageError(SpiderError):
    pass


def _pair(text):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}")
    return vals


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--z", type=_pair, help="target point x,y (overrides the document)")
    common.add_argument("--weights", type=_floats, help="Hooke weights w1,...,wn")
    common.add_argument("--potential", choices=("sqdist", "hooke", "voronoi"), default="sqdist")
    common.add_argument("--seed", type=int, help="seed for every random choice (default: document seed)")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--svg", help="also write an SVG figure")
    common.add_argument("--certified", action="store_true",
                        help="refuse inputs that fail the genericity checks (exit 2)")
    common.add_argument("--morsify", action="store_true", help="perturb Voronoi sites off the feet")
    common.add_argument("--eps", type=float, help="size of the Voronoi site offsets")

    parser = argparse.ArgumentParser(prog="spider", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the document and report genericity")
    ws = sub.add_parser("workspace", parents=[common], help="stratified work space")
    ws.add_argument("--json", action="store_true", help="emit JSON (always on; kept for symmetry with --svg)")
    sub.add_parser("critical", parents=[common], help="critical components of a potential")
    sub.add_parser("morse-poly", parents=[common], help="Morse-Bott polynomial of a potential")
    eu = sub.add_parser("euler", parents=[common], help="Euler characteristic of the spider space")
    eu.add_argument("--method", choices=("strata", "morse", "both"), default="both")
    orc = sub.add_parser("oracle", parents=[common], help="numerical cross-checks")
    orc.add_argument("action", choices=("verify",))
    orc.add_argument("input", help="mechanism document (JSON)")
    orc.add_argument("--starts", type=int, default=500, help="multi-start count (per cell for voronoi)")
    sub.add_parser("voronoi-plane", parents=[common], help="critical points of the Voronoi distance in the plane")
    for name, p in sub.choices.items():
        if name != "oracle":
            p.add_argument("input", help="mechanism document (JSON)")
    return parser


# -- helpers ----------------------------------------------------------------

class _Context:
    def __init__(self, args):
        doc = load_document(args.input)
        self.args = args
        self.mech = doc.mechanism
        self.z = args.z if args.z is not None else doc.z
        self.weights = args.weights if args.weights is not None else doc.weights
        self.seed = args.seed if args.seed is not None else self.mech.seed

    def target(self):
        """``z`` from flags or document, else a seeded generic point of ``W``."""
        if self.z is None:
            self.z = tuple(random_generic_point(self.mech, np.random.default_rng(self.seed)))
        return self.z

    def need_weights(self):
        if self.weights is None:
            raise UsageError("the hooke potential needs --weights or a weights field")
        return self.weights


def _sqdist_components(ctx):
    z = ctx.target()
    enum = morse.analyze(ctx.mech, z, certified=ctx.args.certified)
    return enum.components, enum.report, {"z": list(z), "dropped": [list(d) for d in enum.dropped]}


def _hooke_components(ctx):
    w = ctx.need_weights()
    red = hooke.reduce(ctx.mech.feet_array, w)
    comps = hooke.hooke_critical(ctx.mech, w, certified=ctx.args.certified)
    comps.sort(key=morse.CriticalComponent.sort_key)
    extra = {"weights": list(w), "centroid": list(red.centroid), "total_weight": red.scale, "kappa": red.offset}
    return comps, strong_genericity_report(ctx.mech, red.centroid), extra


def _voronoi(ctx):
    a = ctx.args
    if a.morsify:
        return voronoi.morsify(ctx.mech, seed=ctx.seed, eps=a.eps)
    return voronoi.spider_voronoi_critical(ctx.mech, certified=a.certified)


def _components(ctx):
    pot = ctx.args.potential
    if pot == "sqdist":
        return _sqdist_components(ctx)
    if pot == "hooke":
        return _hooke_components(ctx)
    rep = _voronoi(ctx)
    return rep.isolated, strong_genericity_report(ctx.mech), {"voronoi": rep.to_dict(), "_report": rep}


def _write_svg(ctx, text):
    if ctx.args.svg:
        with open(ctx.args.svg, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- commands ---------------------------------------------------------------

def cmd_validate(ctx):
    rep = strong_genericity_report(ctx.mech, ctx.z)
    if ctx.args.certified and rep.errors:
        raise GenericityViolation("not strongly generic: " + ", ".join(rep.codes()), rep)
    payload = {"n": ctx.mech.n, "p": ctx.mech.p, "dim": ctx.mech.dim, "z": ctx.z, "weights": ctx.weights}
    return rep, payload


def cmd_workspace(ctx):
    ws = workspace.build(ctx.mech)
    _write_svg(ctx, svg.workspace_svg(ws, title="work space"))
    return strong_genericity_report(ctx.mech, ctx.z), {"workspace": report.workspace_dict(ws)}


def cmd_critical(ctx):
    comps, gen, extra = _components(ctx)
    vrep = extra.pop("_report", None)
    payload = {"potential": ctx.args.potential, "components": [c.to_dict() for c in comps],
               "histogram": {str(k): v for k, v in morse.index_histogram(comps, isolated_only=False).items()}}
    payload.update(extra)
    if ctx.args.svg:
        ws = workspace.build(ctx.mech)
        text = svg.voronoi_svg(ws, vrep) if vrep is not None else svg.workspace_svg(ws, comps)
        _write_svg(ctx, text)
    return gen, payload


def cmd_morse_poly(ctx):
    comps, gen, extra = _components(ctx)
    vrep = extra.pop("_report", None)
    poly = vrep.polynomial() if vrep is not None else morse.morse_bott_polynomial(comps)
    payload = {"potential": ctx.args.potential, "polynomial": list(poly.coefficients),
               "text": str(poly), "value_at_minus_one": morse.euler_from_morse(poly)}
    payload.update({k: v for k, v in extra.items() if k != "voronoi"})
    return gen, payload


def cmd_euler(ctx):
    method = ctx.args.method
    out = {}
    gen = strong_genericity_report(ctx.mech, ctx.z)
    if method in ("strata", "both"):
        cert = workspace.euler_via_strata(ctx.mech)
        out["strata"] = cert.value
    if method in ("morse", "both"):
        comps, gen, extra = _sqdist_components(ctx)
        out["morse"] = morse.euler_from_morse(morse.morse_bott_polynomial(comps))
        out["z"] = extra["z"]
    if method == "both":
        out["agree"] = out["strata"] == out["morse"]
    return gen, out


def cmd_oracle(ctx):
    a = ctx.args
    mech = ctx.mech
    if a.potential == "voronoi":
        rep = _voronoi(ctx)
        vs = rep.structure
        inside = [c for c in rep.isolated if vs.in_cell(vs.nearest(c.x)[0], c.x)]
        numeric = oracle.find_critical_cellwise(mech, rep.sites, starts=a.starts, seed=ctx.seed)
        cmp = oracle.compare(inside, numeric, mech.scale)
        payload = {"potential": "voronoi", "starts_per_cell": a.starts, "comparison": cmp.to_dict(),
                   "checked": len(inside), "on_diagram": len(rep.isolated) - len(inside),
                   "non_isolated": len(rep.non_isolated)}
        return strong_genericity_report(mech), payload
    if a.potential == "sqdist":
        comps, gen, extra = _sqdist_components(ctx)
        pot = oracle.sqdist(ctx.z)
    else:
        comps, gen, extra = _hooke_components(ctx)
        pot = oracle.hooke(mech.feet_array, ctx.weights)
    numeric = oracle.find_critical(mech, pot, starts=a.starts, seed=ctx.seed)
    cmp = oracle.compare(comps, numeric, mech.scale)
    payload = {"potential": a.potential, "starts": a.starts, "comparison": cmp.to_dict(),
               "numeric_clusters": len(numeric)}
    payload.update(extra)
    return gen, payload


def cmd_voronoi_plane(ctx):
    sites = ctx.mech.feet_array
    plane = voronoi.plane_critical(sites, ctx.mech.atol)

    def pts(group):
        return [{"point": list(p.point), "value": p.value, "index": p.index, "sites": list(p.sites)} for p in group]
    payload = {"minima": pts(plane.minima), "saddles": pts(plane.saddles), "maxima": pts(plane.maxima),
               "degenerate": [list(map(float, d)) for d in plane.degenerate] if plane.degenerate else [],
               "euler": plane.euler}
    return None, payload


COMMANDS = {
    "validate": cmd_validate,
    "workspace": cmd_workspace,
    "critical": cmd_critical,
    "morse-poly": cmd_morse_poly,
    "euler": cmd_euler,
    "oracle": cmd_oracle,
    "voronoi-plane": cmd_voronoi_plane,
}


def run(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        ctx = _Context(args)
        gen, payload = COMMANDS[args.command](ctx)
    except (GenericityViolation, NotVoronoiGeneric) as exc:
        print(f"spider: genericity violation: {exc}", file=stderr)
        return EXIT_GENERICITY
    except (SpiderError, OSError) as exc:
        print(f"spider: error: {exc}", file=stderr)
        return EXIT_INPUT
    text = report.dumps(report.envelope(args.command, ctx.mech, gen, payload))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
