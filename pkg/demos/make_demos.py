"""Build the demo instances, run the ``spider`` commands on them and keep
the JSON reports and SVG figures.

    python3 demos/make_demos.py            # writes demos/instances and demos/output

Everything is seeded, so reruns reproduce the files byte for byte.
"""

import json
import pathlib
import sys

from spiderlink import cli, instances

HERE = pathlib.Path(__file__).resolve().parent
INSTANCES = HERE / "instances"
OUTPUT = HERE / "output"


def save(name, mech, **extra):
    path = INSTANCES / f"{name}.json"
    doc = {**mech.to_document(), **{k: list(v) for k, v in extra.items()}}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def spider(*argv):
    code = cli.run([str(a) for a in argv])
    print(f"spider {' '.join(map(str, argv))}  -> exit {code}", file=sys.stderr)
    return code


def main():
    INSTANCES.mkdir(exist_ok=True)
    OUTPUT.mkdir(exist_ok=True)

    tripod = instances.hexagonal_tripod(seed=0)
    hexa = save("hexagonal_tripod", tripod.mechanism, z=tripod.z)
    spider("euler", "--method", "both", hexa, "--out", OUTPUT / "hexagonal_euler.json")
    spider("workspace", hexa, "--out", OUTPUT / "hexagonal_workspace.json", "--svg", OUTPUT / "hexagonal_workspace.svg")
    spider("critical", hexa, "--out", OUTPUT / "hexagonal_critical.json", "--svg", OUTPUT / "hexagonal_critical.svg")
    spider("morse-poly", "--potential", "hooke", "--weights", "1,1,1", hexa,
           "--out", OUTPUT / "hexagonal_hooke.json")
    spider("oracle", "verify", "--starts", "1000", hexa, "--out", OUTPUT / "hexagonal_oracle.json")

    lens = instances.lens(3, 4)
    lens_in = save("lens_interior", lens, z=instances.lens_interior_z(lens))
    spider("morse-poly", lens_in, "--out", OUTPUT / "lens_interior_poly.json")
    spider("critical", lens_in, "--out", OUTPUT / "lens_interior_critical.json",
           "--svg", OUTPUT / "lens_interior_critical.svg")
    lens_out = save("lens_exterior", lens, z=instances.lens_exterior_z(lens))
    spider("morse-poly", lens_out, "--out", OUTPUT / "lens_exterior_poly.json")

    arc = instances.lens(3, 4, short_edge=0.2)
    arc_out = save("lens_arc_variant", arc, z=instances.lens_exterior_z(arc))
    spider("morse-poly", arc_out, "--out", OUTPUT / "lens_arc_variant_poly.json")
    spider("workspace", arc_out, "--out", OUTPUT / "lens_arc_variant_workspace.json",
           "--svg", OUTPUT / "lens_arc_variant_workspace.svg")

    vor = instances.voronoi_tripod(seed=0)
    vpath = save("voronoi_tripod", vor.mechanism)
    spider("critical", "--potential", "voronoi", vpath, "--out", OUTPUT / "voronoi_critical.json",
           "--svg", OUTPUT / "voronoi_critical.svg")
    spider("morse-poly", "--potential", "voronoi", "--morsify", vpath, "--out", OUTPUT / "voronoi_morsified.json")
    spider("voronoi-plane", vpath, "--out", OUTPUT / "voronoi_plane.json")
    spider("euler", "--method", "strata", vpath, "--out", OUTPUT / "voronoi_euler.json")
    spider("oracle", "verify", "--potential", "voronoi", "--morsify", vpath,
           "--out", OUTPUT / "voronoi_oracle.json")


if __name__ == "__main__":
    main()
