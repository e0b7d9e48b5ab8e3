import io
import json
import xml.etree.ElementTree as ET

import pytest

from spiderlink import cli, instances, report, workspace


def write_doc(tmp_path, mech, name="input.json", **extra):
    doc = {**mech.to_document(), **extra}
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def hex_doc(tmp_path, hexagonal):
    return write_doc(tmp_path, hexagonal.mechanism, z=list(hexagonal.z))


@pytest.fixture
def lens_doc(tmp_path):
    return write_doc(tmp_path, instances.lens(3, 3), name="lens.json")


def test_euler_both_on_tripod(hex_doc):
    code, out, _ = invoke("euler", "--method", "both", hex_doc)
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == report.SCHEMA_ID
    assert doc["command"] == "euler"
    assert doc["payload"]["strata"] == -4
    assert doc["payload"]["morse"] == -4
    assert doc["payload"]["agree"] is True


def test_envelope_keys(hex_doc):
    for command in ("validate", "workspace", "critical", "morse-poly", "voronoi-plane"):
        code, out, _ = invoke(command, hex_doc)
        assert code == 0, command
        assert set(json.loads(out)) == {"schema", "command", "mechanism", "genericity", "payload"}


def test_critical_counts_on_tripod(hex_doc):
    code, out, _ = invoke("critical", hex_doc)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["histogram"] == {"0": 8, "1": 24, "2": 12}
    minima = [c for c in payload["components"] if c["index"] == 0]
    assert len(minima) == 1 and minima[0]["multiplicity"] == 8


def test_lens_exterior_z_override(lens_doc):
    code, out, _ = invoke("critical", "--z", "9,9", lens_doc)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["z"] == [9.0, 9.0]
    assert len(payload["components"]) == 2
    code, out, _ = invoke("morse-poly", "--z", "9,9", lens_doc)
    assert json.loads(out)["payload"]["polynomial"] == [1, 0, 0, 0, 1]  # 1 + t^(3+3-2)


def test_output_is_byte_identical(hex_doc, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert invoke("critical", "--out", str(a), hex_doc)[0] == 0
    assert invoke("critical", "--out", str(b), hex_doc)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_seeded_default_z_is_reproducible(lens_doc):
    runs = [invoke("critical", "--seed", "4", lens_doc)[1] for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["payload"]["z"] is not None


def test_missing_field_exits_one(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"feet": [[0, 0]]}))
    code, out, err = invoke("validate", str(path))
    assert code == cli.EXIT_INPUT
    assert out == ""
    assert "legs" in err


def test_bad_json_and_missing_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert invoke("validate", str(path))[0] == cli.EXIT_INPUT
    assert invoke("validate", str(tmp_path / "absent.json"))[0] == cli.EXIT_INPUT


def test_usage_errors_exit_one(hex_doc):
    assert invoke("critical", "--z", "1", hex_doc)[0] == cli.EXIT_INPUT
    assert invoke("no-such-command", hex_doc)[0] == cli.EXIT_INPUT
    assert invoke("critical", "--potential", "hooke", hex_doc)[0] == cli.EXIT_INPUT


def test_certified_z_on_foot_exits_two(hexagonal, tmp_path):
    foot = [float(c) for c in hexagonal.mechanism.feet_array[0]]
    path = write_doc(tmp_path, hexagonal.mechanism)
    code, _, err = invoke("critical", "--certified", "--z", f"{foot[0]!r},{foot[1]!r}", path)
    assert code == cli.EXIT_GENERICITY
    assert "genericity" in err
    # without --certified the same input is analysed and the violation reported
    code, out, _ = invoke("validate", "--z", f"{foot[0]!r},{foot[1]!r}", path)
    assert code == 0
    assert "3" in json.loads(out)["genericity"]["codes"]


def test_hooke_potential(tmp_path):
    mech = instances.lens(3, 3)
    path = write_doc(tmp_path, mech, weights=[1.0, 2.0])
    code, out, _ = invoke("morse-poly", "--potential", "hooke", path)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["total_weight"] == 3.0
    assert payload["value_at_minus_one"] == 2  # 1 + (-1)^(3+3)


def svg_elements(text, cls):
    root = ET.fromstring(text)
    return [e for e in root.iter() if cls in (e.get("class") or "").split()]


def test_workspace_svg_matches_report(hex_doc, tmp_path):
    fig = tmp_path / "ws.svg"
    code, out, _ = invoke("workspace", "--svg", str(fig), hex_doc)
    assert code == 0
    ws = json.loads(out)["payload"]["workspace"]
    text = fig.read_text()
    assert len(svg_elements(text, "face")) == len(ws["faces"])
    assert len(svg_elements(text, "arc")) == len(ws["arcs"])
    assert len(svg_elements(text, "vertex")) == len(ws["vertices"])
    assert len(svg_elements(text, "critical-circle")) == len(ws["circles"])
    assert [int(e.get("data-chi")) for e in svg_elements(text, "face")] == [f["chi"] for f in ws["faces"]]


def test_critical_svg_labels(hex_doc, tmp_path):
    fig = tmp_path / "crit.svg"
    code, out, _ = invoke("critical", "--svg", str(fig), hex_doc)
    assert code == 0
    comps = json.loads(out)["payload"]["components"]
    points = svg_elements(fig.read_text(), "critical-point")
    assert len(points) == len(comps)
    assert sorted(int(p.get("data-index")) for p in points) == sorted(c["index"] for c in comps)


def test_voronoi_commands(voronoi_tripod, tmp_path):
    path = write_doc(tmp_path, voronoi_tripod.mechanism)
    fig = tmp_path / "vor.svg"
    code, out, _ = invoke("critical", "--potential", "voronoi", "--svg", str(fig), path)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["voronoi"]["contributions"] == {"0": 4, "1": 36, "2": 22}
    assert svg_elements(fig.read_text(), "voronoi-edge")
    assert len(svg_elements(fig.read_text(), "non-isolated")) == 2
    code, out, _ = invoke("morse-poly", "--potential", "voronoi", "--morsify", path)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["value_at_minus_one"] == workspace.euler_via_strata(voronoi_tripod.mechanism).value


def test_voronoi_plane_equilateral(tmp_path):
    mech = instances.lens(2, 2)
    doc = {**mech.to_document(), "feet": instances.equilateral_feet(1 / 3 ** 0.5).tolist(),
           "legs": [[1.0, 0.5]] * 3}
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(doc))
    code, out, _ = invoke("voronoi-plane", str(path))
    assert code == 0
    payload = json.loads(out)["payload"]
    assert len(payload["minima"]) == 3
    assert len(payload["saddles"]) == 3
    assert len(payload["maxima"]) == 1
    assert payload["euler"] == 1


@pytest.mark.slow
def test_oracle_verify(hex_doc):
    code, out, _ = invoke("oracle", "verify", "--starts", "1000", hex_doc)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["comparison"]["all_matched"] is True
