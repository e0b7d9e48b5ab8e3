import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spiderlink import mechanism as M
from spiderlink.errors import DuplicateFeet, InputError, LegTooShort, NonpositiveLength


def tripod():
    return M.validate({"feet": [[0, 0], [2, 0], [1, 1.5]], "legs": [[1.1, 0.8], [0.9, 1.2], [1.2, 0.9]]})


def test_dimension_formula():
    assert tripod().dim == 2
    m = M.validate({"feet": [[0, 0], [3, 0]], "legs": [[1, 1, 1], [1, 1]]})
    assert m.dim == 3
    assert M.validate({"feet": [[0, 0]], "legs": [[1, 2, 3]]}).dim == 3


@pytest.mark.parametrize("doc, err", [
    ({"feet": [[0, 0]]}, InputError),
    ({"feet": [[0, 0], [0, 0]], "legs": [[1, 1], [1, 1]]}, DuplicateFeet),
    ({"feet": [[0, 0]], "legs": [[1]]}, LegTooShort),
    ({"feet": [[0, 0]], "legs": [[1, -1]]}, NonpositiveLength),
    ({"feet": [[0, 0]], "legs": [[1, 1], [1, 1]]}, InputError),
    ({"feet": [[0, 0, 0]], "legs": [[1, 1]]}, InputError),
])
def test_validation_errors(doc, err):
    with pytest.raises(err):
        M.validate(doc)


def test_unknown_field_rejected():
    with pytest.raises(InputError, match="unknown"):
        M.parse_document({"feet": [[0, 0]], "legs": [[1, 1]], "colour": "red"})


def test_document_overrides():
    doc = M.parse_document({"feet": [[0, 0], [1, 0]], "legs": [[1, 1], [1, 1]], "z": [0.5, 0.1],
                            "weights": [1, 2], "seed": 4})
    assert doc.z == (0.5, 0.1) and doc.weights == (1.0, 2.0) and doc.mechanism.seed == 4
    with pytest.raises(InputError):
        M.parse_document({"feet": [[0, 0]], "legs": [[1, 1]], "weights": [1, 2]})


def test_roundtrip(tmp_path):
    m = tripod()
    path = tmp_path / "m.json"
    path.write_text(M.serialize(m))
    assert M.load_document(path).mechanism == m
    path.write_text("{not json")
    with pytest.raises(InputError):
        M.load_document(path)


def test_zones_and_workspace():
    m = tripod()
    assert m.zones[0].inner == pytest.approx(0.3) and m.zones[0].outer == pytest.approx(1.9)
    assert m.in_workspace((1, 0.5))
    assert not m.in_workspace((5, 5))


def test_genericity_codes():
    m = tripod()
    assert "3" in M.strong_genericity_report(m, (0, 0)).codes()
    # z on the outer circle of leg 0
    assert "4" in M.strong_genericity_report(m, (0.0, 1.9)).codes()
    # two equal 2-edge legs: zero radius circle with the foot inside W
    m = M.validate({"feet": [[0, 0], [1, 0]], "legs": [[1, 1], [1, 1]]})
    assert "1c" in M.strong_genericity_report(m).codes()
    # outer circles of two legs tangent inside W
    m = M.validate({"feet": [[0, 0], [4, 0]], "legs": [[1.5, 0.5], [1.2, 0.8]]})
    assert "1b" in M.strong_genericity_report(m).codes()


def test_concurrent_circles():
    # three outer circles through the origin's neighbour point (1, 0)
    feet = [[0, 0], [2, 0], [1, 1]]
    m = M.validate({"feet": feet, "legs": [[0.7, 0.3], [0.6, 0.4], [0.8, 0.2]]})
    assert "1a" in M.strong_genericity_report(m).codes()


def test_z_on_aligned_line():
    m = M.validate({"feet": [[0, 0], [1.5, 0]], "legs": [[0.6, 0.4], [0.7, 0.5]]})
    x = next(x for _, _, _, _, x in M.aligned_pairs(m))
    z = 2.5 * np.asarray(x)
    assert "2" in M.strong_genericity_report(m, z).codes()


@given(st.integers(0, 10_000))
def test_random_mechanisms_validate(seed):
    rng = np.random.default_rng(seed)
    m = M.random_mechanism(rng, 3, [2, 3, 2])
    assert m.p == (2, 3, 2)
    assert m.dim == 2 - 6 + 7
    assert json.loads(M.serialize(m))["legs"] == [list(l) for l in m.legs]


def test_random_generic_point_is_certified():
    m = tripod()
    z = M.random_generic_point(m, 3, inside=True)
    assert m.in_workspace(z)
    assert M.strong_genericity_report(m, z).certified
