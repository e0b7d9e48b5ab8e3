import numpy as np
import pytest
from hypothesis import given, strategies as st

from spiderlink import hooke, instances, morse
from spiderlink.errors import ZeroTotalWeight

FEET = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])


def test_unit_weights():
    red = hooke.reduce(FEET, (1, 1, 1))
    assert np.allclose(red.centroid, (2 / 3, 2 / 3))
    assert red.scale == 3
    assert red.offset == pytest.approx(16 / 3, abs=1e-14)


def test_single_weight_is_a_foot():
    red = hooke.reduce(FEET, (1, 0, 0))
    assert red.centroid == (0.0, 0.0) and red.offset == 0.0


def test_mixed_signs():
    red = hooke.reduce(FEET, (1, 1, -1))
    assert np.allclose(red.centroid, (2, -2)) and red.scale == 1


def test_zero_total_weight():
    with pytest.raises(ZeroTotalWeight):
        hooke.reduce(FEET, (1, -1, 0))


weights = st.lists(st.floats(-5, 5), min_size=3, max_size=3).filter(lambda w: abs(sum(w)) > 0.1)


@given(weights, st.integers(0, 2**16))
def test_identity(w, seed):
    red = hooke.reduce(FEET, w)
    x = np.random.default_rng(seed).uniform(-4, 4, (1000, 2))
    scale = 4.0
    assert np.max(np.abs(hooke.energy(FEET, w, x) - red.energy(x))) < 1e-12 * scale * max(1.0, np.abs(w).sum())


def test_equivalence_with_centroid(hexagonal):
    m = hexagonal.mechanism
    comps = hooke.hooke_critical(m, (1, 1, 1))
    ref = morse.enumerate_critical(m, hooke.reduce(m.feet_array, (1, 1, 1)).centroid)
    assert [c.key(6) for c in comps] == [c.key(6) for c in ref]
    assert [c.index for c in comps] == [c.index for c in ref]
    for c in comps:
        assert c.value == pytest.approx(hooke.energy(m.feet_array, (1, 1, 1), c.x))


def lens_axis_weights(m, s, x_target):
    d = m.feet_array[1, 0]
    w2 = s * x_target / d
    return (s - w2, w2)


def test_negative_total_weight_swaps_min_and_max():
    m = instances.lens(2, 3)
    X = m.feet_array[1, 0] + 5.3
    pos = hooke.hooke_critical(m, lens_axis_weights(m, 1.0, X))
    neg = hooke.hooke_critical(m, lens_axis_weights(m, -1.0, X))
    assert [c.key(6) for c in pos] == [c.key(6) for c in neg]
    assert [c.index for c in neg] == [m.dim - c.dim - c.index for c in pos]
    # z on the axis: minimum circle at one tip, two corners, maximum at the other tip
    p_pos = morse.morse_bott_polynomial(pos).coefficients
    assert p_pos == (1, 1, 2, 2)
    # every component is a closed manifold, so dualizing reverses the polynomial
    assert morse.morse_bott_polynomial(neg).coefficients == tuple(reversed(p_pos))


def test_foot_weight_is_flagged():
    m = instances.lens(2, 3)
    enum = morse.analyze(m, hooke.reduce(m.feet_array, (1, 0)).centroid)
    assert "3" in enum.report.codes()
