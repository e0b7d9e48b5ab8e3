import numpy as np
import pytest
from hypothesis import given, strategies as st

from spiderlink import instances, morse, polynomial, polyspace, workspace
from spiderlink.errors import GenericityViolation, MissingBetti, UnsupportedFibers
from spiderlink.mechanism import random_generic_point

from conftest import generic_instances


def test_hexagonal_counts(hexagonal):
    comps = morse.enumerate_critical(hexagonal.mechanism, hexagonal.z)
    assert morse.index_histogram(comps) == {0: 8, 1: 24, 2: 12}
    by_case = {}
    for c in comps:
        by_case[(c.case, c.index)] = by_case.get((c.case, c.index), 0) + c.multiplicity
    assert by_case == {(morse.BODY_AT_Z, 0): 8, (morse.ONE_ALIGNED, 1): 24, (morse.TWO_ALIGNED, 2): 12}
    poly = morse.morse_bott_polynomial(comps)
    assert poly.coefficients == (8, 24, 12)
    assert morse.euler_from_morse(poly) == -4


def test_lens_exterior_has_one_minimum_and_one_maximum():
    m = instances.lens(3, 4)
    comps = morse.enumerate_critical(m, instances.lens_exterior_z(m))
    assert sorted(c.index for c in comps) == [0, 5]
    assert morse.morse_bott_polynomial(comps).coefficients == (1, 0, 0, 0, 0, 1)


def test_certified_mode_rejects_z_on_a_foot():
    m = instances.lens(2, 3)
    with pytest.raises(GenericityViolation):
        morse.analyze(m, m.feet[0], certified=True)
    enum = morse.analyze(m, m.feet[0], certified=False)
    assert "3" in enum.report.codes()


def test_two_aligned_coefficients_reconstruct():
    a_i, a_j = np.array([0.0, 0.0]), np.array([3.0, 0.5])
    x, z = np.array([1.2, 1.7]), np.array([-0.4, 0.3])
    c = morse.two_aligned_coefficients(a_i, a_j, x, z)
    e_i = (x - a_i) / np.linalg.norm(x - a_i)
    e_j = (x - a_j) / np.linalg.norm(x - a_j)
    assert np.allclose(c[0] * e_i + c[1] * e_j, x - z)


def test_dualize_is_an_involution(hexagonal):
    m = hexagonal.mechanism
    for c in morse.enumerate_critical(m, hexagonal.z):
        d = morse.dualize(c, m.dim)
        assert morse.dualize(d, m.dim) == c
        assert 0 <= d.index <= m.dim - d.dim


def test_missing_betti():
    degenerate = polyspace.describe((1, 1, 2))
    assert not degenerate.generic
    comp = morse.CriticalComponent(case=morse.BODY_AT_Z, x=(0.0, 0.0), index=0, factors=(degenerate,))
    assert comp.poincare is None
    with pytest.raises(MissingBetti):
        morse.morse_bott_polynomial([comp])


def test_betti_bounds_on_lens():
    m = instances.lens(3, 3)
    zs = [instances.lens_interior_z(m), instances.lens_exterior_z(m)]
    bb = morse.betti_bounds(m, zs, reference=(1, 0, 0, 0, 1))
    assert bb.bounds == (1, 0, 0, 0, 1)
    assert bb.perfect


@pytest.mark.parametrize("seed", range(10))
def test_z_independence_and_strata(seed):
    (m, z), = generic_instances(500 + seed, 1, n_choices=(1, 2, 3), p_choices=(2, 3))
    rng = np.random.default_rng(seed)
    try:
        chi = workspace.euler_via_strata(m).value
    except UnsupportedFibers:
        chi = None
    values = set()
    for _ in range(4):
        z = random_generic_point(m, rng)
        comps = morse.enumerate_critical(m, z)
        assert morse.certified_dim(comps) <= m.dim
        values.add(morse.euler_from_morse(morse.morse_bott_polynomial(comps)))
    assert len(values) == 1
    if chi is not None:
        assert values == {chi}


@pytest.mark.parametrize("seed", range(10))
def test_morse_inequalities_lower_bound_is_consistent(seed):
    """``P(t) - P(-1)`` stays even at ``t = 1``: the ``(1 + t) Q(t)`` term."""
    (m, z), = generic_instances(600 + seed, 1, n_choices=(1, 2, 3))
    poly = morse.morse_bott_polynomial(morse.enumerate_critical(m, z))
    assert (poly(1) - poly(-1)) % 2 == 0
    assert all(c >= 0 for c in poly.coefficients)


@given(st.integers(0, 2**16))
def test_sort_is_stable_and_deterministic(seed):
    (m, z), = generic_instances(seed, 1)
    a = morse.enumerate_critical(m, z)
    b = morse.enumerate_critical(m, z)
    assert [c.key() for c in a] == [c.key() for c in b]
    assert [c.sort_key() for c in a] == sorted(c.sort_key() for c in a)


def test_component_dict_round_numbers(hexagonal):
    comps = morse.enumerate_critical(hexagonal.mechanism, hexagonal.z)
    d = comps[0].to_dict()
    assert d["case"] == morse.BODY_AT_Z and d["poincare"] == [8] and d["multiplicity"] == 8
    assert polynomial.evaluate(tuple(d["poincare"]), -1) == 8
