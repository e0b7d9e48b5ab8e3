import itertools

import numpy as np
import pytest
from scipy import ndimage

from spiderlink import instances, morse, workspace
from spiderlink.errors import EmptyWorkspace, OutsideWorkspace, UnsupportedFibers
from spiderlink.geometry import tangency_gap
from spiderlink.mechanism import validate

from conftest import generic_instances


def raster_faces(mech, ws, res=1500, min_pixels=200):
    """``1 - holes`` for every open 2-dimensional stratum, read off a pixel
    grid: interior of ``W`` minus a thin band around every circle.  Feet in
    ``W`` lose a few pixels to the inner-radius band and show up as holes,
    which is what a puncture is."""
    f = mech.feet_array
    R = np.array([z.outer for z in mech.zones])
    lo, hi = (f - R[:, None]).min(axis=0), (f + R[:, None]).max(axis=0)
    xs = np.linspace(lo[0], hi[0], res)
    ys = np.linspace(lo[1], hi[1], res)
    X, Y = np.meshgrid(xs, ys)
    h = (hi - lo).max() / res
    inside = np.ones_like(X, dtype=bool)
    for i, z in enumerate(mech.zones):
        d = np.hypot(X - f[i, 0], Y - f[i, 1])
        inside &= (d > z.inner + 2 * h) & (d < z.outer - 2 * h)
    for c in ws.circles:
        d = np.hypot(X - c.center[0], Y - c.center[1])
        inside &= np.abs(d - c.radius) > 2 * h
    labels, count = ndimage.label(inside)
    sizes = ndimage.sum(inside, labels, range(1, count + 1))
    chis = []
    for k in range(1, count + 1):
        if sizes[k - 1] < min_pixels:  # slivers the raster cannot resolve
            continue
        comp = np.pad(labels == k, 1)
        _, holes = ndimage.label(~comp, structure=np.ones((3, 3)))
        chis.append(1 - (holes - 1))
    return sorted(chis), h


def test_lens():
    m = instances.lens(3, 3)
    ws = workspace.build(m)
    assert (len(ws.faces), len(ws.arcs), len(ws.vertices)) == (1, 2, 2)
    assert ws.faces[0].chi == 1
    assert ws.chi_c() == 1


def test_single_leg_annuli():
    m = validate({"feet": [[0, 0]], "legs": [[3, 1, 1]]})
    ws = workspace.build(m)
    assert len(ws.faces) == 2 and all(f.chi == 0 for f in ws.faces)
    assert len(ws.arcs) == 3 and all(a.full for a in ws.arcs)
    assert workspace.euler_via_strata(m).value == 0


def test_single_two_edge_leg_is_a_torus():
    m = validate({"feet": [[0, 0]], "legs": [[2, 1]]})
    assert workspace.euler_via_strata(m).value == 0


def test_hexagonal_region(hexagonal):
    ws = workspace.build(hexagonal.mechanism)
    assert len(ws.faces) == 1 and ws.faces[0].chi == 1
    assert len(ws.arcs) == 6 and len(ws.vertices) == 6
    assert workspace.euler_via_strata(hexagonal.mechanism).value == -4


def test_puncture_removed_from_face():
    m = validate({"feet": [[0, 0], [0.5, 0]], "legs": [[1.1, 0.8], [1, 1, 1]]})
    ws = workspace.build(m)
    assert ws.punctures == [1]
    assert sum(f.chi for f in ws.faces) == sum(1 - f.holes for f in ws.faces) - 1


def resolvable(m, ws, h):
    """Every circle pair and every foot-circle gap spans several pixels."""
    gaps = [tangency_gap(a.center, a.radius, b.center, b.radius)
            for a, b in itertools.combinations(ws.circles, 2)]
    gaps += [abs(np.linalg.norm(np.subtract(a, c.center)) - c.radius) for a in m.feet for c in ws.circles]
    return min(gaps, default=np.inf) > 8 * h


def raster_cases(count):
    out = []
    seed = 100
    while len(out) < count:
        (m, _), = generic_instances(seed, 1, n_choices=(2, 3), p_choices=(2, 3))
        seed += 1
        ws = workspace.build(m)
        chis, h = raster_faces(m, ws)
        if resolvable(m, ws, h):
            out.append((m, ws, chis, h))
    return out


def test_faces_match_raster():
    cases = raster_cases(8)
    assert sum(len(ws.faces) for _, ws, _, _ in cases) > 20
    for m, ws, chis, h in cases:
        assert chis == sorted(f.chi for f in ws.faces if f.area > 400 * h * h)


def test_empty_workspace():
    m = validate({"feet": [[0, 0], [10, 0]], "legs": [[1, 1], [1, 1.5]]})
    assert workspace.build(m).empty
    with pytest.raises(EmptyWorkspace):
        workspace.euler_via_strata(m)
    with pytest.raises(EmptyWorkspace):
        workspace.build(m, strict=True)


def test_fiber():
    m = instances.lens(2, 2)
    with pytest.raises(OutsideWorkspace):
        workspace.fiber(m, (100, 100))
    z = instances.lens_interior_z(m)
    fb = workspace.fiber(m, z)
    assert fb.dim == 0 and fb.chi == 4 and fb.poincare == (4,)


def test_unsupported_fibers():
    # a vertex on a critical circle of a 3-edge leg
    m = validate({"feet": [[0, 0], [3.5, 0]], "legs": [[3, 1, 1], [2, 0.5]]})
    with pytest.raises(UnsupportedFibers):
        workspace.euler_via_strata(m)


@pytest.mark.parametrize("seed", range(6))
def test_refinement_leaves_euler_unchanged(seed):
    (m, z), = generic_instances(200 + seed, 1, n_choices=(2, 3))
    ws = workspace.build(m, extra_circles=[(z, 0.37 * m.scale / 4)])
    assert workspace.euler_via_strata(m, ws).value == workspace.euler_via_strata(m).value


@pytest.mark.parametrize("seed", range(12))
def test_strata_agree_with_morse(seed):
    (m, z), = generic_instances(300 + seed, 1, n_choices=(1, 2, 3, 4))
    poly = morse.morse_bott_polynomial(morse.enumerate_critical(m, z))
    assert morse.euler_from_morse(poly) == workspace.euler_via_strata(m).value
