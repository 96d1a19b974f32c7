"""Surface construction, Euler counts, cutting and intersections."""
from fractions import Fraction as F

import pytest

from obtri.combmap import DiagramError, NotDisjointError
from obtri.drawing import Draw, circle_between, parallel_cycle, tube_hop
from obtri.surfaces import (
    algebraic_intersection,
    assert_simple,
    build_surface,
    compile_surface,
    cut_along,
    euler_genus_boundary,
    face_crossings,
    geometric_intersection,
)


def torus():
    return build_surface(1, tubes=[((0, "a"), (0, "b"), 0)])


def torus_curves(m):
    d = Draw(m)
    mer = circle_between(d, "aux", "mer", "s0", (F(1), -1), (F(1), 1))
    pb = d.path("aux", "lon")
    tube_hop(d, pb, "s0.a")
    lon = pb.done()
    return d, mer, lon


def test_bare_sphere():
    s = compile_surface(build_surface(1))
    assert euler_genus_boundary(s) == (2, [0], [0])


def test_one_handle_torus():
    s = compile_surface(torus())
    assert euler_genus_boundary(s) == (0, [1], [0])


def test_three_sphere_cycle():
    # chi = 3*2 - 2*3 = 0, one genus-1 component
    m = build_surface(
        3,
        tubes=[
            ((0, "a"), (1, "a"), 0),
            ((1, "b"), (2, "a"), 0),
            ((2, "b"), (0, "b"), 0),
        ],
    )
    s = compile_surface(m)
    assert euler_genus_boundary(s) == (0, [1], [0])


def test_annulus_and_sphere_sum():
    s = compile_surface(build_surface(1, boundary_holes=[(0, "h1"), (0, "h2")]))
    assert euler_genus_boundary(s) == (0, [0], [2])
    s = compile_surface(build_surface(2, tubes=[((0, "a"), (1, "a"), 0)]))
    assert euler_genus_boundary(s) == (2, [0], [0])


def test_genus_two_and_disconnected():
    m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0), ((0, "c"), (0, "d"), 0)])
    assert euler_genus_boundary(compile_surface(m)) == (-2, [2], [0])
    m = build_surface(2, tubes=[((0, "a"), (0, "b"), 0)])
    assert euler_genus_boundary(compile_surface(m)) == (2, [1, 0], [0, 0])


def test_region_reuse_rejected():
    with pytest.raises(DiagramError):
        build_surface(1, tubes=[((0, "a"), (0, "a"), 0)])
    with pytest.raises(DiagramError):
        build_surface(
            1, tubes=[((0, "a"), (0, "b"), 0)], boundary_holes=[(0, "a")]
        )


def test_framing_does_not_change_surface():
    for f in (-2, -1, 1, 3):
        m = build_surface(1, tubes=[((0, "a"), (0, "b"), f)])
        assert euler_genus_boundary(compile_surface(m)) == (0, [1], [0])


def test_meridian_longitude():
    m = torus()
    d, mer, lon = torus_curves(m)
    assert_simple(m, mer)
    assert_simple(m, lon)
    assert abs(algebraic_intersection(m, mer, lon)) == 1
    assert algebraic_intersection(m, mer, lon) == -algebraic_intersection(
        m, lon, mer
    )
    assert geometric_intersection(m, mer, lon) == 1


def test_parallel_curves_are_disjoint():
    m = torus()
    d, mer, lon = torus_curves(m)
    mer2 = parallel_cycle(d, mer, "R", "aux", "mer2")
    lon2 = parallel_cycle(d, lon, "L", "aux", "lon2")
    assert geometric_intersection(m, mer, mer2) == 0
    assert geometric_intersection(m, lon, lon2) == 0
    assert algebraic_intersection(m, mer2, lon2) in (1, -1)


def test_cut_torus_along_meridian():
    m = torus()
    d, mer, lon = torus_curves(m)
    cut = cut_along(m, [mer])
    assert euler_genus_boundary(cut) == (0, [0], [2])
    cut = cut_along(m, [lon])
    assert euler_genus_boundary(cut) == (0, [0], [2])


def test_cut_genus2_full_system():
    # a two-curve cut system on a genus-2 surface leaves a 4-holed sphere
    m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0), ((0, "c"), (0, "d"), 0)])
    d = Draw(m)
    pb = d.path("aux", "l1")
    tube_hop(d, pb, "s0.a")
    l1 = pb.done()
    pb = d.path("aux", "l2")
    tube_hop(d, pb, "s0.c")
    l2 = pb.done()
    cut = cut_along(m, [l1, l2])
    chi, genus, bnd = euler_genus_boundary(cut)
    assert chi == -2 and genus == [0] and bnd == [4]


def test_cut_separating_curve_disconnects():
    m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0), ((0, "c"), (0, "d"), 0)])
    d = Draw(m)
    # circle around the first tube's pair of feet separates the handles
    sep = circle_between(d, "aux", "sep", "s0", (F(1), -1), (F(2), 1))
    cut = cut_along(m, [sep])
    chi, genus, bnd = euler_genus_boundary(cut)
    assert sorted(genus) == [1, 1] and sorted(bnd) == [1, 1] and chi == -2


def test_cut_rejects_crossing_curves():
    m = torus()
    d, mer, lon = torus_curves(m)
    with pytest.raises(NotDisjointError):
        cut_along(m, [mer, lon])


def test_compile_chi_invariant_with_crossings():
    m = torus()
    d, mer, lon = torus_curves(m)
    s = compile_surface(m, [mer, lon])
    assert s.euler_characteristic() == 0
    assert "crossing" in s.vertex_kind


def test_compile_deterministic():
    m = torus()
    d, mer, lon = torus_curves(m)
    s1 = compile_surface(m, [mer, lon])
    s2 = compile_surface(m, [mer, lon])
    assert s1.face_next == s2.face_next
    assert s1.rotation == s2.rotation
    assert s1.edge_label == s2.edge_label
