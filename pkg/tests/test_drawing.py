"""The rewrite engine: Dehn twists, parallels, finger moves."""
from fractions import Fraction as F

import pytest

from obtri.drawing import (
    Draw,
    circle_between,
    dehn_twist,
    finger_clean,
    parallel_cycle,
    tube_hop,
)
from obtri.homology import PairingBasis
from obtri.surfaces import (
    Curve,
    Port,
    build_surface,
    face_crossings,
    geometric_intersection,
    build_surface as _bs,
)


def torus_setup():
    m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0)])
    d = Draw(m)
    mer = circle_between(d, "aux", "mer", "s0", (F(1), -1), (F(1), 1))
    pb = d.path("aux", "lon")
    tube_hop(d, pb, "s0.a")
    lon = pb.done()
    return m, d, mer, lon


def as_aux(d, key):
    """Remove a drawn curve but keep its slots reserved (twist circles)."""
    c = d.remove(key)
    for p in c.ports:
        d._register(p.edge, p.slot)
    return c


def test_twist_single_crossing_both_hands():
    for handed in (1, -1):
        m, d, mer, lon = torus_setup()
        ref = parallel_cycle(d, mer, "L", "aux", "ref")
        lon = as_aux(d, ("aux", "lon"))
        dehn_twist(d, lon, handed, keys=[("aux", "mer")])
        tm = d.curves[("aux", "mer")]
        assert not face_crossings(m, [tm])
        assert geometric_intersection(m, tm, lon) == 1
        assert geometric_intersection(m, tm, ref) == 1


def test_twist_powers_accumulate():
    m, d, mer, lon = torus_setup()
    ref = parallel_cycle(d, mer, "L", "aux", "ref")
    lon = as_aux(d, ("aux", "lon"))
    for k in (1, 2, 3):
        dehn_twist(d, lon, +1, keys=[("aux", "mer")])
        tm = d.curves[("aux", "mer")]
        assert not face_crossings(m, [tm])
        assert geometric_intersection(m, tm, ref) == k
        assert geometric_intersection(m, tm, lon) == 1


def test_twist_class_formula():
    # [T_c(g)] = [g] + (g.c)[c] up to the fixed handedness convention
    m, d, mer, lon = torus_setup()
    lon_aux = as_aux(d, ("aux", "lon"))
    dehn_twist(d, lon_aux, +1, keys=[("aux", "mer")])
    tm = d.curves[("aux", "mer")]
    cls = PairingBasis(m, [tm]).class_of(tm)
    assert sorted(abs(x) for x in cls) == [1, 1]


def test_twist_keeps_disjoint_families_disjoint():
    for handed in (1, -1):
        m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0)])
        d = Draw(m)
        keys = []
        for i in range(4):
            pb = d.path("aux", f"l{i}")
            tube_hop(d, pb, "s0.a")
            pb.done()
            keys.append(("aux", f"l{i}"))
        mer = circle_between(d, "aux", "mer", "s0", (F(1), -1), (F(1), 1))
        mer = as_aux(d, ("aux", "mer"))
        dehn_twist(d, mer, handed, keys=keys)
        cs = [d.curves[k] for k in keys]
        for c in cs:
            assert not face_crossings(m, [c])
            assert geometric_intersection(m, c, mer) == 1
        for i in range(4):
            for j in range(i + 1, 4):
                assert geometric_intersection(m, cs[i], cs[j]) == 0


def test_twist_mixed_signs():
    for handed in (1, -1):
        m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0)])
        d = Draw(m)
        mer = circle_between(d, "aux", "mer", "s0", (F(1), -1), (F(1), 1))
        mer = as_aux(d, ("aux", "mer"))
        zig = Curve(
            "aux",
            "zig",
            (
                Port(("spine", "s0"), F(8, 5), ("L", "s0")),
                Port(("spine", "s0"), F(9, 10), ("U", "s0")),
            ),
        )
        d.add(zig)
        pb = d.path("aux", "lon")
        tube_hop(d, pb, "s0.a")
        lon = pb.done()
        assert geometric_intersection(m, zig, mer) == 2
        dehn_twist(d, mer, handed, keys=[("aux", "zig"), ("aux", "lon")])
        tz = d.curves[("aux", "zig")]
        tl = d.curves[("aux", "lon")]
        assert not face_crossings(m, [tz])
        assert not face_crossings(m, [tl])
        assert geometric_intersection(m, tz, tl) == 1
        assert geometric_intersection(m, tz, mer) == 2
        assert geometric_intersection(m, tl, mer) == 1


def test_twist_inverse_restores_class():
    m, d, mer, lon = torus_setup()
    ref = parallel_cycle(d, mer, "L", "aux", "ref")
    lon = as_aux(d, ("aux", "lon"))
    dehn_twist(d, lon, +1, keys=[("aux", "mer")])
    dehn_twist(d, lon, -1, keys=[("aux", "mer")])
    tm = d.curves[("aux", "mer")]
    assert not face_crossings(m, [tm])
    cls = PairingBasis(m, [tm, ref]).class_of(tm)
    assert sorted(abs(x) for x in cls) == [0, 1]


def test_finger_clean_removes_mouth_crossings():
    # a circle blocking the mouth of a tube crossed by two strands
    m = build_surface(1, tubes=[((0, "a"), (0, "b"), 0)])
    d = Draw(m)
    pb = d.path("gamma", "q")
    tube_hop(d, pb, "s0.a")
    q = pb.done()
    ring = circle_between(d, "delta", "ring", "s0", (F(1), -1), (F(1), 1))
    assert geometric_intersection(m, ring, q) == 1
    moves = finger_clean(d, [("delta", "ring")], [("gamma", "q")])
    assert moves >= 1
    ring2 = d.curves[("delta", "ring")]
    assert not face_crossings(m, [ring2])
    assert geometric_intersection(m, ring2, d.curves[("gamma", "q")]) == 0
