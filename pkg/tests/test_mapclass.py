import pytest

from pacgraph.curves import curve_around_arc, loop_pushoffs, twist_arc
from pacgraph.errors import FrameMismatch, PacError
from pacgraph.explorer import ball
from pacgraph.laminations import arcs_up_to_weight, edge_arc
from pacgraph.mapclass import (MappingClass, compose, dehn_twist, from_edge_preimages, identity,
                               in_mod_gamma, iterate, orbit_growth, power)
from pacgraph.prescribing import cycle, loops
from pacgraph.surface import base_triangulation, build_surface

L5 = ["c", "v1", "v2", "v3", "v4"]
S05 = build_surface(0, L5)
BASE = base_triangulation(S05)
ARCS = arcs_up_to_weight(BASE, 3)
C1 = curve_around_arc(next(a for a in ARCS if a.endpoints == ("v1", "v3")))
C2 = curve_around_arc(next(a for a in ARCS if a.endpoints == ("c", "v2")))


def test_twist_class_acts_as_twist():
    m = dehn_twist(BASE, C1)
    assert m.is_pure
    for a in ARCS[:40]:
        assert m.apply(a) == twist_arc(C1, a)
        assert m.apply_inverse(m.apply(a)) == a


def test_identity_and_json():
    e = identity(BASE)
    assert all(e.apply(a) == a for a in ARCS[:20])
    m = dehn_twist(BASE, C2, 2)
    again = MappingClass.from_json(BASE, m.to_json())
    assert all(again.apply(a) == m.apply(a) for a in ARCS[:20])


def test_composition_and_powers():
    m1, m2 = dehn_twist(BASE, C1), dehn_twist(BASE, C2)
    both = compose(m2, m1)
    cube = power(m1, 3)
    back = power(m1, -1)
    for a in ARCS[:25]:
        assert both.apply(a) == m2.apply(m1.apply(a))
        assert cube.apply(a) == twist_arc(C1, a, 3)
        assert back.apply(a) == twist_arc(C1, a, -1)
    assert iterate(m1, ARCS[5], 2) == [ARCS[5], m1.apply(ARCS[5]), m1.apply(m1.apply(ARCS[5]))]


def test_edge_preimages_round_trip():
    m = dehn_twist(BASE, C2)
    pre = [m.apply_inverse(edge_arc(BASE, e)) for e in range(BASE.n_edges)]
    rebuilt = from_edge_preimages(BASE, pre)
    assert all(rebuilt.apply(a) == m.apply(a) for a in ARCS[:20])


def test_wrong_frame():
    other = base_triangulation(build_surface(1, ["w1", "w2"]))
    a = arcs_up_to_weight(other, 1)[0]
    with pytest.raises(FrameMismatch):
        dehn_twist(BASE, C1).apply(a)
    with pytest.raises(FrameMismatch):
        dehn_twist(other, C1)


def test_pure_classes_preserve_gamma():
    assert in_mod_gamma(dehn_twist(BASE, C1), cycle(L5))


def test_bad_closing_rejected():
    with pytest.raises(PacError):
        MappingClass(BASE, (), tuple((t, 1) for t in range(BASE.n_triangles)))


def test_orbit_growth_of_a_twist():
    s = build_surface(1, ["w1", "w2"])
    base = base_triangulation(s)
    loop = next(a for a in arcs_up_to_weight(base, 1) if a.is_loop)
    c = loop_pushoffs(loop)[0]
    m = dehn_twist(base, c)
    b = ball(s, loops(["w1", "w2"]), 6)
    start = next(v for v in b.vertices if v.weight > 0 and m.apply(v) != v)
    rep = orbit_growth(m, start, 2, b, smaller=ball(s, loops(["w1", "w2"]), 5))
    assert rep.distances[0] == 0 and not rep.escaped
    assert all(d >= 1 for d in rep.distances[1:])
    assert rep.to_json()["distances"] == list(rep.distances)
