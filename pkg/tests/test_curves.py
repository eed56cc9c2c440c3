import pytest
from hypothesis import given, settings, strategies as st

from pacgraph.curves import (crossing_number, curve_around_arc, curve_intersection, curve_sides,
                             loop_pushoffs, transport_curve_path, twist_arc)
from pacgraph.errors import PacError
from pacgraph.laminations import arcs_up_to_weight, intersection_number, transport_path
from pacgraph.surface import base_triangulation, build_surface, iter_flippable

SHAPES = [(0, 5), (1, 2), (2, 1), (1, 3)]
FRAMES = {sh: base_triangulation(build_surface(sh[0], [f"p{i}" for i in range(sh[1])]))
          for sh in SHAPES}
ARCS = {sh: arcs_up_to_weight(f, 3) for sh, f in FRAMES.items()}


def curves_of(shape):
    arcs = ARCS[shape]
    out = [curve_around_arc(a) for a in arcs if not a.is_loop][:12]
    out += [c for a in arcs if a.is_loop for c in loop_pushoffs(a)][:12]
    return out


CURVES = {sh: curves_of(sh) for sh in SHAPES}


def test_loop_needs_pushoffs():
    loop = next(a for a in ARCS[(1, 2)] if a.is_loop)
    with pytest.raises(PacError):
        curve_around_arc(loop)
    with pytest.raises(PacError):
        loop_pushoffs(next(a for a in ARCS[(1, 2)] if not a.is_loop))


@pytest.mark.parametrize("shape", SHAPES)
def test_curve_around_arc_misses_the_arc(shape):
    for a in ARCS[shape]:
        if not a.is_loop:
            assert crossing_number(curve_around_arc(a), a) == 0


def test_sides_of_a_curve_around_an_arc():
    for a in (x for x in ARCS[(0, 5)] if not x.is_loop):
        sides = curve_sides(curve_around_arc(a))
        assert len(sides) == 2
        small = next(s for s in sides if set(s.labels) == set(a.endpoints))
        assert small.genus == 0 and small.copies == 1
        assert sum(s.euler_char for s in sides) == -3


@pytest.mark.parametrize("shape", SHAPES)
def test_sides_add_up(shape):
    g, b = shape
    for c in CURVES[shape]:
        sides = curve_sides(c)
        assert sum(s.euler_char for s in sides) == 2 - 2 * g - b
        assert sorted(x for s in sides for x in s.labels) == [f"p{i}" for i in range(b)]
        if len(sides) == 1:
            assert sides[0].copies == 2 and sides[0].genus == g - 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SHAPES), st.data())
def test_twist_identities(shape, data):
    c = data.draw(st.sampled_from(CURVES[shape]))
    a = data.draw(st.sampled_from(ARCS[shape]))
    k = crossing_number(c, a)
    t = twist_arc(c, a)
    assert twist_arc(c, t, -1) == a
    assert crossing_number(c, t) == k
    assert t.endpoints == a.endpoints
    # for curves this is exactly k^2; the two ends of an arc lose at most two crossings
    assert max(0, k * k - 2) <= intersection_number(t, a) <= max(0, k * k - 1)
    if k == 0:
        assert t == a


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SHAPES), st.data())
def test_twists_about_disjoint_curves_commute(shape, data):
    c = data.draw(st.sampled_from(CURVES[shape]))
    others = [d for d in CURVES[shape] if curve_intersection(c, d) == 0]
    d = data.draw(st.sampled_from(others))
    a = data.draw(st.sampled_from(ARCS[shape]))
    assert twist_arc(c, twist_arc(d, a)) == twist_arc(d, twist_arc(c, a))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SHAPES), st.data())
def test_crossings_survive_flips(shape, data):
    c = data.draw(st.sampled_from(CURVES[shape]))
    a = data.draw(st.sampled_from(ARCS[shape]))
    picks = data.draw(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=5))
    t, flips = c.frame, []
    for k in picks:
        choices = list(iter_flippable(t))
        flips.append(choices[k % len(choices)])
        t = t.flip(flips[-1])
    c2, a2 = transport_curve_path(c, flips), transport_path(a, flips)
    assert crossing_number(c2, a2) == crossing_number(c, a)
    assert curve_sides(c2) == curve_sides(c)
