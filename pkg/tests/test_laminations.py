import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pacgraph.errors import Inessential, InvalidWalk, NotSimple
from pacgraph.laminations import (arc_from_json, arcs_up_to_weight, decode, disjoint, edge_arc,
                                  intersection_number, pull_back, tighten, transport_path)
from pacgraph.surface import base_triangulation, build_surface, iter_flippable


def frame(g, b):
    return base_triangulation(build_surface(g, [f"p{i}" for i in range(b)]))


def compositions(n, total):
    if n == 0:
        yield ()
        return
    for v in range(total + 1):
        for rest in compositions(n - 1, total - v):
            yield (v,) + rest


def decode_everything(f, weight):
    """Every arc obtained by decoding a coordinate vector with a pair of endpoint sectors."""
    found = set()
    corners = [(t, c) for t in range(f.n_triangles) for c in range(3)]
    for x in compositions(f.n_edges, weight):
        for i, s0 in enumerate(corners):
            for s1 in corners[i:]:
                try:
                    found.add(decode(f, x, [s0, s1]))
                except (InvalidWalk, NotSimple, Inessential):
                    pass
    return found


@pytest.mark.parametrize("g,b,w", [(0, 4, 4), (1, 1, 5), (1, 2, 3), (0, 5, 3), (2, 1, 2)])
def test_enumeration_matches_decoding_oracle(g, b, w):
    f = frame(g, b)
    assert set(arcs_up_to_weight(f, w)) == decode_everything(f, w)


def test_pants_has_six_arcs():
    arcs = arcs_up_to_weight(frame(0, 3), 8)
    assert len(arcs) == 6
    assert sum(a.is_loop for a in arcs) == 3


def test_edges_are_weight_zero_and_disjoint():
    f = frame(1, 2)
    edges = [edge_arc(f, e) for e in range(f.n_edges)]
    assert all(a.weight == 0 and a.is_edge for a in edges)
    assert all(disjoint(a, b) for a, b in itertools.combinations(edges, 2))


@pytest.mark.parametrize("g,b,w", [(0, 5, 3), (1, 2, 4), (2, 1, 3)])
def test_intersection_is_symmetric(g, b, w):
    arcs = arcs_up_to_weight(frame(g, b), w)
    rng = random.Random(0)
    for a, c in (rng.sample(arcs, 2) for _ in range(200)):
        assert intersection_number(a, c) == intersection_number(c, a)
        assert disjoint(a, c) == (intersection_number(a, c) == 0)
        assert intersection_number(a, a) == 0


@pytest.mark.parametrize("g,b", [(0, 5), (1, 2), (2, 1)])
def test_json_round_trip(g, b):
    f = frame(g, b)
    for a in arcs_up_to_weight(f, 3):
        assert arc_from_json(f, a.to_json()) == a


ARCS = {shape: arcs_up_to_weight(frame(*shape), 4) for shape in [(0, 5), (1, 2), (1, 3)]}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ARCS)), st.data())
def test_flips_preserve_intersection(shape, data):
    arcs = ARCS[shape]
    a = data.draw(st.sampled_from(arcs))
    b = data.draw(st.sampled_from(arcs))
    picks = data.draw(st.lists(st.integers(0, 10 ** 6), max_size=6))
    t, flips = a.frame, []
    for k in picks:
        choices = list(iter_flippable(t))
        e = choices[k % len(choices)]
        flips.append(e)
        t = t.flip(e)
    a2, b2 = transport_path(a, flips), transport_path(b, flips)
    assert a2.endpoints == a.endpoints
    assert intersection_number(a2, b2) == intersection_number(a, b)
    if flips:
        assert pull_back(a2, a.frame, flips) == a


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ARCS)), st.data())
def test_tighten_makes_an_edge(shape, data):
    a = data.draw(st.sampled_from(ARCS[shape]))
    t, e, flips = tighten(a)
    moved = transport_path(a, flips) if flips else a
    assert moved.is_edge and moved.edge == e and moved.frame == t
