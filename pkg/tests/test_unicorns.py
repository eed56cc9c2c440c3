import random

import pytest
from hypothesis import given, settings, strategies as st

from pacgraph.errors import HypothesisViolated, NoSharedEdge
from pacgraph.explorer import ball
from pacgraph.laminations import disjoint, intersection_number
from pacgraph.prescribing import complete, cycle, loops, single_edge, star
from pacgraph.surface import build_surface
from pacgraph.unicorns import (disjoint_allowed_arc, distance_upper_bound, unicorn_path,
                               unicorn_set)

L5 = ["c", "v1", "v2", "v3", "v4"]
S05 = build_surface(0, L5)
BALL = ball(S05, complete(L5), 5)
LOOPS = ball(build_surface(2, ["w"]), loops(["w"]), 4)


def pairs(b, n, seed=0):
    rng = random.Random(seed)
    return [tuple(rng.sample(b.vertices, 2)) for _ in range(n)]


@pytest.mark.parametrize("b,g", [(BALL, complete(L5)), (LOOPS, loops(["w"]))])
def test_unicorn_path_is_a_short_path(b, g):
    for a, c in pairs(b, 60):
        try:
            path = unicorn_path(a, c, g)
        except NoSharedEdge:
            continue
        assert path.vertices[0] == a and path.vertices[-1] == c
        assert all(disjoint(x, y) for x, y in zip(path.vertices, path.vertices[1:]))
        assert path.length <= intersection_number(a, c) + 1


def test_unicorn_path_needs_a_shared_edge():
    g = single_edge(L5, "v1", "v2")
    a = next(v for v in BALL.vertices if v.endpoints == ("v1", "v2"))
    c = next(v for v in BALL.vertices if v.endpoints == ("v3", "v4"))
    with pytest.raises(NoSharedEdge):
        unicorn_path(a, c, g)


def test_unicorn_set_is_allowed():
    g = single_edge(L5, "c", "v1")
    image = [v for v in BALL.vertices if v.endpoints == ("c", "v1")]
    for a, c in zip(image, image[1:]):
        assert a in unicorn_set(a, c, g) or disjoint(a, c)
        assert all(x.endpoints == ("c", "v1") for x in unicorn_set(a, c, g))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_distance_upper_bound_beats_i_plus_one(data):
    a = data.draw(st.sampled_from(BALL.vertices))
    c = data.draw(st.sampled_from(BALL.vertices))
    length, path = distance_upper_bound(a, c, complete(L5))
    assert length == path.length <= intersection_number(a, c) + 1
    d = BALL.distance(a, c)
    if d is not None:
        assert d <= length or not all(v in BALL for v in path.vertices)


def test_distance_upper_bound_rejects_disallowed():
    a = next(v for v in BALL.vertices if v.endpoints == ("v1", "v2"))
    with pytest.raises(HypothesisViolated):
        distance_upper_bound(a, a, star(L5, "c"))


def test_disjoint_allowed_arc():
    g = single_edge(L5, "c", "v1")
    for x in BALL.vertices[:40]:
        y = disjoint_allowed_arc(x, g)
        assert y is not None and y.endpoints == ("c", "v1") and disjoint(x, y)


def test_strict_and_loose_agree_on_cycle():
    b = ball(S05, cycle(L5), 4)
    for a, c in pairs(b, 30, seed=3):
        assert distance_upper_bound(a, c, cycle(L5))[0] <= intersection_number(a, c) + 1
