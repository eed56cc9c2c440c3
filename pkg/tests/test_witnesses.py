import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from pacgraph.curves import curve_around_arc, curve_sides, loop_pushoffs
from pacgraph.errors import HypothesisViolated, InvalidPartition, LabelMismatch
from pacgraph.laminations import arcs_up_to_weight
from pacgraph.prescribing import PrescribingGraph, cycle, loops, single_edge, star
from pacgraph.surface import build_surface
from pacgraph.witnesses import (NoneWithReason, Piece, SubsurfacePartition, WitnessPair,
                                disjoint_witness_pair, is_witness)
from witness_oracle import arcs_missing, rotated_frame

L5 = ["c", "v1", "v2", "v3", "v4"]
S05 = build_surface(0, L5)


def partitions_of(c):
    """The collar of a curve and, when it separates, the closure of each side."""
    sides = curve_sides(c)
    yield SubsurfacePartition(0, 2, tuple(sorted((Piece(x.genus, x.labels, x.copies) for x in sides),
                                                 key=lambda p: p.labels)))
    if len(sides) == 2:
        for me, other in (sides, sides[::-1]):
            yield SubsurfacePartition(me.genus, len(me.labels) + 1,
                                      (Piece(other.genus, other.labels, 1),), me.labels)


def short_curves(frame):
    src = arcs_up_to_weight(frame, 1)
    return ([curve_around_arc(a) for a in src if not a.is_loop]
            + [c for a in src if a.is_loop for c in loop_pushoffs(a)])


@pytest.mark.parametrize("g,b,weight", [(0, 4, 5), (0, 5, 5), (1, 1, 6), (1, 2, 6), (1, 3, 5),
                                        (2, 1, 5), (2, 2, 4)])
def test_predicate_against_enumeration(g, b, weight):
    """Sound on every instance; complete once the base frame is rotated to make the missing arc short."""
    s = build_surface(g, [f"p{i}" for i in range(b)])
    needed, shown = set(), set()
    for shift in range(b):
        frame = rotated_frame(s, shift)
        arcs = arcs_up_to_weight(frame, weight)
        for c in short_curves(frame):
            for w in partitions_of(c):
                try:
                    w.validate(s)
                except InvalidPartition:
                    continue
                for e in itertools.combinations_with_replacement(s.boundary, 2):
                    g1 = single_edge(list(s.boundary), *e)
                    missing = arcs_missing(c, w, arcs, g1)
                    key = (json.dumps(w.to_json(), sort_keys=True), e)
                    if is_witness(w, g1):
                        assert not missing, (key, missing[0])
                    else:
                        needed.add(key)
                        if missing:
                            shown.add(key)
    assert needed and needed == shown


SIGNATURES = [(0, 5), (0, 6), (1, 3), (2, 2)]


def _partition_pool():
    out = []
    for g, b in SIGNATURES:
        s = build_surface(g, [f"p{i}" for i in range(b)])
        for c in short_curves(rotated_frame(s, 0)):
            for w in partitions_of(c):
                try:
                    w.validate(s)
                except InvalidPartition:
                    continue
                out.append((s, w))
    return out


POOL = _partition_pool()


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL), st.data())
def test_witness_is_decided_edge_by_edge(item, data):
    s, w = item
    pairs = list(itertools.combinations_with_replacement(s.boundary, 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    g = PrescribingGraph.build(s.boundary, edges)
    assert is_witness(w, g, s) == all(is_witness(w, single_edge(list(s.boundary), *e)) for e in edges)
    again = SubsurfacePartition.from_json(json.loads(json.dumps(w.to_json())))
    assert again == w


@pytest.mark.parametrize("w,message", [
    (SubsurfacePartition(0, 1, (Piece(0, tuple(L5)),)), "disk"),
    (SubsurfacePartition(0, 2, (Piece(0, ("v1", "v2", "v3", "v4")),), ("c",)), "collar"),
    (SubsurfacePartition(0, 3, (Piece(0, ("c",)), Piece(0, ("v1", "v2", "v3", "v4"))),), "boundary"),
    (SubsurfacePartition(0, 2, (Piece(0, ("c", "v1")), Piece(0, ("v2", "v3")))), "partition"),
    (SubsurfacePartition(1, 2, (Piece(0, ("c", "v1")), Piece(0, ("v2", "v3", "v4")))), "genus"),
])
def test_invalid_partitions(w, message):
    with pytest.raises(InvalidPartition):
        w.validate(S05)


def test_pair_on_square_plus_isolated_vertex():
    pair = disjoint_witness_pair(S05, cycle(L5, ["v1", "v2", "v3", "v4"]))
    assert isinstance(pair, WitnessPair)
    assert pair.x1 == ("v1", "v3") and pair.x2 == ("c", "v2", "v4")
    assert pair.side == 2 and pair.nested() and not pair.rerouted
    assert pair.first.on_boundary == ("c", "v2", "v4") and pair.second.is_annulus
    assert json.loads(json.dumps(pair.to_json()))["X1"] == ["v1", "v3"]


def test_pair_reroutes_a_handle():
    labels = ["c", "a", "b", "d"]
    pair = disjoint_witness_pair(build_surface(1, labels), star(labels, "c"))
    assert isinstance(pair, WitnessPair) and pair.rerouted and pair.genus2 == 1


@pytest.mark.parametrize("s,g,kind", [
    (S05, cycle(L5), "oddCycle"),
    (build_surface(2, ["w"]), loops(["w"]), "loop"),
])
def test_no_pair_without_bipartition(s, g, kind):
    out = disjoint_witness_pair(s, g)
    assert isinstance(out, NoneWithReason) and out.kind == kind
    assert out.to_json()["none"] is True


@pytest.mark.parametrize("s,g,exc", [
    (S05, star(L5, "c"), HypothesisViolated),
    (build_surface(0, ["a", "b", "c", "d"]), cycle(["a", "b", "c", "d"]), HypothesisViolated),
    (S05, PrescribingGraph.build(L5, []), HypothesisViolated),
    (S05, loops(["w"]), LabelMismatch),
])
def test_pair_hypotheses(s, g, exc):
    with pytest.raises(exc):
        disjoint_witness_pair(s, g)
