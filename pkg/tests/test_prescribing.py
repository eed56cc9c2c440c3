import pytest

from pacgraph.errors import LabelMismatch, PacError, UnknownLabel
from pacgraph.prescribing import (PrescribingGraph, analyze_gamma, classify, complete, cycle,
                                  graphs_up_to_isomorphism, is_allowed, loops, share_edge,
                                  single_edge, star, star_center)
from pacgraph.surface import build_surface

L5 = ["c", "v1", "v2", "v3", "v4"]


def test_unknown_label_rejected():
    with pytest.raises(UnknownLabel):
        PrescribingGraph.build(["a"], [("a", "b")])


def test_builders():
    assert star_center(star(L5, "c")) == "c"
    assert star_center(cycle(L5)) is None
    assert len(complete(L5).edges) == 10
    assert len(complete(L5, with_loops=True).edges) == 15
    assert loops(["a", "b"], ["a"]).loops == ["a"]
    assert single_edge(L5, "v2", "v1").sorted_edges() == [("v1", "v2")]


def test_json_round_trip():
    g = cycle(L5, ["v1", "v2", "v3"])
    assert PrescribingGraph.from_json(g.to_json()) == g


def test_profiles():
    p = analyze_gamma(cycle(L5))
    assert not p.bipartite and len(p.odd_cycle) == 5 and p.loop is None
    p = analyze_gamma(cycle(L5, ["v1", "v2", "v3", "v4"]))
    assert p.bipartite and p.loop_free
    left, right = map(set, p.bipartition)
    assert left | right == set(L5) and not left & right
    assert all((u in left) != (v in left) for u, v in cycle(L5, ["v1", "v2", "v3", "v4"]).edges)
    assert analyze_gamma(loops(["w"])).loop == "w"


def test_odd_cycle_is_a_cycle():
    g = PrescribingGraph.build(L5, [("c", "v1"), ("v1", "v2"), ("v2", "c"), ("v3", "v4")])
    cyc = analyze_gamma(g).odd_cycle
    assert len(cyc) % 2 == 1
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def test_allowed_and_shared():
    g = star(L5, "c")
    assert is_allowed(g, ("v1", "c")) and not is_allowed(g, ("v1", "v2"))
    assert share_edge(g, ("v1", "v2"), ("c", "v3"))
    assert not share_edge(g, ("v1", "v2"), ("v3", "v4"))


@pytest.mark.parametrize("n,simple,looped", [(1, 1, 2), (2, 2, 6), (3, 4, 20), (4, 11, 90),
                                             (5, 34, 544)])
def test_graph_counts_up_to_isomorphism(n, simple, looped):
    labels = [f"p{i}" for i in range(n)]
    assert sum(1 for _ in graphs_up_to_isomorphism(labels, with_loops=False)) == simple
    assert sum(1 for _ in graphs_up_to_isomorphism(labels)) == looped


def test_graph_enumeration_bound():
    with pytest.raises(PacError):
        next(graphs_up_to_isomorphism([f"p{i}" for i in range(8)]))


@pytest.mark.parametrize("g,labels,edges,tag,hyp", [
    (0, L5, [("c", x) for x in L5[1:]], "star", True),
    (0, L5, [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")], "bipartite", False),
    (0, L5, [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "c"), ("c", "v1")], "oddCycle", True),
    (1, ["w"], [("w", "w")], "farey", True),
    (1, ["w1", "w2"], [("w1", "w1"), ("w2", "w2")], "twoLoops", True),
    (1, ["w1", "w2"], [("w1", "w2")], "nonLoopEdge", True),
    (0, ["a", "b", "c", "d"], [("a", "b"), ("c", "d")], "quasiTree", True),
    (2, ["w"], [("w", "w")], "loop", True),
])
def test_classify_cases(g, labels, edges, tag, hyp):
    c = classify(build_surface(g, labels), PrescribingGraph.build(labels, edges))
    assert c.case_tag == tag
    assert not c.trivial and c.connected and c.infinite_diameter
    assert c.hyperbolic is hyp


@pytest.mark.parametrize("g,labels,edges,reason,count", [
    (0, ["a"], [("a", "a")], "empty", 0),
    (0, ["a", "b"], [("a", "b")], "singleton", 1),
    (0, ["a", "b"], [("a", "a")], "empty", 0),
    (0, ["a", "b", "c"], [("a", "a"), ("a", "b")], "finite", 2),
    (1, ["w"], [], "empty", 0),
])
def test_classify_trivial(g, labels, edges, reason, count):
    c = classify(build_surface(g, labels), PrescribingGraph.build(labels, edges))
    assert c.trivial and c.reason == reason and c.vertex_count == count


def test_classify_label_mismatch():
    with pytest.raises(LabelMismatch):
        classify(build_surface(0, L5), loops(["a"]))
