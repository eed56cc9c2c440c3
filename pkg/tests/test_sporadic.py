import itertools

import pytest

from pacgraph.errors import HypothesisViolated
from pacgraph.explorer import ball
from pacgraph.laminations import (arcs_up_to_weight, disjoint, intersection_number, tighten,
                                  transport_path)
from pacgraph.prescribing import loops, star
from pacgraph.sporadic import hat_arc, unique_partner
from pacgraph.surface import base_triangulation, build_surface

L5 = ["c", "v1", "v2", "v3", "v4"]
STAR = ball(build_surface(0, L5), star(L5, "c"), 5)
HATS = {a: hat_arc(a, "c") for a in STAR.vertices}
S12 = build_surface(1, ["w1", "w2"])
LOOPS = [a for a in arcs_up_to_weight(base_triangulation(S12), 5) if a.is_loop]


def test_hat_is_a_loop_at_the_centre_missing_the_arc():
    for a, h in HATS.items():
        assert h.is_loop and h.ends[0] == "c"
        assert disjoint(a, h)


def test_hats_of_disjoint_arcs_meet_at_most_twice():
    worst = max(intersection_number(HATS[a], HATS[b])
                for a, b in itertools.combinations(STAR.vertices, 2) if disjoint(a, b))
    assert worst == 2


def test_hat_commutes_with_flips():
    for a in STAR.vertices[:60]:
        _, _, flips = tighten(a)
        if flips:
            assert transport_path(HATS[a], flips) == hat_arc(transport_path(a, flips), "c")


def test_hat_hypotheses():
    a = STAR.vertices[0]
    with pytest.raises(HypothesisViolated):
        hat_arc(a, "v9")
    with pytest.raises(HypothesisViolated):
        hat_arc(a, next(x for x in L5 if x not in a.ends))
    with pytest.raises(HypothesisViolated):
        hat_arc(LOOPS[0], "w1")


def test_partner_is_an_involution_between_the_punctures():
    paired = 0
    for a in LOOPS:
        try:
            p = unique_partner(a)
        except HypothesisViolated:
            continue
        paired += 1
        assert p.is_loop and p.ends[0] != a.ends[0] and disjoint(a, p)
        assert unique_partner(p) == a
    assert paired > len(LOOPS) // 2


def test_partner_preserves_adjacency():
    partner = {}
    for a in LOOPS:
        try:
            partner[a] = unique_partner(a)
        except HypothesisViolated:
            pass
    for a, b in itertools.combinations(partner, 2):
        assert disjoint(a, b) == disjoint(partner[a], partner[b])


def test_separating_loops_have_no_partner():
    raised = 0
    for a in ball(S12, loops(["w1", "w2"])).vertices:
        t, e, _ = tighten(a)
        if t.cut_along_edge(e).separating:
            raised += 1
            with pytest.raises(HypothesisViolated):
                unique_partner(a)
    assert raised > 0


def test_partner_hypotheses():
    with pytest.raises(HypothesisViolated):
        unique_partner(STAR.vertices[0])
    arc = next(a for a in arcs_up_to_weight(base_triangulation(S12), 2) if not a.is_loop)
    with pytest.raises(HypothesisViolated):
        unique_partner(arc)
