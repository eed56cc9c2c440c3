"""
Two maps special to small surfaces.

``hat_arc`` sends an arc of the n-pointed star on a sphere to the loop at the
centre that runs once around the far end, along both sides of the arc.
``unique_partner`` pairs the allowed arcs of the two loop vertices on the
twice-punctured torus: each non-separating loop at one puncture is disjoint
from exactly one loop at the other.
"""
from __future__ import annotations

from .curves import _revolve, _edge_sides
from .errors import HypothesisViolated
from .laminations import (CORNER, CrossingSequence, NormalArc, arcs_up_to_weight, disjoint,
                          normalize, pull_back, reverse_walk, tighten)


def hat_arc(a: NormalArc, center: str) -> NormalArc:
    """The boundary of a neighbourhood of ``a`` and its far end, as a loop at ``center``."""
    frame = a.frame
    s = frame.surface
    if s.genus != 0 or s.n_boundary < 4:
        raise HypothesisViolated("needs a sphere with at least four boundary components")
    if center not in s.boundary:
        raise HypothesisViolated(f"{center!r} is not a boundary label")
    if a.is_loop or center not in a.ends:
        raise HypothesisViolated("the arc must join the centre to another boundary component")
    w = a.walk if a.ends[0] == center else reverse_walk(a.walk)
    t0, i0, _ = w[0]
    if len(w) == 1:
        # an edge: leave the start corner across the far side and circle the far end
        t, side, c1, c2, u, r = _edge_sides(a)
        if c1 != i0 - CORNER:
            c1, c2 = c2, c1
        cq = frame.corner_across(3 * t + side, 3 * t + c2) % 3
        cp = frame.corner_across(3 * t + side, 3 * t + c1) % 3
        exits = [h % 3 for h in _revolve(frame, t, c2, c1, stop=(u, cq))]
        drawn = CrossingSequence(t, c1, tuple(exits), cp)
    else:
        tl, il, _ = w[-1]
        exits = [o for _, _, o in w[:-1]]
        exits += [h % 3 for h in _revolve(frame, tl, il, (il + 1) % 3)]
        exits += [o for _, _, o in reverse_walk(w)[:-1]]
        drawn = CrossingSequence(t0, i0 - CORNER, tuple(exits), i0 - CORNER)
    return normalize(drawn, frame)


def unique_partner(a: NormalArc, max_weight: int = 6) -> NormalArc:
    """The loop at the other puncture of the twice-punctured torus that misses ``a``.

    Cutting along a non-separating loop leaves a pair of pants, which holds
    exactly one essential loop at the other puncture. The search runs in a
    frame where ``a`` is an edge, among arcs that avoid that edge.
    """
    frame = a.frame
    s = frame.surface
    if s.genus != 1 or s.n_boundary != 2:
        raise HypothesisViolated("needs the twice-punctured torus")
    if not a.is_loop:
        raise HypothesisViolated("the arc must be a loop")
    w = a.ends[0]
    other = next(x for x in s.boundary if x != w)
    tight, e, flips = tighten(a)
    cut = tight.cut_along_edge(e)
    if cut.separating:
        raise HypothesisViolated("a separating loop is disjoint from no essential loop at the other puncture")
    for weight in range(1, max_weight + 1):
        found = [b for b in arcs_up_to_weight(tight, weight, avoid=(e,))
                 if b.is_loop and b.ends[0] == other]
        if found:
            if len(found) > 1:
                raise HypothesisViolated("more than one loop at the other puncture misses the arc")
            partner = pull_back(found[0], frame, flips) if flips else found[0]
            if not disjoint(a, partner):
                raise HypothesisViolated("pulled-back partner meets the arc")
            return partner
    raise HypothesisViolated(f"no partner found up to weight {max_weight}")
