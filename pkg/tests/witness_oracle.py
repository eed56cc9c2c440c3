"""Concrete realisations of witness partitions, used to cross-check the predicate by enumeration."""
from __future__ import annotations

from functools import lru_cache

from pacgraph.curves import (ClosedCurve, Side, crossing_number, curve_around_arc, curve_sides,
                             loop_pushoffs)
from pacgraph.laminations import arcs_up_to_weight, complement_components
from pacgraph.prescribing import PrescribingGraph, is_allowed
from pacgraph.surface import SurfaceSig, Triangulation, base_triangulation
from pacgraph.witnesses import SubsurfacePartition


def rotated_frame(s: SurfaceSig, shift: int) -> Triangulation:
    """The base frame with its boundary labels rotated by ``shift``; still a triangulation of ``s``."""
    labels = list(s.boundary)
    perm = {x: labels[(i + shift) % len(labels)] for i, x in enumerate(labels)}
    return base_triangulation(s).relabel(perm)


@lru_cache(maxsize=None)
def _arcs(s: SurfaceSig, shift: int, weight: int):
    return arcs_up_to_weight(rotated_frame(s, shift), weight)


def _candidates(a, sides: set[tuple[int, tuple[str, ...]]]):
    """Curves built from ``a`` that could have the requested sides."""
    if not a.is_loop:
        if (0, tuple(sorted(a.endpoints))) in sides:
            yield curve_around_arc(a)
        return
    p = a.endpoints[0]
    pieces = {(c.genus, tuple(sorted(c.labels))) for c in complement_components(a).components}
    for gi, xi in sides:
        if p in xi and pieces == {(gi, tuple(sorted(set(xi) - {p})))} | (sides - {(gi, xi)}):
            yield from loop_pushoffs(a)
            return


def separating_curve(s: SurfaceSig, g1: int, x1: tuple[str, ...], g2: int, x2: tuple[str, ...],
                     max_weight: int = 6) -> ClosedCurve:
    """A curve cutting ``s`` into (g1, x1) and (g2, x2), in a frame returned as ``curve.frame``.

    Candidates are curves around arcs joining the two labels of a planar
    side, and push-offs of separating loops at a label p of one side whose
    pieces are that side minus p and the other side. Frames are the base
    frame with rotated labels, tried in turn.
    """
    sides = {(g1, tuple(sorted(x1))), (g2, tuple(sorted(x2)))}
    want = {Side(g, x, 1) for g, x in sides}
    for shift in range(s.n_boundary):
        for a in _arcs(s, shift, max_weight):
            for c in _candidates(a, sides):
                if set(curve_sides(c)) == want:
                    return c
    raise LookupError(f"no curve found for {(g1, x1)} | {(g2, x2)} up to weight {max_weight}")


def arcs_missing(zeta: ClosedCurve, w: SubsurfacePartition, arcs, g: PrescribingGraph) -> list:
    """Allowed arcs avoiding W, where W is a side of ζ or the collar of ζ.

    An arc disjoint from ζ lies on the side containing its endpoints; it
    avoids a side W exactly when it lies on the other side.
    """
    missing = []
    for a in arcs:
        if not is_allowed(g, a.endpoints) or crossing_number(zeta, a):
            continue
        if w.is_annulus or a.endpoints[0] not in w.on_boundary:
            missing.append(a)
    return missing
