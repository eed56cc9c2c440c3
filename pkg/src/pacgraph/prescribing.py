"""
The prescribing graph and the classification of prescribed arc graphs.

A prescribing graph is a relation on the boundary labels of a surface, loops
allowed. An arc is allowed when its unordered endpoint pair is an edge.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import LabelMismatch, PacError, UnknownLabel
from .surface import SurfaceSig

Edge = tuple[str, str]


def _edge(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class PrescribingGraph:
    vertices: tuple[str, ...]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise PacError("prescribing graph has repeated vertices")
        vs = set(self.vertices)
        for u, v in self.edges:
            if u not in vs or v not in vs:
                raise UnknownLabel(f"edge ({u}, {v}) uses an unknown label")

    @classmethod
    def build(cls, vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> "PrescribingGraph":
        return cls(tuple(vertices), frozenset(_edge(str(u), str(v)) for u, v in edges))

    @property
    def loops(self) -> list[str]:
        return sorted(u for u, v in self.edges if u == v)

    @property
    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def has_edge(self, u: str, v: str) -> bool:
        return _edge(u, v) in self.edges

    def neighbours(self, u: str) -> list[str]:
        out = []
        for x, y in self.edges:
            if x == u:
                out.append(y)
            elif y == u:
                out.append(x)
        return sorted(set(out))

    def degree(self, u: str) -> int:
        return sum((x == u) + (y == u) for x, y in self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def subgraph(self, edges: Iterable[Sequence[str]]) -> "PrescribingGraph":
        sub = frozenset(_edge(u, v) for u, v in edges)
        if not sub <= self.edges:
            raise PacError("not a subgraph")
        return PrescribingGraph(self.vertices, sub)

    def relabel(self, perm: dict[str, str]) -> "PrescribingGraph":
        return PrescribingGraph(self.vertices, frozenset(_edge(perm[u], perm[v]) for u, v in self.edges))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "PrescribingGraph":
        return cls.build(data["vertices"], data.get("edges", []))


# builders --------------------------------------------------------------------


def star(labels: Sequence[str], center: str) -> PrescribingGraph:
    return PrescribingGraph.build(labels, [(center, v) for v in labels if v != center])


def cycle(labels: Sequence[str], members: Sequence[str] | None = None) -> PrescribingGraph:
    m = list(members if members is not None else labels)
    return PrescribingGraph.build(labels, [(m[i], m[(i + 1) % len(m)]) for i in range(len(m))])


def complete(labels: Sequence[str], with_loops: bool = False) -> PrescribingGraph:
    es = [(u, v) for i, u in enumerate(labels) for v in labels[i + 1:]]
    if with_loops:
        es += [(u, u) for u in labels]
    return PrescribingGraph.build(labels, es)


def loops(labels: Sequence[str], at: Sequence[str] | None = None) -> PrescribingGraph:
    return PrescribingGraph.build(labels, [(u, u) for u in (at if at is not None else labels)])


def single_edge(labels: Sequence[str], u: str, v: str) -> PrescribingGraph:
    return PrescribingGraph.build(labels, [(u, v)])


def graphs_up_to_isomorphism(labels: Sequence[str], with_loops: bool = True) -> Iterator[PrescribingGraph]:
    """One prescribing graph per isomorphism class on the given labels.

    Simple graphs come from the networkx atlas (all graphs on at most seven
    vertices); loop sets are then reduced modulo the automorphism group.
    """
    n = len(labels)
    if n > 7:
        raise PacError("isomorphism classes are only tabulated up to seven vertices")
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != n:
            continue
        edges = [(labels[u], labels[v]) for u, v in h.edges()]
        if not with_loops:
            yield PrescribingGraph.build(labels, edges)
            continue
        autos = [dict(m) for m in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter()]
        seen = set()
        for mask in range(1 << n):
            at = [i for i in range(n) if mask >> i & 1]
            key = min(tuple(sorted(a[i] for i in at)) for a in autos)
            if key in seen:
                continue
            seen.add(key)
            yield PrescribingGraph.build(labels, edges + [(labels[i], labels[i]) for i in at])


# structure -------------------------------------------------------------------


@dataclass(frozen=True)
class GammaProfile:
    loop_free: bool
    bipartite: bool
    bipartition: tuple[tuple[str, ...], tuple[str, ...]] | None
    odd_cycle: tuple[str, ...] | None
    loop: str | None
    star_center: str | None
    has_edge: bool

    def to_json(self) -> dict:
        return {
            "loopFree": self.loop_free, "bipartite": self.bipartite,
            "bipartition": [list(x) for x in self.bipartition] if self.bipartition else None,
            "oddCycle": list(self.odd_cycle) if self.odd_cycle else None,
            "loop": self.loop, "starCenter": self.star_center, "hasEdge": self.has_edge,
        }


def _two_colour(g: PrescribingGraph) -> tuple[dict[str, int], tuple[str, ...] | None]:
    """BFS 2-colouring; on failure also return an odd cycle."""
    colour: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    for root in g.vertices:
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbours(u):
                if v == u:
                    continue
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    parent[v] = u
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return colour, _close_cycle(parent, u, v)
    return colour, None


def _close_cycle(parent: dict[str, str | None], u: str, v: str) -> tuple[str, ...]:
    def chain(x: str | None) -> list[str]:
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pv = chain(u), chain(v)
    common = set(pu) & set(pv)
    up = []
    for x in pu:
        up.append(x)
        if x in common:
            break
    meet = up[-1]
    down = []
    for x in pv:
        if x == meet:
            break
        down.append(x)
    return tuple(up + list(reversed(down)))


def star_center(g: PrescribingGraph) -> str | None:
    """The centre when ``g`` is the star joining one vertex to every other one."""
    n = len(g.vertices)
    if n < 2 or len(g.edges) != n - 1 or g.has_loop:
        return None
    for c in g.vertices:
        if all(c in e for e in g.edges):
            if n == 2:
                return min(g.vertices)
            return c
    return None


def analyze_gamma(g: PrescribingGraph) -> GammaProfile:
    loop = g.loops[0] if g.loops else None
    colour, odd = _two_colour(g)
    bip = loop is None and odd is None
    part = None
    if bip:
        x1 = tuple(v for v in g.vertices if colour[v] == 0)
        x2 = tuple(v for v in g.vertices if colour[v] == 1)
        part = (x1, x2)
    return GammaProfile(
        loop_free=loop is None, bipartite=bip, bipartition=part,
        odd_cycle=odd if loop is None else None, loop=loop,
        star_center=star_center(g), has_edge=bool(g.edges))


def is_allowed(g: PrescribingGraph, endpoints: Sequence[str]) -> bool:
    u, v = endpoints
    vs = set(g.vertices)
    for x in (u, v):
        if x not in vs:
            raise UnknownLabel(f"label {x!r} is not a vertex of the prescribing graph")
    return _edge(u, v) in g.edges


def share_edge(g: PrescribingGraph, ends_a: Iterable[str], ends_b: Iterable[str]) -> bool:
    """Whether some edge of ``g`` joins an endpoint of one arc to one of the other."""
    return any(g.has_edge(u, v) for u in set(ends_a) for v in set(ends_b))


# classification --------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    trivial: bool
    reason: str | None
    vertex_count: int | None
    connected: bool | None
    infinite_diameter: bool | None
    hyperbolic: bool | None
    case_tag: str
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "trivial": self.trivial, "reason": self.reason, "vertexCount": self.vertex_count,
            "connected": self.connected, "infiniteDiameter": self.infinite_diameter,
            "hyperbolic": self.hyperbolic, "caseTag": self.case_tag, "flags": list(self.flags),
        }


def _trivial(reason: str, count: int | None, tag: str) -> Classification:
    return Classification(True, reason, count, None, None, None, tag)


def classify(s: SurfaceSig, g: PrescribingGraph) -> Classification:
    """Decide connectivity, diameter and hyperbolicity of the prescribed arc graph."""
    if tuple(sorted(g.vertices)) != tuple(sorted(s.boundary)):
        raise LabelMismatch("prescribing graph vertices differ from the boundary labels")
    b, genus, chi = s.n_boundary, s.genus, s.euler_char
    if not g.edges:
        return _trivial("empty", 0, "noEdges")
    if chi >= 0:
        if b == 1:
            return _trivial("empty", 0, "disk")
        has_cross = any(u != v for u, v in g.edges)
        return _trivial("singleton" if has_cross else "empty", int(has_cross), "annulus")
    if genus == 0 and b == 3:
        # one arc class per pair of boundaries and one loop per boundary
        return _trivial("finite", len(g.edges), "pants")

    prof = analyze_gamma(g)

    def verdict(hyp: bool, tag: str, flags: tuple[str, ...] = ()) -> Classification:
        return Classification(False, None, None, True, True, hyp, tag, flags)

    if genus == 1 and b == 1:
        return verdict(True, "farey")
    if genus == 0 and b == 4:
        flags = ("bipartiteNonStar",) if prof.bipartite and prof.star_center is None else ()
        return verdict(True, "quasiTree", flags)
    if genus == 1 and b == 2:
        if all(u == v for u, v in g.edges):
            return verdict(True, "twoLoops" if len(g.edges) == 2 else "loop")
        if len(g.edges) == 1:
            return verdict(True, "nonLoopEdge")
    if genus == 0 and prof.star_center is not None:
        return verdict(True, "star")
    if not prof.bipartite:
        return verdict(True, "loop" if not prof.loop_free else "oddCycle")
    return verdict(False, "bipartite")
