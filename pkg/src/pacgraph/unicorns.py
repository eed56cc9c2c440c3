"""
Unicorn arcs, unicorn paths and the distance-reducing surgeries.

Every construction starts from a :class:`Picture`: the frame in which ``a`` is
literally an edge ``ê`` and ``b`` is a reduced walk. Crossings of ``b`` with
``ê`` are then exactly the points of ``a ∩ b`` in minimal position, ordered
along ``b`` by walk index and along ``a`` by :func:`strand_order`.

New arcs are drawn as crossing sequences in that frame (a start corner, the
sides crossed, an end corner) and normalised there; only the homotopy class
of the drawing matters. Results are pulled back to the base frame.

Orientation of ``ê``: ``P`` is corner ``s0+1`` of its first half ``(t0, s0)``
and ``Q`` is corner ``s0+2``; walking from ``P`` to ``Q`` the triangle ``t0``
is on the left.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (CaseExhausted, HypothesisViolated, Inessential,
                     InternalNonTermination, NoSharedEdge, PacError)
from .laminations import (CORNER, NormalArc, Visit, arc_from_walk,
                          arcs_up_to_weight, disjoint, edge_crossings,
                          intersection_number, pull_back, reverse_walk,
                          strand_order, tighten, transport_path, _compare_forward)
from .prescribing import PrescribingGraph, is_allowed, share_edge
from .surface import Triangulation


# ----------------------------------------------------------------------------
# minimal position


@dataclass(frozen=True)
class _Tight:
    frame: Triangulation
    edge: int
    flips: tuple[int, ...]


@functools.lru_cache(maxsize=4096)
def _tight(a: NormalArc) -> _Tight:
    frame, e, flips = tighten(a)
    return _Tight(frame, e, flips)


class Picture:
    """``a`` as the edge ``ê`` of a frame and ``b`` as a walk in it."""

    def __init__(self, a: NormalArc, b: NormalArc) -> None:
        self.a, self.b = a, b
        self.base = a.frame
        tt = _tight(a)
        self.frame, self.e, self.flips = tt.frame, tt.edge, tt.flips
        bf = transport_path(b, self.flips)
        self.W: tuple[Visit, ...] = bf.walk
        f = self.frame
        self.h0, self.h1 = f.edge_halves[self.e]
        self.t0, self.s0 = divmod(self.h0, 3)
        self.t1, self.s1 = divmod(self.h1, 3)
        self.P = f.labels[3 * self.t0 + (self.s0 + 1) % 3]
        self.Q = f.labels[3 * self.t0 + (self.s0 + 2) % 3]
        if bf.is_edge:
            self.ks: list[int] = []
        else:
            self.ks = edge_crossings(f, self.W, self.e)
        order = sorted(self.ks, key=functools.cmp_to_key(
            lambda x, y: strand_order(f, self.e, self.W, x, self.W, y)))
        self.pos = {k: i for i, k in enumerate(order)}
        self.along_a = order  # crossing indices sorted from P to Q

    # -- geometry of the crossings ------------------------------------------

    @property
    def n(self) -> int:
        return len(self.ks)

    @property
    def b_start(self) -> str:
        t, i, _ = self.W[0]
        return self.frame.labels[3 * t + i - CORNER]

    @property
    def b_end(self) -> str:
        t, _, o = self.W[-1]
        return self.frame.labels[3 * t + o - CORNER]

    def forward_sign(self, k: int) -> int:
        """+1 when ``b`` crosses from the ``t0`` side to the ``t1`` side at visit ``k``."""
        t, _, o = self.W[k]
        return 1 if 3 * t + o == self.h0 else -1

    def end_corner(self, half: int, end: str) -> int:
        """Corner index of ``P`` or ``Q`` in the triangle holding ``half`` of ``ê``."""
        _, r = divmod(half, 3)
        if half == self.h0:
            return (r + 1) % 3 if end == "P" else (r + 2) % 3
        return (r + 2) % 3 if end == "P" else (r + 1) % 3

    def arm(self, k: int, forward: bool) -> tuple[Visit, ...]:
        """The part of ``b`` leaving crossing ``k``, as visits oriented away from ``ê``."""
        if forward:
            return tuple(self.W[k + 1:])
        return reverse_walk(tuple(self.W[:k + 1]))

    def label_of(self, end: str) -> str:
        return self.P if end == "P" else self.Q

    # -- drawing -------------------------------------------------------------

    def lift(self, visits: Sequence[Visit]) -> NormalArc:
        """Normalise a drawing made in the tight frame and express it in the base frame."""
        arc = arc_from_walk(self.frame, visits)
        return pull_back(arc, self.base, self.flips)

    def draw(self, tri: int, corner: int, exits: Sequence[int], end_corner: int,
             end_tri: int | None = None) -> list[Visit]:
        out: list[Visit] = []
        t, cur = tri, CORNER + corner
        for s in exits:
            out.append((t, cur, s))
            t, cur = divmod(self.frame.glue[3 * t + s], 3)
        if end_tri is not None and t != end_tri:
            raise PacError(f"drawing ends in triangle {t}, expected {end_tri}")
        out.append((t, cur, CORNER + end_corner))
        return out


# ----------------------------------------------------------------------------
# unicorns


@dataclass(frozen=True)
class Unicorn:
    arc: NormalArc
    a_end: str  # "P" or "Q": the end of a kept
    crossing: int  # walk index of the surgery point
    forward: bool  # which way along b from the surgery point
    alpha_length: int  # crossings of b strictly between the a end and the surgery point


def _unicorn_is_embedded(pic: Picture, k: int, end: str, forward: bool) -> bool:
    p = pic.pos[k]
    rest = [j for j in pic.ks if (j > k if forward else j < k)]
    if end == "P":
        return all(pic.pos[j] > p for j in rest)
    return all(pic.pos[j] < p for j in rest)


def _unicorn_walk(pic: Picture, k: int, end: str, forward: bool) -> list[Visit]:
    A = pic.arm(k, forward)
    t, r, o = A[0]
    c = pic.end_corner(3 * t + r, end)
    return [(t, CORNER + c, o)] + list(A[1:])


def all_unicorns(pic: Picture) -> list[Unicorn]:
    """Every embedded concatenation of a subarc of ``a`` with a subarc of ``b``."""
    out = []
    for k in pic.ks:
        for end in ("P", "Q"):
            for forward in (True, False):
                if not _unicorn_is_embedded(pic, k, end, forward):
                    continue
                arc = pic.lift(_unicorn_walk(pic, k, end, forward))
                alpha = pic.pos[k] if end == "P" else pic.n - 1 - pic.pos[k]
                out.append(Unicorn(arc, end, k, forward, alpha))
    return out


def unicorn_set(a: NormalArc, b: NormalArc, g: PrescribingGraph) -> set[NormalArc]:
    """The vertices of the unicorn subgraph: allowed unicorns of ``a, b`` together with ``a, b``."""
    out = {a, b}
    if a == b or disjoint(a, b):
        return out
    pic = Picture(a, b)
    for u in all_unicorns(pic):
        if is_allowed(g, u.arc.endpoints):
            out.add(u.arc)
    return out


@dataclass(frozen=True)
class UnicornPath:
    vertices: tuple[NormalArc, ...]
    certificates: tuple[int, ...]  # intersection number of each consecutive pair (all zero)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def to_json(self) -> dict:
        return {"vertices": [v.to_json() for v in self.vertices],
                "certificates": [{"i": c} for c in self.certificates]}


def _certify(path: Sequence[NormalArc]) -> UnicornPath:
    # drop revisits so the chain is a simple path
    simple: list[NormalArc] = []
    for v in path:
        if v in simple:
            del simple[simple.index(v) + 1:]
        else:
            simple.append(v)
    certs = []
    for x, y in zip(simple, simple[1:]):
        i = intersection_number(x, y)
        if i:
            raise InternalNonTermination(f"path step is not an edge: i = {i}")
        certs.append(i)
    return UnicornPath(tuple(simple), tuple(certs))


def unicorn_path(a: NormalArc, b: NormalArc, g: PrescribingGraph) -> UnicornPath:
    """A path from ``a`` to ``b`` through unicorns, of length at most ``i(a, b) + 1``.

    Keeps an end of ``a`` and an end of ``b`` joined by an edge of ``g``; the
    unicorns with those ends, ordered by decreasing subarc of ``a``, give
    consecutive disjoint arcs.
    """
    if not share_edge(g, a.endpoints, b.endpoints):
        raise NoSharedEdge(f"{a.endpoints} and {b.endpoints} share no edge of the prescribing graph")
    if a == b:
        return UnicornPath((a,), ())
    if disjoint(a, b):
        return _certify([a, b])
    pic = Picture(a, b)
    options = []
    for end in ("P", "Q"):
        for forward in (True, False):
            b_label = pic.b_end if forward else pic.b_start
            if g.has_edge(pic.label_of(end), b_label):
                options.append((end, forward))
    end, forward = options[0]
    chain = []
    for k in pic.ks:
        if _unicorn_is_embedded(pic, k, end, forward):
            alpha = pic.pos[k] if end == "P" else pic.n - 1 - pic.pos[k]
            chain.append((-alpha, k))
    chain.sort()
    mids = [pic.lift(_unicorn_walk(pic, k, end, forward)) for _, k in chain]
    return _certify([a] + mids + [b])


# ----------------------------------------------------------------------------
# boundaries of regular neighbourhoods


class _Tracer:
    """Arc components of the boundary of a regular neighbourhood of ``a ∪ (pieces of b) ∪ punctures``.

    ``segments`` are indices of pieces of ``b`` between consecutive crossings
    (0 is the piece from the start of ``b`` to its first crossing, ``n`` the
    last piece); ``included`` are the labels of punctures swallowed whole.
    Boundary curves are traced with the graph on their left; at a vertex the
    curve leaves along the next edge counter-clockwise.
    """

    def __init__(self, pic: Picture, segments: Iterable[int], included: Iterable[str]) -> None:
        self.pic = pic
        self.segs = set(segments)
        self.inc = set(included)
        W, ks = pic.W, pic.ks
        self.node_ids = {k: j + 1 for j, k in enumerate(ks)}  # b-order index, 1-based
        cross = {k for j, k in enumerate(ks) if j in self.segs or j + 1 in self.segs}
        along = [k for k in pic.along_a if k in cross]
        self.along = along
        self.slot = {k: i for i, k in enumerate(along)}  # nodes 1..m along a
        self.m = len(along)
        t0, c0 = W[0][0], W[0][1] - CORNER
        t1, c1 = W[-1][0], W[-1][2] - CORNER
        f = pic.frame
        self.b_start = (t0, c0, f.labels[3 * t0 + c0])
        self.b_end = (t1, c1, f.labels[3 * t1 + c1])

    # darts: ("e", i, +1/-1) along ê piece i (0..m), ("b", j, +1/-1) along b piece j (0..n)

    def _b_exits(self, j: int, forward: bool) -> tuple[int, list[int]]:
        """Triangle at the tail and the sides crossed along b piece ``j``."""
        W, ks = self.pic.W, self.pic.ks
        n = len(ks)
        lo = 0 if j == 0 else ks[j - 1] + 1  # first visit of the piece
        hi = len(W) - 1 if j == n else ks[j]  # last visit of the piece
        if forward:
            return W[lo][0], [W[x][2] for x in range(lo, hi)]
        return W[hi][0], [W[x][1] for x in range(hi, lo, -1)]

    def _ccw_at_node(self, k: int) -> list[tuple]:
        pic = self.pic
        j = self.node_ids[k]
        i = self.slot[k]
        back = ("b", j - 1, -1) if j - 1 in self.segs else None
        fwd = ("b", j, 1) if j in self.segs else None
        if pic.forward_sign(k) > 0:
            side0, side1 = back, fwd
        else:
            side0, side1 = fwd, back
        ring = [("e", i + 1, 1), side0, ("e", i, -1), side1]
        return [d for d in ring if d is not None]

    def _reverse(self, d: tuple) -> tuple:
        return (d[0], d[1], -d[2])

    def _head(self, d: tuple):
        kind, i, s = d
        if kind == "e":
            if s > 0:
                return ("Q",) if i == self.m else ("node", self.along[i])
            return ("P",) if i == 0 else ("node", self.along[i - 1])
        n = len(self.pic.ks)
        if s > 0:
            return ("b+",) if i == n else ("node", self.pic.ks[i])
        return ("b-",) if i == 0 else ("node", self.pic.ks[i - 1])

    def _label(self, end: str) -> str:
        pic = self.pic
        return {"P": pic.P, "Q": pic.Q, "b-": self.b_start[2], "b+": self.b_end[2]}[end]

    def _terminals(self) -> dict[tuple[int, int], list[tuple]]:
        """b ends attached to swallowed punctures, grouped by corner, counter-clockwise."""
        W = self.pic.W
        n = len(self.pic.ks)
        groups: dict[tuple[int, int], list[tuple]] = {}
        if 0 in self.segs and self.b_start[2] in self.inc:
            groups.setdefault(self.b_start[:2], []).append(("b", 0, 1))
        if n in self.segs and self.b_end[2] in self.inc:
            groups.setdefault(self.b_end[:2], []).append(("b", n, -1))
        for key, ds in groups.items():
            if len(ds) == 2:
                fwd = tuple(W)  # oriented from the start corner outward
                bwd = reverse_walk(tuple(W))
                c = _compare_forward(fwd, 0, bwd, 0)
                # +1: the start strand is right of the end strand going outward,
                # so it comes first sweeping counter-clockwise around the corner
                if c < 0:
                    ds.reverse()
                elif c == 0:
                    raise PacError("cannot order two ends of b in one corner")
        return groups

    def _sweep(self, tri: int, corner: int, after: tuple | None, exits: list[int]) -> tuple:
        """Turn counter-clockwise around a swallowed puncture until the next attached edge."""
        pic, f = self.pic, self.pic.frame
        terms = self._terminals()
        start = (tri, corner)
        for _ in range(6 * f.n_triangles + 2):
            ds = terms.get((tri, corner), [])
            if after is not None and after in ds:
                ds = ds[ds.index(after) + 1:]
            if ds:
                return ds[0], tri
            after = None
            x = (corner + 1) % 3
            h = 3 * tri + x
            if h == pic.h1 and pic.P in self.inc:
                return ("e", 0, 1), tri
            if h == pic.h0 and pic.Q in self.inc:
                return ("e", self.m, -1), tri
            exits.append(x)
            tri, r = divmod(f.glue[h], 3)
            corner = (r + 1) % 3
        raise InternalNonTermination(f"sweep around corner {start} never met the graph")

    def _travel(self, d: tuple, tri: int, exits: list[int]) -> int:
        """Append the sides crossed along dart ``d``; return the triangle at its head."""
        kind, i, s = d
        pic = self.pic
        if kind == "e":
            return pic.t1 if s > 0 else pic.t0
        t, xs = self._b_exits(i, s > 0)
        if t != tri:
            raise PacError(f"boundary trace lost track of its triangle ({t} != {tri})")
        exits.extend(xs)
        t_end = t
        for x in xs:
            t_end = pic.frame.glue[3 * t_end + x] // 3
        return t_end

    def _start_of(self, end: str) -> tuple[tuple, int, int]:
        pic = self.pic
        if end == "P":
            return ("e", 0, 1), pic.t1, pic.end_corner(pic.h1, "P")
        if end == "Q":
            return ("e", self.m, -1), pic.t0, pic.end_corner(pic.h0, "Q")
        if end == "b-":
            t, c, _ = self.b_start
            return ("b", 0, 1), t, c
        t, c, _ = self.b_end
        return ("b", len(self.pic.ks), -1), t, c

    def _end_corner(self, end: str, tri: int) -> int:
        pic = self.pic
        if end == "P":
            return pic.end_corner(pic.h0, "P")
        if end == "Q":
            return pic.end_corner(pic.h1, "Q")
        return self.b_start[1] if end == "b-" else self.b_end[1]

    def free_ends(self) -> list[str]:
        ends = []
        n = len(self.pic.ks)
        for end in ("P", "Q"):
            if self._label(end) not in self.inc:
                ends.append(end)
        if 0 in self.segs and self.b_start[2] not in self.inc:
            ends.append("b-")
        if n in self.segs and self.b_end[2] not in self.inc:
            ends.append("b+")
        return ends

    def trace_from(self, end: str) -> tuple[list[Visit], str]:
        pic = self.pic
        d, tri, corner = self._start_of(end)
        start_tri, start_corner = tri, corner
        exits: list[int] = []
        for _ in range(4 * (len(pic.W) + pic.frame.n_triangles) * (len(pic.ks) + 2)):
            tri = self._travel(d, tri, exits)
            head = self._head(d)
            if head[0] == "node":
                ring = self._ccw_at_node(head[1])
                back = self._reverse(d)
                d = ring[(ring.index(back) + 1) % len(ring)]
                continue
            tag = head[0]
            if self._label(tag) not in self.inc:
                return pic.draw(start_tri, start_corner, exits, self._end_corner(tag, tri), tri), tag
            # swallowed puncture: sweep around it
            if tag == "P":
                c, after = pic.end_corner(pic.h0, "P"), None
            elif tag == "Q":
                c, after = pic.end_corner(pic.h1, "Q"), None
            elif tag == "b-":
                c, after = self.b_start[1], ("b", 0, 1)
            else:
                c, after = self.b_end[1], ("b", len(pic.ks), -1)
            d, tri = self._sweep(tri, c, after, exits)
        raise InternalNonTermination("boundary trace did not close up")

    def arcs(self) -> list[tuple[NormalArc | None, str, str]]:
        """Every boundary arc, one per free end: (class or None if inessential, start, finish).

        Each arc shows up twice, once from each of its ends, traced on
        opposite sides; callers deduplicate classes.
        """
        out = []
        for end in self.free_ends():
            visits, fin = self.trace_from(end)
            try:
                arc = self.pic.lift(visits)
            except Inessential:
                arc = None
            out.append((arc, end, fin))
        return out


def neighbourhood_arcs(pic: Picture, segments: Iterable[int], included: Iterable[str]) -> list[NormalArc | None]:
    return [arc for arc, _, _ in _Tracer(pic, segments, included).arcs()]


# ----------------------------------------------------------------------------
# surgeries


@dataclass(frozen=True)
class SurgeryOutcome:
    result: NormalArc
    dropped: int  # i(a, b) minus the intersection of the result with the other arc
    side: str  # "a", "b" or "both": which input the result is disjoint from
    case_tag: str
    partner: NormalArc | None = None  # rerouting only: an arc disjoint from the result and from b

    def to_json(self) -> dict:
        out = {"result": self.result.to_json(), "droppedIntersections": self.dropped,
               "side": self.side, "caseTag": self.case_tag}
        if self.partner is not None:
            out["partner"] = self.partner.to_json()
        return out


def standing_hypotheses(a: NormalArc, g: PrescribingGraph) -> str | None:
    """The failed standing hypothesis of the surgery lemmas, if any."""
    s = a.frame.surface
    if s.genus == 0 and s.n_boundary == 3:
        return "the surface is a pair of pants"
    if s.genus == 1 and s.n_boundary == 2 and all(u == v for u, v in g.edges):
        return "on a twice-holed torus the prescribing graph needs a non-loop edge"
    return None


def _join(pic: Picture, k1: int, k2: int) -> list[Visit]:
    """Follow ``b`` up to crossing ``k1``, run along ``a`` to crossing ``k2``, then follow ``b`` on."""
    W = pic.W
    t, c = W[0][0], W[0][1] - CORNER
    exits = [W[j][2] for j in range(k1)]
    if pic.forward_sign(k1) == pic.forward_sign(k2):
        exits.append(W[k1][2])
    exits += [W[j][2] for j in range(k2 + 1, len(W) - 1)]
    return pic.draw(t, c, exits, W[-1][2] - CORNER)


def _try_lift(pic: Picture, visits: Sequence[Visit]) -> NormalArc | None:
    try:
        return pic.lift(visits)
    except Inessential:
        return None


def _outcome(result: NormalArc, a: NormalArc, b: NormalArc, side: str, tag: str, i_ab: int,
             g: PrescribingGraph) -> SurgeryOutcome | None:
    """Check the surgery contract; None when the candidate does not meet it."""
    if result in (a, b) or not is_allowed(g, result.endpoints):
        return None
    ia, ib = intersection_number(result, a), intersection_number(result, b)
    if side == "both":
        ok = ia == 0 and ib == 0
        other = 0
    elif side == "a":
        ok, other = ia == 0 and ib < i_ab, ib
    else:
        ok, other = ib == 0 and ia < i_ab, ia
    return SurgeryOutcome(result, i_ab - other, side, tag) if ok else None


def _first(cands: Iterable[SurgeryOutcome | None]) -> SurgeryOutcome | None:
    for c in cands:
        if c is not None:
            return c
    return None


def _boundary_candidates(x: NormalArc, y: NormalArc, segments: Iterable[int] | None,
                         included: Iterable[str]) -> list[NormalArc]:
    pic = Picture(x, y)
    segs = range(pic.n + 1) if segments is None else segments
    out = []
    for arc in neighbourhood_arcs(pic, segs, included):
        if arc is not None and arc not in out:
            out.append(arc)
    return out


def _lemma_i1(a: NormalArc, b: NormalArc, g: PrescribingGraph) -> SurgeryOutcome:
    if a.is_loop and not b.is_loop:
        x, y, tag = a, b, "lemma2.5(ii)"
    elif b.is_loop and not a.is_loop:
        x, y, tag = b, a, "lemma2.5(ii)"
    else:
        x, y = a, b
        tag = "lemma2.5(iii)" if a.is_loop else "lemma2.5(i)"
    cands = _boundary_candidates(x, y, None, set(y.ends))
    out = _first(_outcome(d, a, b, "both", tag, 1, g) for d in cands)
    if out is None:
        raise CaseExhausted(f"{tag}: no boundary arc of the neighbourhood is essential")
    return out


@functools.lru_cache(maxsize=4096)
def _avoiding(x: NormalArc, weight: int) -> tuple[NormalArc, ...]:
    """Arcs other than ``x`` that miss ``x``, up to ``weight`` in the frame where ``x`` is an edge.

    Lifted to the base frame, lightest first in the tight frame.
    """
    t = _tight(x)
    base = x.frame
    out = []
    for arc in arcs_up_to_weight(t.frame, weight, avoid=[t.edge]):
        lifted = pull_back(arc, base, t.flips)
        if lifted != x:
            out.append(lifted)
    return tuple(out)


def disjoint_allowed_arc(x: NormalArc, g: PrescribingGraph, max_weight: int = 12) -> NormalArc | None:
    """A Γ-allowed arc disjoint from ``x``, found in the frame where ``x`` is an edge.

    Any essential arc of a complementary piece of ``x`` descends to an arc
    disjoint from ``x``, and in that frame such arcs are exactly those that
    never cross the edge carrying ``x``. Returns ``x`` itself when it is
    allowed and ``None`` if nothing turns up by ``max_weight``.
    """
    if is_allowed(g, x.endpoints):
        return x
    for w in range(max_weight + 1):
        for arc in _avoiding(x, w):
            if is_allowed(g, arc.endpoints):
                return arc
    return None


def _detours(x: NormalArc, weight: int) -> list[NormalArc]:
    return [arc for arc in _avoiding(x, weight) if sorted(arc.ends) == sorted(x.ends)]


def _search_rerouting(a: NormalArc, b: NormalArc, g: PrescribingGraph,
                      max_weight: int = 10) -> SurgeryOutcome | None:
    """Lightest pair ``α' ⊥ a``, ``β' ⊥ b`` with ``α' ⊥ β'`` and the ends of ``a``, ``b``."""
    for w in range(1, max_weight + 1):
        alphas = _detours(a, w)
        betas = _detours(b, w)
        pairs = sorted(((max(x.weight, y.weight), x.weight + y.weight, x.sort_key(), y.sort_key()), x, y)
                       for x in alphas for y in betas)
        for _, x, y in pairs:
            if is_allowed(g, x.endpoints) and is_allowed(g, y.endpoints) and disjoint(x, y):
                return SurgeryOutcome(x, 2, "a", "lemma2.6(ii)-reroute", partner=y)
    return None


def _lemma_i2(a: NormalArc, b: NormalArc, g: PrescribingGraph) -> SurgeryOutcome:
    pic = Picture(a, b)
    same_sign = pic.forward_sign(pic.ks[0]) == pic.forward_sign(pic.ks[1])
    if not (a.is_loop and b.is_loop) or same_sign:
        # the arms used belong to the arc that is a loop only if the other one is
        x, y = (b, a) if b.is_loop and not a.is_loop else (a, b)
        p = pic if x is a else Picture(x, y)
        d = _try_lift(p, _join(p, p.ks[0], p.ks[1]))
        side = "b" if y is b else "a"
        out = None if d is None else _outcome(d, a, b, side, "lemma2.6(i)", 2, g)
        if out is None:
            raise CaseExhausted("lemma2.6(i): the concatenation is not a valid arc")
        return out
    cands = _boundary_candidates(a, b, None, set(b.ends)) + _boundary_candidates(a, b, None, set(a.ends))
    out = _first(_outcome(d, a, b, "both", "lemma2.6(ii)", 2, g) for d in cands)
    if out is None:
        out = _search_rerouting(a, b, g)
    if out is None:
        raise CaseExhausted("lemma2.6(ii): no boundary arc is essential and no rerouting found")
    return out


def _prop_general(a: NormalArc, b: NormalArc, g: PrescribingGraph, i_ab: int) -> SurgeryOutcome:
    for x, y in ((a, b), (b, a)):
        pic = Picture(x, y)
        side = "b" if y is b else "a"
        ks = pic.ks
        for b_forward in (True, False):
            s = ks[0] if b_forward else ks[-1]
            for step in (1, -1):
                p = pic.pos[s] + step
                if not 0 <= p < pic.n:
                    continue
                t = pic.along_a[p]
                k1, k2 = (s, t) if b_forward else (t, s)
                same = pic.forward_sign(s) == pic.forward_sign(t)
                tag = "prop2.8(i)" if same else "prop2.8(ii)"
                d = _try_lift(pic, _join(pic, k1, k2))
                if d is not None:
                    out = _outcome(d, a, b, side, tag, i_ab, g)
                    if out is not None:
                        return out
                    continue
                if same:
                    continue
                # the concatenation bounds a half-disk: use the far side of its neighbourhood
                j1, j2 = ks.index(k1), ks.index(k2)
                segs = list(range(j1 + 1)) + list(range(j2 + 1, pic.n + 1))
                other = "a" if side == "b" else "b"
                for xi in neighbourhood_arcs(pic, segs, set(y.ends)):
                    if xi is None or xi == x:
                        continue
                    out = _outcome(xi, a, b, other, "prop2.8(ii)-xi", i_ab, g)
                    if out is not None:
                        return out
    raise CaseExhausted(f"prop2.8: no surgery applied at i = {i_ab}")


def reduction_step(a: NormalArc, b: NormalArc, g: PrescribingGraph,
                   strict: bool = True) -> SurgeryOutcome:
    """One surgery: an allowed arc disjoint from one input meeting the other less often.

    Pairs whose ends share an edge of ``g`` use the last unicorn before ``b``.
    Otherwise the case is picked by ``i(a, b)``: 1, 2, or at least 3. With
    ``strict`` the standing hypotheses of the surgery lemmas are enforced.
    """
    i_ab = intersection_number(a, b)
    if i_ab == 0:
        raise HypothesisViolated("the arcs are already disjoint")
    if share_edge(g, a.endpoints, b.endpoints):
        path = unicorn_path(a, b, g)
        out = _outcome(path.vertices[-2], a, b, "b", "unicorn", i_ab, g)
        if out is None:
            raise CaseExhausted("last unicorn does not meet the surgery contract")
        return out
    bad = standing_hypotheses(a, g)
    if bad and strict:
        raise HypothesisViolated(bad)
    if i_ab == 1:
        return _lemma_i1(a, b, g)
    if i_ab == 2:
        return _lemma_i2(a, b, g)
    return _prop_general(a, b, g, i_ab)


def _chain(a: NormalArc, b: NormalArc, g: PrescribingGraph, strict: bool, depth: int) -> list[NormalArc]:
    if depth > 64:
        raise InternalNonTermination("surgery recursion too deep")
    if a == b:
        return [a]
    if disjoint(a, b):
        return [a, b]
    if share_edge(g, a.endpoints, b.endpoints):
        return list(unicorn_path(a, b, g).vertices)
    out = reduction_step(a, b, g, strict)
    r = out.result
    if out.partner is not None:
        return [a, r, out.partner, b]
    if out.side == "both":
        return [a, r, b]
    if out.side == "b":
        return _chain(a, r, g, strict, depth + 1) + [b]
    return [a] + _chain(r, b, g, strict, depth + 1)


def distance_upper_bound(a: NormalArc, b: NormalArc, g: PrescribingGraph,
                         strict: bool = True) -> tuple[int, UnicornPath]:
    """An explicit path from ``a`` to ``b``; its length bounds the distance by ``i(a, b) + 1``."""
    for x in (a, b):
        if not is_allowed(g, x.endpoints):
            raise HypothesisViolated(f"{x} is not allowed by the prescribing graph")
    path = _certify(_chain(a, b, g, strict, 0))
    return path.length, path
