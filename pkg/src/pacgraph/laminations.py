"""
Isotopy classes of essential simple arcs in normal position.

An arc is stored as its normal walk: the sequence of triangle visits it makes,
each visit being ``(triangle, entry, exit)``. Entry and exit are *elements* of
the triangle: sides are 0, 1, 2 and corners are 3, 4, 5. The first visit enters
at a corner and leaves through the opposite side, interior visits pass between
two distinct sides, and the last visit enters through a side and stops at the
opposite corner. An arc that is itself an edge of the frame is a single visit
running from one corner to another.

Reduced walks are exactly the geodesics between distinct cusps of the
universal cover, so a reduced walk up to reversal is a complete invariant of
the isotopy class. Normal coordinates (crossings per edge) and endpoint
sectors are derived from the walk; ``decode`` goes the other way.

Intersection numbers are computed in the universal cover: two lifts can only
cross inside a maximal run of triangles they traverse together, and they
cross there iff they leave the run on opposite sides of each other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (FrameMismatch, Inessential, InternalNonTermination,
                     InvalidWalk, NotSimple, PacError, Unflippable)
from .surface import CutResult, Triangulation, double_flip_iso, flip_halfedge_map

Visit = tuple[int, int, int]
Walk = tuple[Visit, ...]

CORNER = 3
# position of each element on the boundary of a triangle, counter-clockwise:
# corner0, side2, corner1, side0, corner2, side1
_POS = (3, 5, 1, 0, 2, 4)


def _is_side(x: int) -> bool:
    return x < CORNER


def side_of_chord(pin: int, pout: int, x: int) -> int:
    """+1 if element ``x`` is right of the chord ``pin -> pout``, -1 if left, 0 if on it."""
    if x == pin or x == pout:
        return 0
    a, b, p = _POS[pin], _POS[pout], _POS[x]
    return 1 if (p - a) % 6 < (b - a) % 6 else -1


def reverse_walk(w: Walk) -> Walk:
    return tuple((t, o, i) for t, i, o in reversed(w))


# ----------------------------------------------------------------------------
# crossings in the universal cover


def _raw_crossings(A: Sequence[Visit], B: Sequence[Visit], stop_at: int | None) -> int:
    by_tri: dict[int, list[int]] = {}
    for j, v in enumerate(B):
        by_tri.setdefault(v[0], []).append(j)
    total = 0
    for i, (t, ai, ao) in enumerate(A):
        js = by_tri.get(t)
        if not js or ao < 0:
            continue
        for j in js:
            _, bi, bo = B[j]
            if bo < 0:
                continue  # unknown exit: the run cannot be decided yet
            if ai < CORNER and (ai == bi or ai == bo):
                continue  # not the first triangle of this run
            ii, jj = i, j
            if ao < CORNER and ao == bo:
                while 0 <= A[ii][2] < CORNER and A[ii][2] == B[jj][2]:
                    ii += 1
                    jj += 1
                b_first, b_last = bi, B[jj][2]
            elif ao < CORNER and ao == bi:
                while 0 <= A[ii][2] < CORNER and A[ii][2] == B[jj][1]:
                    ii += 1
                    jj -= 1
                b_first, b_last = bo, B[jj][1]
            else:
                b_first, b_last = bi, bo
            if A[ii][2] < 0 or b_last < 0:
                continue
            s1 = side_of_chord(ai, ao, b_first)
            s2 = side_of_chord(A[ii][1], A[ii][2], b_last)
            if s1 * s2 < 0:
                total += 1
                if stop_at is not None and total >= stop_at:
                    return total
    return total


def count_crossings(A: Sequence[Visit], B: Sequence[Visit], same: bool = False,
                    stop_at: int | None = None) -> int:
    """Transverse crossings between the walks ``A`` and ``B``.

    With ``same`` the two walks are the same arc and each self-crossing is
    counted once. Edge walks (single corner-to-corner visits) are not handled
    here. ``stop_at`` returns early once that many crossings are found.
    """
    if same:
        raw = _raw_crossings(A, A, None if stop_at is None else 2 * stop_at)
        return raw // 2
    return _raw_crossings(A, B, stop_at)


def prefix_has_crossing(W: Sequence[Visit]) -> bool:
    """Whether a partial walk already has a self-crossing that extension cannot undo.

    The exit of the last visit is unknown; runs that depend on it are skipped.
    """
    t, i, _ = W[-1]
    P = list(W[:-1]) + [(t, i, -1)]
    return _raw_crossings(P, P, 1) > 0


# ----------------------------------------------------------------------------
# drawn arcs and normalization


@dataclass(frozen=True)
class CrossingSequence:
    """A drawn arc: start corner, the side left through in each triangle, end corner.

    The triangle sequence is determined by the gluing. Consecutive exits may
    backtrack and the ends may sit at any corner; ``normalize`` cleans up.
    """

    start_triangle: int
    start_corner: int
    exits: tuple[int, ...]
    end_corner: int

    def visits(self, frame: Triangulation) -> list[Visit]:
        t = self.start_triangle
        cur = CORNER + self.start_corner
        out: list[Visit] = []
        for s in self.exits:
            if not 0 <= s < 3:
                raise InvalidWalk(f"side index {s} out of range")
            out.append((t, cur, s))
            h = frame.glue[3 * t + s]
            t, cur = divmod(h, 3)
        out.append((t, cur, CORNER + self.end_corner))
        return out


def check_walk(frame: Triangulation, visits: Sequence[Visit]) -> None:
    if not visits:
        raise InvalidWalk("empty walk")
    if visits[0][1] < CORNER or visits[-1][2] < CORNER:
        raise InvalidWalk("walk must start and end at corners")
    for k, (t, i, o) in enumerate(visits):
        if not 0 <= t < frame.n_triangles:
            raise InvalidWalk(f"triangle {t} out of range")
        if k and i >= CORNER or k < len(visits) - 1 and o >= CORNER:
            raise InvalidWalk("corners may only appear at the two ends")
        if k < len(visits) - 1:
            u, r = divmod(frame.glue[3 * t + o], 3)
            if visits[k + 1][0] != u or visits[k + 1][1] != r:
                raise InvalidWalk(f"visit {k + 1} does not continue across side {o} of {t}")


def reduce_walk(frame: Triangulation, visits: Sequence[Visit]) -> Walk:
    """Remove bigons and half-bigons; raise ``Inessential`` for a trivial arc."""
    check_walk(frame, visits)
    S: list[Visit] = []
    carry: int | None = None
    for t, i, o in visits:
        if carry is not None:
            i = carry
            carry = None
        S.append((t, i, o))
        while True:
            t0, i0, o0 = S[-1]
            if i0 < CORNER and i0 == o0:
                # bigon: in and straight back out
                S.pop()
                pt, pi, po = S.pop()
                carry = pi
                break
            if len(S) == 1 and i0 >= CORNER and o0 < CORNER and o0 != i0 - CORNER:
                # half-bigon at the start: slide the endpoint across the side
                S.pop()
                k = frame.corner_across(3 * t0 + o0, 3 * t0 + i0 - CORNER)
                carry = CORNER + k % 3
                break
            break
    if carry is not None:
        raise InvalidWalk("walk ended mid-reduction")
    # half-bigons at the far end
    while True:
        t0, i0, o0 = S[-1]
        if i0 >= CORNER:
            if i0 == o0:
                raise Inessential("arc is isotopic into a puncture")
            return (S[0],)
        if o0 - CORNER == i0:
            return tuple(S)
        S.pop()
        pt, pi, po = S.pop()
        k = frame.corner_across(3 * t0 + i0, 3 * t0 + o0 - CORNER)
        if k // 3 != pt:
            raise PacError("gluing inconsistency during reduction")
        S.append((pt, pi, CORNER + k % 3))


def canonical_walk(frame: Triangulation, w: Walk) -> Walk:
    if len(w) == 1 and w[0][1] >= CORNER and w[0][2] >= CORNER:
        t, i, o = w[0]
        s = 3 - (i - CORNER) - (o - CORNER)
        h = 3 * t + s
        k = frame.glue[h]
        u, r = divmod(k, 3)
        cands = [((t, CORNER + (s + 1) % 3, CORNER + (s + 2) % 3),),
                 ((t, CORNER + (s + 2) % 3, CORNER + (s + 1) % 3),),
                 ((u, CORNER + (r + 1) % 3, CORNER + (r + 2) % 3),),
                 ((u, CORNER + (r + 2) % 3, CORNER + (r + 1) % 3),)]
        return min(cands)
    r = reverse_walk(w)
    return min(w, r)


@dataclass(frozen=True, eq=False)
class NormalArc:
    """An essential simple arc class, as a reduced walk in a fixed frame."""

    frame: Triangulation
    walk: Walk
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_key", (self.frame._key, self.walk))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NormalArc) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self.walk)

    def __lt__(self, other: "NormalArc") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"NormalArc({'/'.join(self.endpoints)}, coords={list(self.coords)})"

    @property
    def is_edge(self) -> bool:
        return len(self.walk) == 1

    @property
    def edge(self) -> int | None:
        if not self.is_edge:
            return None
        t, i, o = self.walk[0]
        s = 3 - (i - CORNER) - (o - CORNER)
        return self.frame.edge_of[3 * t + s]

    @property
    def coords(self) -> tuple[int, ...]:
        c = [0] * self.frame.n_edges
        for t, i, o in self.walk:
            if o < CORNER:
                c[self.frame.edge_of[3 * t + o]] += 1
        return tuple(c)

    @property
    def weight(self) -> int:
        return len(self.walk) - 1

    @property
    def sectors(self) -> tuple[tuple[int, int], tuple[int, int]]:
        t0, i0, _ = self.walk[0]
        t1, _, o1 = self.walk[-1]
        return (t0, i0 - CORNER), (t1, o1 - CORNER)

    @property
    def ends(self) -> tuple[str, str]:
        """Labels at the start and end of the stored orientation."""
        (t0, c0), (t1, c1) = self.sectors
        return self.frame.labels[3 * t0 + c0], self.frame.labels[3 * t1 + c1]

    @property
    def endpoints(self) -> tuple[str, str]:
        return tuple(sorted(self.ends))  # type: ignore[return-value]

    @property
    def is_loop(self) -> bool:
        a, b = self.ends
        return a == b

    def sort_key(self) -> tuple:
        return (self.weight, self.coords, self.walk)

    def reversed_walk(self) -> Walk:
        return reverse_walk(self.walk)

    def crossing_sequence(self) -> CrossingSequence:
        t0, i0, _ = self.walk[0]
        return CrossingSequence(t0, i0 - CORNER, tuple(v[2] for v in self.walk[:-1]),
                                self.walk[-1][2] - CORNER)

    def to_json(self, frame_id: str = "base") -> dict:
        (t0, c0), (t1, c1) = self.sectors
        a, b = self.ends
        return {"frame": frame_id, "coords": list(self.coords),
                "endpoints": [[a, [t0, c0]], [b, [t1, c1]]]}


def arc_from_walk(frame: Triangulation, visits: Sequence[Visit], check_simple: bool = True) -> NormalArc:
    w = reduce_walk(frame, visits)
    if check_simple and len(w) > 1 and count_crossings(w, w, same=True, stop_at=1):
        raise NotSimple("the drawn arc crosses itself essentially")
    return NormalArc(frame, canonical_walk(frame, w))


def normalize(c: CrossingSequence | Sequence[Visit], frame: Triangulation) -> NormalArc:
    """Reduce a drawn arc to normal form; ``Inessential`` if it bounds a half-disk."""
    visits = c.visits(frame) if isinstance(c, CrossingSequence) else list(c)
    return arc_from_walk(frame, visits)


def edge_arc(frame: Triangulation, e: int) -> NormalArc:
    h = frame.edge_halves[e][0]
    t, s = divmod(h, 3)
    return NormalArc(frame, canonical_walk(frame, ((t, CORNER + (s + 1) % 3, CORNER + (s + 2) % 3),)))


def endpoints(a: NormalArc) -> tuple[str, str]:
    return a.endpoints


# ----------------------------------------------------------------------------
# coordinates


def triangle_counts(frame: Triangulation, coords: Sequence[int],
                    terminals: dict[int, int]) -> list[tuple[int, int, int]]:
    """Corner-arc counts per triangle; ``terminals`` maps corner index -> ends there."""
    out = []
    for t in range(frame.n_triangles):
        x = [coords[frame.edge_of[3 * t + s]] for s in range(3)]
        tau = [terminals.get(3 * t + c, 0) for c in range(3)]
        n = []
        for k in range(3):
            v = x[(k + 1) % 3] + x[(k + 2) % 3] - x[k] - tau[(k + 1) % 3] - tau[(k + 2) % 3] + tau[k]
            if v < 0 or v % 2:
                raise InvalidWalk(f"matching equations fail in triangle {t}")
            n.append(v // 2)
        for k in range(3):
            if tau[k] and n[k]:
                raise InvalidWalk(f"terminal at corner {k} of triangle {t} would cross corner arcs")
        out.append((n[0], n[1], n[2]))
    return out


def decode(frame: Triangulation, coords: Sequence[int],
           sectors: Sequence[Sequence[int]]) -> NormalArc:
    """Rebuild an arc from normal coordinates and its two endpoint sectors."""
    (t0, c0), (t1, c1) = (tuple(s) for s in sectors)
    if len(coords) != frame.n_edges:
        raise InvalidWalk("coordinate vector has the wrong length")
    if sum(coords) == 0:
        if t0 != t1 or c0 == c1:
            raise InvalidWalk("a zero vector must name two corners of one triangle")
        return NormalArc(frame, canonical_walk(frame, ((t0, CORNER + c0, CORNER + c1),)))
    terminals: dict[int, int] = {}
    for t, c in ((t0, c0), (t1, c1)):
        terminals[3 * t + c] = terminals.get(3 * t + c, 0) + 1
    n = triangle_counts(frame, coords, terminals)

    def x(t: int, s: int) -> int:
        return coords[frame.edge_of[3 * t + s]]

    walk: list[Visit] = []
    t, c = t0, c0
    s = c
    p = n[t][(s + 1) % 3]  # position on side s counted from corner s+1
    walk.append((t, CORNER + c, s))
    limit = sum(coords) + 1
    while len(walk) <= limit:
        u, r = divmod(frame.glue[3 * t + s], 3)
        q = x(t, s) - 1 - p  # position on side r counted from corner r+1
        nu = n[u]
        if q < nu[(r + 1) % 3]:
            s2 = (r + 2) % 3
            p = x(u, s2) - 1 - q
            walk.append((u, r, s2))
        elif q < nu[(r + 1) % 3] + terminals.get(3 * u + r, 0):
            walk.append((u, r, CORNER + r))
            break
        else:
            d = x(u, r) - 1 - q
            s2 = (r + 1) % 3
            p = d
            walk.append((u, r, s2))
        t, s = u, s2
    else:
        raise InvalidWalk("trace did not terminate")
    if len(walk) != sum(coords) + 1:
        raise InvalidWalk("coordinates describe more than one component")
    end = (walk[-1][0], walk[-1][2] - CORNER)
    if end != (t1, c1) and not (end == (t0, c0) and (t0, c0) == (t1, c1)):
        raise InvalidWalk("trace ended at a different sector")
    return arc_from_walk(frame, walk)


def arc_from_json(frame: Triangulation, data: dict) -> NormalArc:
    return decode(frame, data["coords"], [e[1] for e in data["endpoints"]])


def arcs_up_to_weight(frame: Triangulation, weight: int,
                      avoid: Iterable[int] = ()) -> list[NormalArc]:
    """Every essential simple arc crossing at most ``weight`` edges of ``frame``.

    Depth-first over reduced walks: a walk is extended one triangle at a time
    and abandoned as soon as its fixed part crosses itself. Arcs that would
    cross an edge in ``avoid`` are skipped. Sorted by (weight, coords, walk).
    """
    blocked = {h for h in range(3 * frame.n_triangles) if frame.edge_of[h] in set(avoid)}
    found: set[NormalArc] = set()

    def extend(walk: list[Visit]) -> None:
        t, i, _ = walk[-1]
        if len(walk) - 1 > weight:
            return
        # stop at the corner opposite the side we came in through
        end = walk[:-1] + [(t, i, CORNER + i)]
        try:
            found.add(arc_from_walk(frame, end))
        except (NotSimple, Inessential):
            pass
        if len(walk) - 1 == weight:
            return
        for o in range(3):
            if o == i or 3 * t + o in blocked:
                continue
            u, r = divmod(frame.glue[3 * t + o], 3)
            nxt = walk[:-1] + [(t, i, o), (u, r, -1)]
            if not prefix_has_crossing(nxt):
                extend(nxt)

    for t in range(frame.n_triangles):
        for c in range(3):
            if 3 * t + c in blocked:
                continue
            u, r = divmod(frame.glue[3 * t + c], 3)
            extend([(t, CORNER + c, c), (u, r, -1)])
    for e in range(frame.n_edges):
        found.add(edge_arc(frame, e))
    return sorted(found)


# ----------------------------------------------------------------------------
# order of strands along an edge


def _ccw_offset(entry: int, x: int) -> int:
    return (_POS[x] - _POS[entry]) % 6


def _compare_forward(A: Sequence[Visit], i: int, B: Sequence[Visit], j: int) -> int:
    """Follow two walks forward from visits ``A[i]``, ``B[j]`` (same triangle, same entry).

    Returns +1 if A ends up to the right of B, -1 if to the left, 0 if they
    never separate.
    """
    while i < len(A) and j < len(B):
        (_, ai, ao), (_, _, bo) = A[i], B[j]
        if ao != bo:
            return 1 if _ccw_offset(ai, ao) < _ccw_offset(ai, bo) else -1
        if ao >= CORNER:
            return 0
        i += 1
        j += 1
    return 0


def strand_order(frame: Triangulation, e: int, A: Sequence[Visit], ka: int,
                 B: Sequence[Visit], kb: int) -> int:
    """Compare two strands crossing edge ``e`` by position along it.

    A strand is a walk plus the index of the visit it leaves through ``e``.
    Returns -1 when the A strand is nearer the ``P`` end of ``e`` (corner
    ``s0 + 1`` of the first half), +1 when nearer ``Q``, 0 for the same strand.
    """
    h0 = frame.edge_halves[e][0]

    def oriented(W: Sequence[Visit], k: int) -> tuple[Sequence[Visit], int]:
        t, _, o = W[k]
        if 3 * t + o == h0:
            return W, k
        R = reverse_walk(tuple(W))
        return R, len(W) - 2 - k

    A, ka = oriented(A, ka)
    B, kb = oriented(B, kb)
    c = _compare_forward(A, ka + 1, B, kb + 1)
    if c:
        return -c  # P lies to the right when crossing from the first half
    RA, RB = reverse_walk(tuple(A)), reverse_walk(tuple(B))
    c = _compare_forward(RA, len(A) - 1 - ka, RB, len(B) - 1 - kb)
    return c  # travelling back, Q lies to the right


def edge_crossings(frame: Triangulation, walk: Sequence[Visit], e: int) -> list[int]:
    """Indices ``k`` such that the walk leaves visit ``k`` through edge ``e``."""
    return [k for k in range(len(walk) - 1)
            if frame.edge_of[3 * walk[k][0] + walk[k][2]] == e]


# ----------------------------------------------------------------------------
# intersection number


def _edge_crossings(e_arc: NormalArc, b: NormalArc) -> int:
    e = e_arc.edge
    if b.is_edge:
        return 0
    return b.coords[e]  # type: ignore[index]


def intersection_number(a: NormalArc, b: NormalArc) -> int:
    """Geometric intersection number of two arc classes (interior crossings)."""
    if a.frame != b.frame:
        if a.frame.surface != b.frame.surface:
            raise FrameMismatch("arcs live on different surfaces")
        raise FrameMismatch("arcs are expressed in different frames; transport one first")
    if a == b:
        return 0
    if a.is_edge:
        return _edge_crossings(a, b)
    if b.is_edge:
        return _edge_crossings(b, a)
    return count_crossings(a.walk, b.walk)


def disjoint(a: NormalArc, b: NormalArc) -> bool:
    if a == b:
        return True
    if a.is_edge:
        return _edge_crossings(a, b) == 0
    if b.is_edge:
        return _edge_crossings(b, a) == 0
    return count_crossings(a.walk, b.walk, stop_at=1) == 0


# ----------------------------------------------------------------------------
# flips


def transport_walk(frame: Triangulation, walk: Walk, e: int) -> list[Visit]:
    """Rewrite a reduced walk for the triangulation ``frame.flip(e)``."""
    h1, h2 = frame.edge_halves[e]
    t1, s1 = divmod(h1, 3)
    t2, s2 = divmod(h2, 3)
    if t1 == t2:
        raise Unflippable(f"edge {e} is self-folded")
    n1, p1 = (s1 + 1) % 3, (s1 + 2) % 3
    n2, p2 = (s2 + 1) % 3, (s2 + 2) % 3
    name = {
        (t1, CORNER + s1): "A", (t1, CORNER + n1): "B", (t1, CORNER + p1): "C",
        (t1, n1): "y1", (t1, p1): "y2",
        (t2, CORNER + s2): "D", (t2, CORNER + n2): "C", (t2, CORNER + p2): "B",
        (t2, n2): "z1", (t2, p2): "z2",
    }
    new = {  # element name -> [(triangle, element)] after the flip
        "A": [(t1, CORNER + 0), (t2, CORNER + 2)], "B": [(t1, CORNER + 1)],
        "C": [(t2, CORNER + 1)], "D": [(t1, CORNER + 2), (t2, CORNER + 0)],
        "y1": [(t2, 0)], "y2": [(t1, 2)], "z1": [(t1, 0)], "z2": [(t2, 2)],
    }
    if len(walk) == 1:
        t, i, o = walk[0]
        s = 3 - (i - CORNER) - (o - CORNER)
        h = 3 * t + s
        if frame.edge_of[h] == e:
            return [(t1, CORNER + 1, 1), (t2, 1, CORNER + 1)]
        nh = flip_halfedge_map(t1, s1, t2, s2).get(h, h)
        u, r = divmod(nh, 3)
        return [(u, CORNER + (r + 1) % 3, CORNER + (r + 2) % 3)]

    def pass_visits(X: str, Y: str) -> list[Visit]:
        for tri in (t1, t2):
            ex = [el for (tt, el) in new[X] if tt == tri]
            ey = [el for (tt, el) in new[Y] if tt == tri]
            if ex and ey and not (X in "AD" and Y in "AD"):
                return [(tri, ex[0], ey[0])]
        if X in ("A", "D") and Y in ("A", "D"):
            return [(t1, CORNER + (0 if X == "A" else 2), CORNER + (2 if X == "A" else 0))]
        (tx, ex), (ty, ey) = new[X][0], new[Y][0]
        if tx == ty:
            raise PacError("pass mapping inconsistency")
        return [(tx, ex, 1), (ty, 1, ey)]

    out: list[Visit] = []
    k = 0
    n = len(walk)
    while k < n:
        t, i, o = walk[k]
        if t not in (t1, t2):
            out.append((t, i, o))
            k += 1
            continue
        m = k
        while m < n - 1 and walk[m][2] == (s1 if walk[m][0] == t1 else s2):
            m += 1
        X = name[(walk[k][0], walk[k][1])]
        Y = name[(walk[m][0], walk[m][2])]
        out.extend(pass_visits(X, Y))
        k = m + 1
    return out


def transport(a: NormalArc, e: int, flipped: Triangulation | None = None) -> NormalArc:
    """The same class expressed in ``a.frame.flip(e)``."""
    frame = a.frame
    if not frame.is_flippable(e):
        raise Unflippable(f"edge {e} is self-folded")
    new_frame = flipped if flipped is not None else frame.flip(e)
    visits = transport_walk(frame, a.walk, e)
    w = reduce_walk(new_frame, visits)
    return NormalArc(new_frame, canonical_walk(new_frame, w))


def carry(a: NormalArc, dst: Triangulation, iso: Sequence[tuple[int, int]]) -> NormalArc:
    """Push ``a`` along a combinatorial isomorphism ``a.frame -> dst``."""
    def el(x: int, r: int) -> int:
        return CORNER + (x - CORNER + r) % 3 if x >= CORNER else (x + r) % 3

    visits = []
    for t, i, o in a.walk:
        u, r = iso[t]
        visits.append((u, el(i, r), el(o, r)))
    return NormalArc(dst, canonical_walk(dst, tuple(visits)))


def transport_back(a: NormalArc, e: int, prev: Triangulation) -> NormalArc:
    """Undo ``transport(., e)``: express ``a`` (living in ``prev.flip(e)``) in ``prev``."""
    back = transport(a, e)
    return carry(back, prev, double_flip_iso(prev, e))


def pull_back(a: NormalArc, base: Triangulation, flips: Sequence[int]) -> NormalArc:
    """Express ``a``, which lives at the end of the flip path ``flips`` from ``base``, in ``base``."""
    frames = [base]
    for e in flips[:-1]:
        frames.append(frames[-1].flip(e))
    for e, prev in zip(reversed(flips), reversed(frames)):
        a = transport_back(a, e, prev)
    return a


def transport_path(a: NormalArc, flips: Iterable[int]) -> NormalArc:
    for e in flips:
        a = transport(a, e)
    return a


def tighten(a: NormalArc) -> tuple[Triangulation, int, tuple[int, ...]]:
    """Flip until the class of ``a`` is an edge.

    Each step flips the crossed edge whose flip lowers the weight of ``a``
    the most (ties to the lowest edge id), so weight strictly decreases.
    """
    transcript: list[int] = []
    cur = a
    while not cur.is_edge:
        best = None
        crossed = sorted({e for e, c in enumerate(cur.coords) if c})
        for e in crossed:
            if not cur.frame.is_flippable(e):
                continue
            nxt = transport(cur, e)
            if best is None or nxt.weight < best[1].weight:
                best = (e, nxt)
        if best is None or best[1].weight >= cur.weight:
            raise InternalNonTermination(
                f"no weight-decreasing flip for an arc of weight {cur.weight}")
        transcript.append(best[0])
        cur = best[1]
    return cur.frame, cur.edge, tuple(transcript)  # type: ignore[return-value]


def complement_components(a: NormalArc) -> CutResult:
    frame, e, _ = tighten(a)
    return frame.cut_along_edge(e)
