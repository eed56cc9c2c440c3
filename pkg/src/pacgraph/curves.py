"""
Simple closed curves as cyclic normal walks, and Dehn twists of arcs.

A curve is the cyclic sequence of triangle visits ``(triangle, entry, exit)``
of a normal representative, both ends of each visit being sides. Free
cancellation of back-and-forth crossings is the whole of normalisation:
what survives is a closed geodesic of the universal cover, so the walk up to
rotation and reversal is a complete invariant.

A Dehn twist splices one copy of the curve into the arc at every crossing,
read in the direction that turns left (or right). The copies go in the
order the crossings occur along the arc; where the shared runs of two lifts
overlap, that order is read off from which side of one lift the other lies.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Inessential, InternalNonTermination, InvalidWalk, PacError
from .laminations import (CORNER, NormalArc, Visit, _compare_forward, arc_from_walk,
                          reverse_walk, side_of_chord, strand_order, transport_walk)
from .surface import Triangulation


def _visits_from_exits(frame: Triangulation, exits: Sequence[int]) -> tuple[Visit, ...]:
    n = len(exits)
    out = []
    for k, h in enumerate(exits):
        prev = exits[k - 1]
        t, o = divmod(h, 3)
        u, i = divmod(frame.glue[prev], 3)
        if u != t:
            raise InvalidWalk(f"crossing {k} does not continue the previous one")
        out.append((t, i, o))
    return tuple(out) if n else ()


def _reduce_exits(frame: Triangulation, exits: Sequence[int]) -> list[int]:
    """Cancel every crossing that is immediately undone, cyclically."""
    st: list[int] = []
    for h in exits:
        if st and frame.glue[st[-1]] == h:
            st.pop()
        else:
            st.append(h)
    lo, hi = 0, len(st)
    while hi - lo >= 2 and frame.glue[st[hi - 1]] == st[lo]:
        lo += 1
        hi -= 1
    return st[lo:hi]


def _rotations(w: Sequence[Visit]) -> Iterable[tuple[Visit, ...]]:
    for k in range(len(w)):
        yield tuple(w[k:]) + tuple(w[:k])


def _reverse_cyclic(w: Sequence[Visit]) -> tuple[Visit, ...]:
    return tuple((t, o, i) for t, i, o in reversed(w))


@dataclass(frozen=True, eq=False)
class ClosedCurve:
    frame: Triangulation
    walk: tuple[Visit, ...]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ClosedCurve) and (self.frame._key, self.walk) == (other.frame._key, other.walk)

    def __hash__(self) -> int:
        return hash(self.walk)

    def __repr__(self) -> str:
        return f"ClosedCurve(coords={list(self.coords)})"

    def __len__(self) -> int:
        return len(self.walk)

    @property
    def coords(self) -> tuple[int, ...]:
        c = [0] * self.frame.n_edges
        for t, _, o in self.walk:
            c[self.frame.edge_of[3 * t + o]] += 1
        return tuple(c)

    @property
    def weight(self) -> int:
        return len(self.walk)

    @property
    def exits(self) -> list[int]:
        return [3 * t + o for t, _, o in self.walk]

    def reversed(self) -> tuple[Visit, ...]:
        return _reverse_cyclic(self.walk)

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "walk": [list(v) for v in self.walk]}


def curve_from_exits(frame: Triangulation, exits: Sequence[int]) -> ClosedCurve:
    """Normalise a closed drawing given by the half-edges it leaves through, in order."""
    _visits_from_exits(frame, exits)  # validates continuity
    red = _reduce_exits(frame, exits)
    if not red:
        raise Inessential("the curve bounds a disk")
    w = _visits_from_exits(frame, red)
    _check_not_peripheral(frame, w)
    best = min(min(_rotations(w)), min(_rotations(_reverse_cyclic(w))))
    return ClosedCurve(frame, best)


def _check_not_peripheral(frame: Triangulation, w: Sequence[Visit]) -> None:
    """Reject walks that only ever turn around one and the same puncture."""
    n = len(w)
    for k, (t, i, o) in enumerate(w):
        c = 3 * t + (3 - i - o)
        t2, i2, o2 = w[(k + 1) % n]
        if frame.corner_across(3 * t + o, c) != 3 * t2 + (3 - i2 - o2):
            return
    t, i, o = w[0]
    lab = frame.labels[3 * t + (3 - i - o)]
    raise Inessential(f"the curve is parallel to the boundary {lab!r}")


def self_crossings(c: ClosedCurve) -> int:
    """Transverse self-intersections of the curve (0 for a simple curve)."""
    return _curve_crossings(c.walk, c.walk, same=True)


# ----------------------------------------------------------------------------
# curves built from arcs


def _turn(c: int, entered: int) -> int:
    """Leave a triangle through the other side at corner ``c``; arriving from the far side, turn one fixed way."""
    if entered == c:
        return (c + 1) % 3
    return (c + 1) % 3 if entered == (c + 2) % 3 else (c + 2) % 3


def _step(frame: Triangulation, t: int, c: int, o: int) -> tuple[int, int, int]:
    k = frame.corner_across(3 * t + o, 3 * t + c)
    u, c2 = divmod(k, 3)
    return u, c2, frame.glue[3 * t + o] % 3


def _revolve(frame: Triangulation, t: int, c: int, first: int,
             stop: tuple[int, int] | None = None) -> list[int]:
    """Exits taken walking around the puncture at corner ``c`` of ``t``.

    The walk leaves ``t`` through side ``first`` (a side at ``c``) and keeps
    turning the same way until it is back in the corner ``stop`` (default:
    where it started).
    """
    target = stop if stop is not None else (t, c)
    exits = [3 * t + first]
    tt, cc, ee = _step(frame, t, c, first)
    for _ in range(3 * frame.n_triangles + 1):
        if (tt, cc) == target:
            return exits
        o = _turn(cc, ee)
        exits.append(3 * tt + o)
        tt, cc, ee = _step(frame, tt, cc, o)
    raise InternalNonTermination("revolution around a puncture did not close")


def _edge_sides(a: NormalArc) -> tuple[int, int, int, int, int, int]:
    """For an edge arc: its triangle, side, end corners, and the triangle and side across."""
    frame = a.frame
    t, i, o = a.walk[0]
    c1, c2 = i - CORNER, o - CORNER
    s = 3 - c1 - c2
    u, r = divmod(frame.glue[3 * t + s], 3)
    return t, s, c1, c2, u, r


def curve_around_arc(a: NormalArc) -> ClosedCurve:
    """The boundary of a regular neighbourhood of an arc with distinct ends and its two ends."""
    if a.is_loop:
        raise PacError("use loop_pushoffs for arcs whose ends coincide")
    frame = a.frame
    if a.is_edge:
        t, s, c1, c2, u, r = _edge_sides(a)
        cq = frame.corner_across(3 * t + s, 3 * t + c2) % 3
        cp = frame.corner_across(3 * t + s, 3 * t + c1) % 3
        exits = _revolve(frame, t, c2, c1, stop=(u, cq))
        exits += _revolve(frame, u, cp, 3 - cp - r, stop=(t, c1))
        return curve_from_exits(frame, exits)
    w = a.walk
    tl, il, _ = w[-1]
    tf, _, of = w[0]
    exits = [3 * t + o for t, _, o in w[:-1]]
    exits += _revolve(frame, tl, il, (il + 1) % 3)
    exits += [3 * t + o for t, _, o in reverse_walk(w)[:-1]]
    exits += _revolve(frame, tf, of, (of + 1) % 3)
    return curve_from_exits(frame, exits)


def loop_pushoffs(a: NormalArc) -> list[ClosedCurve]:
    """The essential curves among the two ways of closing a loop up around its end."""
    if not a.is_loop:
        raise PacError("push-offs are for loops")
    frame = a.frame
    if a.is_edge:
        t, s, c1, c2, _, _ = _edge_sides(a)
        options = [_revolve(frame, t, c2, side, stop=(t, c1)) for side in (c1, s)]
    else:
        w = a.walk
        tl, il, _ = w[-1]
        tf, cf, _ = w[0]
        body = [3 * t + o for t, _, o in w[:-1]]
        # the revolution ends in the starting corner; the body leaves from there
        options = [body + _revolve(frame, tl, il, first, stop=(tf, cf - CORNER))
                   for first in ((il + 1) % 3, (il + 2) % 3)]
        if (tl, il) == (tf, cf - CORNER):
            options.append(body)
    out: list[ClosedCurve] = []
    for exits in options:
        try:
            c = curve_from_exits(frame, exits)
        except Inessential:
            continue
        if c not in out:
            out.append(c)
    return out


# ----------------------------------------------------------------------------
# crossings with arcs and with curves


@dataclass(frozen=True)
class _Crossing:
    start: int  # arc visit where the shared run begins
    stop: int  # arc visit where it ends
    curve_index: int  # unrolled curve visit aligned with ``start``
    forward: bool  # whether the curve runs along the arc in the arc's direction
    heads_left: bool  # whether the curve, read forwards, crosses to the left of the arc

    def curve_at(self, k: int) -> int:
        return self.curve_index + (k - self.start if self.forward else self.start - k)


def _periods(n_arc: int, L: int) -> tuple[int, int]:
    p = n_arc // L + 3
    return p, 2 * p + 1


def _arc_crossings(A: Sequence[Visit], B: Sequence[Visit], L: int, p: int) -> list[_Crossing]:
    """Crossings of an arc walk with the lifts of a closed curve unrolled into ``B``."""
    lo, hi = p * L, (p + 1) * L
    out = []
    for i, (t, ai, ao) in enumerate(A):
        for j in range(lo, hi):
            if B[j][0] != t:
                continue
            _, bi, bo = B[j]
            if ai < CORNER and (ai == bi or ai == bo):
                continue
            ii, jj = i, j
            forward = True
            if ao < CORNER and ao == bo:
                while A[ii][2] < CORNER and A[ii][2] == B[jj][2]:
                    ii += 1
                    jj += 1
                b_first, b_last = bi, B[jj][2]
            elif ao < CORNER and ao == bi:
                forward = False
                while A[ii][2] < CORNER and A[ii][2] == B[jj][1]:
                    ii += 1
                    jj -= 1
                b_first, b_last = bo, B[jj][1]
            else:
                b_first, b_last = bi, bo
            s1 = side_of_chord(ai, ao, b_first)
            s2 = side_of_chord(A[ii][1], A[ii][2], b_last)
            if s1 * s2 < 0:
                left = (s1 > 0) if forward else (s1 < 0)
                out.append(_Crossing(i, ii, j, forward, left))
    return out


def _side_of_lift(B: Sequence[Visit], jx: int, jy: int) -> int:
    """Which side (+1 right, -1 left) of the lift through ``B[jx]`` the lift through ``B[jy]`` lies on.

    Both visits are in the same triangle of the universal cover.
    """
    _, xi, xo = B[jx]
    _, yi, yo = B[jy]
    for w in (yi, yo):
        if w not in (xi, xo):
            return side_of_chord(xi, xo, w)
    # parallel here: follow both until they part
    if yi == xi:
        c = _compare_forward(B, jy, B, jx)
        if c:
            return c
        R = _reverse_cyclic(B)
        n = len(B)
        return -_compare_forward(R, n - 1 - jy, R, n - 1 - jx)
    R = _reverse_cyclic(B)
    n = len(B)
    # B[jy] read backwards enters through xi like B[jx] does
    c = _compare_forward(R, n - 1 - jy, B, jx)
    if c:
        return c
    return -_compare_forward(B, jy, R, n - 1 - jx)


def _order_crossings(A: Sequence[Visit], B: Sequence[Visit], xs: list[_Crossing]) -> list[_Crossing]:
    """Sort crossings by position along the arc."""
    def start_side(x: _Crossing) -> int:
        _, bi, bo = B[x.curve_index]
        return side_of_chord(bi, bo, A[x.start][1])

    def cmp(x: _Crossing, y: _Crossing) -> int:
        if x.stop < y.start:
            return -1
        if y.stop < x.start:
            return 1
        m = max(x.start, y.start)
        far = _side_of_lift(B, x.curve_at(m), y.curve_at(m)) != start_side(x)
        return -1 if far else 1

    return sorted(xs, key=functools.cmp_to_key(cmp))


def _edge_crossing_list(frame: Triangulation, A: Sequence[Visit], B: Sequence[Visit],
                        L: int, p: int) -> tuple[list[int], list[bool]]:
    """For an edge arc: curve visits in its triangle at each crossing, ordered from its start, and turn sides."""
    t, i, o = A[0]
    c1, c2 = i - CORNER, o - CORNER
    s = 3 - c1 - c2
    e = frame.edge_of[3 * t + s]
    ks = [k for k in range(p * L, (p + 1) * L) if frame.edge_of[3 * B[k][0] + B[k][2]] == e]
    h0 = frame.edge_halves[e][0]
    p_corner = 3 * (h0 // 3) + (h0 % 3 + 1) % 3
    if h0 // 3 != t or h0 % 3 != s:
        p_corner = frame.corner_across(h0, p_corner)
    from_p = p_corner == 3 * t + c1
    order = sorted(ks, key=functools.cmp_to_key(lambda x, y: strand_order(frame, e, B, x, B, y)))
    if not from_p:
        order.reverse()
    idx, left = [], []
    for k in order:
        if B[k][0] == t and B[k][2] == s:
            idx.append(k)
            left.append(side_of_chord(i, o, B[k][1]) > 0)
        else:
            idx.append(k + 1)
            left.append(side_of_chord(i, o, B[k + 1][2]) < 0)
    return idx, left


def _curve_crossings(C1: Sequence[Visit], C2: Sequence[Visit], same: bool = False) -> int:
    """Crossings between two closed curves, by unrolling both.

    One lift of the first curve is fixed; runs starting in one period of it
    are matched against lifts of the second curve in every phase.
    """
    L1, L2 = len(C1), len(C2)
    q1 = L2 // L1 + 2
    A = list(C1) * (2 * q1 + 1)
    p, reps2 = _periods(len(A), L2)
    B = list(C2) * reps2
    total = 0
    for i in range(q1 * L1, (q1 + 1) * L1):
        t, ai, ao = A[i]
        for j in range(p * L2, (p + 1) * L2):
            if B[j][0] != t:
                continue
            _, bi, bo = B[j]
            if ai == bi or ai == bo:
                continue
            ii, jj = i, j
            if ao == bo:
                while A[ii][2] == B[jj][2]:
                    ii += 1
                    jj += 1
                b_first, b_last = bi, B[jj][2]
            elif ao == bi:
                while A[ii][2] == B[jj][1]:
                    ii += 1
                    jj -= 1
                b_first, b_last = bo, B[jj][1]
            else:
                b_first, b_last = bi, bo
            s1 = side_of_chord(ai, ao, b_first)
            s2 = side_of_chord(A[ii][1], A[ii][2], b_last)
            total += s1 * s2 < 0
    return total // 2 if same else total


def _edge_walk(frame: Triangulation, w: Sequence[Visit]) -> list[Visit]:
    """An edge arc redrawn as two visits across its own edge (the same class)."""
    t, i, o = w[0]
    s = 3 - (i - CORNER) - (o - CORNER)
    u, r = divmod(frame.glue[3 * t + s], 3)
    cq = frame.corner_across(3 * t + s, 3 * t + (o - CORNER)) % 3
    return [(t, i, s), (u, r, CORNER + cq)]


def crossing_number(c: ClosedCurve, a: NormalArc) -> int:
    """Geometric intersection number of a curve and an arc (same frame)."""
    if c.frame != a.frame:
        raise PacError("curve and arc live in different frames")
    if a.is_edge:
        return c.coords[a.edge]  # type: ignore[index]
    L = len(c.walk)
    p, reps = _periods(len(a.walk), L)
    return len(_arc_crossings(a.walk, list(c.walk) * reps, L, p))


def curve_intersection(c1: ClosedCurve, c2: ClosedCurve) -> int:
    if c1.frame != c2.frame:
        raise PacError("curves live in different frames")
    if c1 == c2:
        return 0
    return _curve_crossings(c1.walk, c2.walk)


# ----------------------------------------------------------------------------
# flips


def transport_curve(c: ClosedCurve, e: int, flipped: Triangulation | None = None) -> ClosedCurve:
    frame = c.frame
    new = flipped if flipped is not None else frame.flip(e)
    h1, h2 = frame.edge_halves[e]
    square = {h1 // 3, h2 // 3}
    w = list(c.walk)
    if not any(t in square for t, _, _ in w):
        return ClosedCurve(new, c.walk)
    # start right after a crossing of an edge other than e, so passes are whole
    for k, (t, _, o) in enumerate(w):
        if frame.edge_of[3 * t + o] != e:
            w = w[k + 1:] + w[:k + 1]
            break
    moved = transport_walk(frame, tuple(w), e)
    return curve_from_exits(new, [3 * t + o for t, _, o in moved])


def transport_curve_path(c: ClosedCurve, flips: Iterable[int]) -> ClosedCurve:
    for e in flips:
        c = transport_curve(c, e)
    return c


# ----------------------------------------------------------------------------
# twisting


def _loop_at(B: Sequence[Visit], R: Sequence[Visit], L: int, j: int, forward: bool) -> tuple[Visit, list[Visit]]:
    """The curve visit at unrolled index ``j`` and one full turn after it, in the chosen direction."""
    n = len(B)
    if forward:
        return B[j], [B[j + m] for m in range(1, L)]
    jr = n - 1 - j
    return R[jr], [R[jr + m] for m in range(1, L)]


def _twist_walk(frame: Triangulation, A: Sequence[Visit], C: Sequence[Visit],
                direction: int) -> list[Visit]:
    L = len(C)
    p, reps = _periods(len(A), L)
    B = list(C) * reps
    R = list(_reverse_cyclic(B))
    inserts: dict[int, list[tuple[int, bool]]] = {}
    if len(A) == 1:
        idx, left = _edge_crossing_list(frame, A, B, L, p)
        inserts[0] = [(j, lf == (direction > 0)) for j, lf in zip(idx, left)]
    else:
        xs = _order_crossings(A, B, _arc_crossings(A, B, L, p))
        k = 0
        for x in xs:
            k = max(k, x.start)
            inserts.setdefault(k, []).append((x.curve_at(k), x.heads_left == (direction > 0)))
    out: list[Visit] = []
    for k, (t, ai, ao) in enumerate(A):
        cur_in = ai
        for j, fwd in inserts.get(k, []):
            (_, bi, bo), turn = _loop_at(B, R, L, j, fwd)
            out.append((t, cur_in, bo))
            out.extend(turn)
            cur_in = bi
        out.append((t, cur_in, ao))
    return out


def twist_arc(c: ClosedCurve, a: NormalArc, power: int = 1) -> NormalArc:
    """The Dehn twist of ``a`` about ``c``, turning left for positive powers."""
    if c.frame != a.frame:
        raise PacError("curve and arc live in different frames")
    cur = a
    step = 1 if power > 0 else -1
    for _ in range(abs(power)):
        cur = arc_from_walk(c.frame, _twist_walk(c.frame, cur.walk, c.walk, step))
    return cur


# ----------------------------------------------------------------------------
# the two sides of a curve


@dataclass(frozen=True)
class Side:
    genus: int
    labels: tuple[str, ...]
    copies: int  # how many copies of the curve bound this side (2 when non-separating)

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - len(self.labels) - self.copies

    def to_json(self) -> dict:
        return {"genus": self.genus, "labels": list(self.labels), "copies": self.copies}


def curve_sides(c: ClosedCurve) -> tuple[Side, ...]:
    """The complementary pieces of a curve: genus, boundary labels, and copies of the curve on their boundary.

    The strands of the curve cut each triangle into a stack of regions at
    each corner and one central region; regions are glued across edge
    segments. Each piece is an open surface made of its regions and the
    segments between them, so its Euler characteristic is faces minus
    segments.
    """
    frame = c.frame
    nt = frame.n_triangles
    around = [[0, 0, 0] for _ in range(nt)]
    for t, i, o in c.walk:
        around[t][3 - i - o] += 1

    parent: dict[tuple, tuple] = {}

    def find(x: tuple) -> tuple:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: tuple, y: tuple) -> None:
        parent[find(x)] = find(y)

    def region(t: int, c_: int, level: int) -> tuple:
        return (t, c_, level) if level < around[t][c_] else (t, "mid")

    def seg_region(t: int, s: int, j: int) -> tuple:
        """Region of segment ``j`` (counted from corner ``s+1``) on side ``s``."""
        a, b = (s + 1) % 3, (s + 2) % 3
        k = around[t][a] + around[t][b]
        return region(t, a, j) if j <= around[t][a] else region(t, b, k - j)

    faces: set[tuple] = set()
    for t in range(nt):
        for c_ in range(3):
            for lev in range(around[t][c_] + 1):
                faces.add(find(region(t, c_, lev)))
    segments = []
    for h in range(len(frame.glue)):
        k = frame.glue[h]
        if h > k:
            continue
        t, s = divmod(h, 3)
        u, r = divmod(k, 3)
        n = around[t][(s + 1) % 3] + around[t][(s + 2) % 3]
        for j in range(n + 1):
            x, y = seg_region(t, s, j), seg_region(u, r, n - j)
            union(x, y)
            segments.append(x)
    all_regions = set()
    for t in range(nt):
        all_regions.add((t, "mid"))
        for c_ in range(3):
            for lev in range(around[t][c_]):
                all_regions.add((t, c_, lev))
    roots = sorted({find(x) for x in all_regions}, key=repr)
    f_count = {r: 0 for r in roots}
    e_count = {r: 0 for r in roots}
    labels: dict[tuple, set[str]] = {r: set() for r in roots}
    for x in all_regions:
        f_count[find(x)] += 1
    for x in segments:
        e_count[find(x)] += 1
    for t in range(nt):
        for c_ in range(3):
            labels[find(region(t, c_, 0))].add(frame.labels[3 * t + c_])
    copies = 2 if len(roots) == 1 else 1
    out = []
    for r in roots:
        chi = f_count[r] - e_count[r]
        labs = tuple(sorted(labels[r]))
        twice_genus = 2 - chi - len(labs) - copies
        if twice_genus < 0 or twice_genus % 2:
            raise PacError("inconsistent piece while cutting along a curve")
        out.append(Side(twice_genus // 2, labs, copies))
    return tuple(sorted(out, key=lambda x: (x.labels, x.genus)))
