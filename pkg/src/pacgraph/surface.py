"""
Compact orientable surfaces and ideal triangulations of their punctured models.

Each boundary component is collapsed to a puncture, so a triangulation here
is a collection of oriented triangles whose corners all sit at punctures.

Conventions used throughout the package:

* triangle ``t`` has corners 0, 1, 2 in counter-clockwise order;
* side ``s`` of a triangle is the side opposite corner ``s``, running
  counter-clockwise from corner ``s+1`` to corner ``s+2``;
* a half-edge is the flat index ``3*t + s`` and a corner is ``3*t + c``;
* gluing side ``(t, s)`` to ``(u, r)`` identifies corner ``s+1`` of ``t`` with
  corner ``r+2`` of ``u`` and corner ``s+2`` of ``t`` with corner ``r+1`` of
  ``u`` (orientation reversing along the side, so the result is oriented).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (BadEdge, DuplicateLabel, EmptyBoundary,
                     NonHyperbolicSurface, PacError, Unflippable)

TRIANGULATION_FORMAT = 1


@dataclass(frozen=True)
class SurfaceSig:
    """Genus plus an ordered list of boundary labels."""

    genus: int
    boundary: tuple[str, ...]

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary)

    def name(self) -> str:
        return f"S_{self.genus}^{len(self.boundary)}"

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": list(self.boundary)}

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceSig":
        return build_surface(int(data["genus"]), list(data["boundary"]))


def build_surface(genus: int, boundary_labels: Sequence[str]) -> SurfaceSig:
    if genus < 0:
        raise PacError("genus must be non-negative")
    labels = tuple(str(x) for x in boundary_labels)
    if not labels:
        raise EmptyBoundary("a surface needs at least one boundary component")
    if len(set(labels)) != len(labels):
        seen: set[str] = set()
        dup = next(x for x in labels if x in seen or seen.add(x))
        raise DuplicateLabel(f"boundary label {dup!r} repeated")
    return SurfaceSig(genus, labels)


def _next(i: int) -> int:
    return (i + 1) % 3


def _prev(i: int) -> int:
    return (i + 2) % 3


@dataclass(frozen=True)
class CutComponent:
    genus: int
    new_boundary: int
    labels: tuple[str, ...]
    euler_char: int

    @property
    def is_annulus(self) -> bool:
        return self.genus == 0 and self.new_boundary + len(self.labels) == 2

    @property
    def is_disk(self) -> bool:
        return self.genus == 0 and self.new_boundary == 1 and not self.labels


@dataclass(frozen=True)
class CutResult:
    components: tuple[CutComponent, ...]

    @property
    def euler_char(self) -> int:
        return sum(c.euler_char for c in self.components)

    @property
    def separating(self) -> bool:
        return len(self.components) > 1


@dataclass(frozen=True, eq=False)
class Triangulation:
    """An oriented ideal triangulation with labelled punctures.

    ``glue[h]`` is the half-edge glued to half-edge ``h``; ``labels[k]`` is
    the puncture at corner ``k``; ``edge_of[h]`` is the persistent id of the
    edge containing ``h``. Edge ids survive flips: the new diagonal inherits
    the id of the edge it replaces.
    """

    surface: SurfaceSig
    glue: tuple[int, ...]
    labels: tuple[str, ...]
    edge_of: tuple[int, ...]
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_key", (self.glue, self.labels, self.edge_of))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Triangulation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def n_triangles(self) -> int:
        return len(self.glue) // 3

    @property
    def n_edges(self) -> int:
        return len(self.glue) // 2

    @cached_property
    def edge_halves(self) -> tuple[tuple[int, int], ...]:
        halves: list[list[int]] = [[] for _ in range(self.n_edges)]
        for h, e in enumerate(self.edge_of):
            halves[e].append(h)
        return tuple((a, b) for a, b in halves)

    def corner_across(self, h: int, corner: int) -> int:
        """The corner matching ``corner`` (an end of side ``h``) across ``h``."""
        t, s = divmod(h, 3)
        u, r = divmod(self.glue[h], 3)
        c = corner % 3
        if c == _next(s):
            return 3 * u + (r + 2) % 3
        if c == _prev(s):
            return 3 * u + _next(r)
        raise PacError(f"corner {corner} is not an end of side {h}")

    def edge_ends(self, e: int) -> tuple[str, str]:
        h = self.edge_halves[e][0]
        t, s = divmod(h, 3)
        return self.labels[3 * t + _next(s)], self.labels[3 * t + _prev(s)]

    def is_flippable(self, e: int) -> bool:
        h, k = self.edge_halves[e]
        return h // 3 != k // 3

    # ------------------------------------------------------------------
    def validate(self) -> None:
        n = len(self.glue)
        chi = self.surface.euler_char
        if n % 3 or n // 3 != -2 * chi:
            raise PacError(f"{n // 3} triangles, expected {-2 * chi}")
        for h in range(n):
            k = self.glue[h]
            if k == h or self.glue[k] != h:
                raise PacError(f"gluing is not a fixed-point-free involution at {h}")
            if self.edge_of[h] != self.edge_of[k]:
                raise PacError(f"edge ids disagree across half-edge {h}")
        if sorted(set(self.edge_of)) != list(range(-3 * chi)):
            raise PacError("edge ids are not 0..E-1")
        for h in range(n):
            t, s = divmod(h, 3)
            for c in (_next(s), _prev(s)):
                if self.labels[3 * t + c] != self.labels[self.corner_across(h, 3 * t + c)]:
                    raise PacError(f"puncture labels disagree across half-edge {h}")
        cycles = self.puncture_cycles()
        if sorted(self.labels[c[0]] for c in cycles) != sorted(self.surface.boundary):
            raise PacError("each boundary label must label exactly one puncture")
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for s in range(3):
                u = self.glue[3 * t + s] // 3
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != self.n_triangles:
            raise PacError("triangulation is disconnected")

    def puncture_cycles(self) -> list[list[int]]:
        """Corners grouped by puncture, each listed in rotation order."""
        seen: set[int] = set()
        cycles = []
        for start in range(len(self.labels)):
            if start in seen:
                continue
            cyc = []
            k = start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                t, c = divmod(k, 3)
                k = self.corner_across(3 * t + _prev(c), k)
            if k != start:
                raise PacError("corner rotation does not close up")
            cycles.append(cyc)
        return cycles

    # ------------------------------------------------------------------
    def flip(self, e: int) -> "Triangulation":
        if not 0 <= e < self.n_edges:
            raise BadEdge(f"no edge {e}")
        h1, h2 = self.edge_halves[e]
        t1, s1 = divmod(h1, 3)
        t2, s2 = divmod(h2, 3)
        if t1 == t2:
            raise Unflippable(f"edge {e} has triangle {t1} on both sides (self-folded)")
        lab = self.labels
        A = lab[3 * t1 + s1]
        B = lab[3 * t1 + _next(s1)]
        C = lab[3 * t1 + _prev(s1)]
        D = lab[3 * t2 + s2]
        remap = flip_halfedge_map(t1, s1, t2, s2)
        glue = list(self.glue)
        edge_of = list(self.edge_of)
        new_glue = [0] * len(glue)
        new_edge = [0] * len(glue)
        for h in range(len(glue)):
            if h in (h1, h2):
                continue
            nh = remap.get(h, h)
            new_glue[nh] = remap.get(glue[h], glue[h])
            new_edge[nh] = edge_of[h]
        d1, d2 = 3 * t1 + 1, 3 * t2 + 1
        new_glue[d1], new_glue[d2] = d2, d1
        new_edge[d1] = new_edge[d2] = e
        labels = list(lab)
        labels[3 * t1: 3 * t1 + 3] = [A, B, D]
        labels[3 * t2: 3 * t2 + 3] = [D, C, A]
        return Triangulation(self.surface, tuple(new_glue), tuple(labels), tuple(new_edge))

    def cut_along_edge(self, e: int) -> CutResult:
        if not 0 <= e < self.n_edges:
            raise BadEdge(f"no edge {e}")
        cut = set(self.edge_halves[e])
        n_t = self.n_triangles
        parent = list(range(n_t))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h in range(3 * n_t):
            if h not in cut:
                a, b = find(h // 3), find(self.glue[h] // 3)
                if a != b:
                    parent[a] = b
        comp_of = [find(t) for t in range(n_t)]
        roots = sorted(set(comp_of), key=comp_of.index)

        # boundary circles of the cut surface: corners chained around
        # punctures, with the two cut sides spliced in
        n_c = 3 * n_t
        bparent = list(range(n_c + 2))
        cut_node = {h: n_c + i for i, h in enumerate(sorted(cut))}

        def bfind(x: int) -> int:
            while bparent[x] != x:
                bparent[x] = bparent[bparent[x]]
                x = bparent[x]
            return x

        def bunion(a: int, b: int) -> None:
            a, b = bfind(a), bfind(b)
            if a != b:
                bparent[a] = b

        for k in range(n_c):
            t, c = divmod(k, 3)
            for s in (_next(c), _prev(c)):
                h = 3 * t + s
                if h in cut:
                    bunion(k, cut_node[h])
                else:
                    bunion(k, self.corner_across(h, k))
        comps = []
        for r in roots:
            tris = [t for t in range(n_t) if comp_of[t] == r]
            edges = {self.edge_of[3 * t + s] for t in tris for s in range(3)} - {e}
            chi = len(tris) - len(edges)
            circles: dict[int, bool] = {}
            circle_label: dict[int, str] = {}
            for t in tris:
                for c in range(3):
                    root = bfind(3 * t + c)
                    circles.setdefault(root, False)
                    circle_label[root] = self.labels[3 * t + c]
            for h, node in cut_node.items():
                if comp_of[h // 3] == r:
                    circles[bfind(node)] = True
            new_b = sum(1 for v in circles.values() if v)
            labels = tuple(sorted(circle_label[k] for k, v in circles.items() if not v))
            nb = new_b + len(labels)
            genus2 = 2 - chi - nb
            if genus2 % 2 or genus2 < 0:
                raise PacError("inconsistent Euler characteristic in cut")
            comps.append(CutComponent(genus2 // 2, new_b, labels, chi))
        return CutResult(tuple(comps))

    # ------------------------------------------------------------------
    def relabel(self, mapping: dict[str, str]) -> "Triangulation":
        return Triangulation(self.surface, self.glue,
                             tuple(mapping[x] for x in self.labels), self.edge_of)

    def to_json(self) -> dict:
        tris = [[self.labels[3 * t + c] for c in range(3)] for t in range(self.n_triangles)]
        gluing = []
        for e, (h, k) in enumerate(self.edge_halves):
            gluing.append([[h // 3, h % 3], [k // 3, k % 3], e])
        corners = {f"{t},{c}": self.labels[3 * t + c]
                   for t in range(self.n_triangles) for c in range(3)}
        return {"format": TRIANGULATION_FORMAT, "surface": self.surface.to_json(),
                "triangles": tris, "gluing": gluing, "corners": corners}

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        if data.get("format") != TRIANGULATION_FORMAT:
            raise PacError(f"unsupported triangulation format {data.get('format')!r}")
        surface = SurfaceSig.from_json(data["surface"])
        n = 3 * len(data["triangles"])
        glue = [-1] * n
        edge_of = [-1] * n
        for (t, s), (u, r), e in data["gluing"]:
            h, k = 3 * t + s, 3 * u + r
            glue[h], glue[k] = k, h
            edge_of[h] = edge_of[k] = e
        labels = [data["corners"][f"{t},{c}"] for t in range(n // 3) for c in range(3)]
        tri = cls(surface, tuple(glue), tuple(labels), tuple(edge_of))
        tri.validate()
        return tri


def flip_halfedge_map(t1: int, s1: int, t2: int, s2: int) -> dict[int, int]:
    """Where the four outer sides of a flipped square end up.

    After the flip triangle ``t1`` has corners (A, B, D) and ``t2`` has
    corners (D, C, A), the new diagonal AD being side 1 of both.
    """
    return {
        3 * t1 + _next(s1): 3 * t2 + 0,   # CA
        3 * t1 + _prev(s1): 3 * t1 + 2,   # AB
        3 * t2 + _next(s2): 3 * t1 + 0,   # BD
        3 * t2 + _prev(s2): 3 * t2 + 2,   # DC
    }


class _Builder:
    """Mutable scratch space used only while building base triangulations."""

    def __init__(self) -> None:
        self.labels: list[str] = []
        self.glue: list[int] = []

    def add(self, a: str, b: str, c: str) -> int:
        self.labels += [a, b, c]
        self.glue += [-1, -1, -1]
        return len(self.labels) // 3 - 1

    def join(self, h: int, k: int) -> None:
        self.glue[h] = k
        self.glue[k] = h

    def insert_puncture(self, t: int, p: str) -> None:
        """Star a new puncture into triangle ``t`` (one triangle becomes three)."""
        A, B, C = self.labels[3 * t: 3 * t + 3]
        outer = [self.glue[3 * t + s] for s in range(3)]
        self.labels[3 * t: 3 * t + 3] = [p, B, C]
        ta, tb, tc = t, self.add(p, C, A), self.add(p, A, B)
        for tri, ext in zip((ta, tb, tc), outer):
            # a side glued to another side of the triangle being split
            ext = {3 * t: 3 * ta, 3 * t + 1: 3 * tb, 3 * t + 2: 3 * tc}.get(ext, ext)
            self.join(3 * tri, ext)
        self.join(3 * ta + 1, 3 * tb + 2)
        self.join(3 * tb + 1, 3 * tc + 2)
        self.join(3 * tc + 1, 3 * ta + 2)


def base_triangulation(s: SurfaceSig) -> Triangulation:
    """A fixed triangulation per signature, with no self-folded triangles.

    Genus g >= 1: fan triangulation of the 4g-gon a1 b1 a1' b1' ... with all
    vertices at the first label, then the remaining labels starred into the
    most recently created triangle. Genus 0: two triangles glued along their
    boundaries (three punctures), then the same starring.
    """
    if s.euler_char >= 0:
        raise NonHyperbolicSurface(f"{s.name()} has Euler characteristic {s.euler_char}")
    b = _Builder()
    labels = list(s.boundary)
    if s.genus == 0:
        x, y, z = labels[:3]
        t0 = b.add(x, y, z)
        t1 = b.add(x, z, y)
        # side 0 of t0 is y->z; side 0 of t1 is z->y, and so on
        b.join(3 * t0 + 0, 3 * t1 + 0)
        b.join(3 * t0 + 1, 3 * t1 + 2)
        b.join(3 * t0 + 2, 3 * t1 + 1)
        rest = labels[3:]
    else:
        g = s.genus
        n = 4 * g
        v = labels[0]
        tris = [b.add(v, v, v) for _ in range(n - 2)]

        def side_of_polygon(p: int) -> int:
            if p == 0:
                return 3 * tris[0] + 2
            if p == n - 1:
                return 3 * tris[-1] + 1
            return 3 * tris[p - 1] + 0

        for i in range(n - 3):
            b.join(3 * tris[i] + 1, 3 * tris[i + 1] + 2)
        for j in range(g):
            b.join(side_of_polygon(4 * j), side_of_polygon(4 * j + 2))
            b.join(side_of_polygon(4 * j + 1), side_of_polygon(4 * j + 3))
        rest = labels[1:]
    for p in rest:
        b.insert_puncture(len(b.labels) // 3 - 1, p)
    glue = tuple(b.glue)
    edge_of = [-1] * len(glue)
    nxt = 0
    for h in range(len(glue)):
        if edge_of[h] < 0:
            edge_of[h] = edge_of[glue[h]] = nxt
            nxt += 1
    tri = Triangulation(s, glue, tuple(b.labels), tuple(edge_of))
    tri.validate()
    return tri


def double_flip_iso(t: Triangulation, e: int) -> tuple[tuple[int, int], ...]:
    """The isomorphism ``t.flip(e).flip(e) -> t`` that fixes every edge.

    Flipping twice returns the same surface but with the two triangles of the
    square swapped and rotated; this undoes that relabelling.
    """
    h1, h2 = t.edge_halves[e]
    t1, s1 = divmod(h1, 3)
    t2, s2 = divmod(h2, 3)
    iso = [(u, 0) for u in range(t.n_triangles)]
    iso[t2] = (t1, (s1 - 1) % 3)
    iso[t1] = (t2, (s2 - 1) % 3)
    return tuple(iso)


def iter_isomorphisms(src: Triangulation, dst: Triangulation,
                      respect_labels: bool = False) -> Iterator[tuple[tuple[int, int], ...]]:
    """All orientation-preserving combinatorial isomorphisms ``src -> dst``.

    Each is given as ``iso[t] = (u, r)``: triangle ``t`` of ``src`` maps to
    triangle ``u`` of ``dst`` with corner ``c`` going to corner ``(c + r) % 3``.
    The order is fixed, so the first one is deterministic.
    """
    n = src.n_triangles
    if n != dst.n_triangles:
        return
    for u0 in range(n):
        for r0 in range(3):
            iso: list[tuple[int, int] | None] = [None] * n
            iso[0] = (u0, r0)
            used = {u0}
            stack = [0]
            ok = True
            while stack and ok:
                t = stack.pop()
                u, r = iso[t]  # type: ignore[misc]
                for c in range(3):
                    if respect_labels and src.labels[3 * t + c] != dst.labels[3 * u + (c + r) % 3]:
                        ok = False
                        break
                for s in range(3):
                    h = src.glue[3 * t + s]
                    t2, s2 = divmod(h, 3)
                    k = dst.glue[3 * u + (s + r) % 3]
                    u2, q2 = divmod(k, 3)
                    want = (u2, (q2 - s2) % 3)
                    if iso[t2] is None:
                        if u2 in used:
                            ok = False
                            break
                        iso[t2] = want
                        used.add(u2)
                        stack.append(t2)
                    elif iso[t2] != want:
                        ok = False
                        break
            if ok and all(x is not None for x in iso):
                yield tuple(iso)  # type: ignore[arg-type]


def find_isomorphism(src: Triangulation, dst: Triangulation,
                     respect_labels: bool = False) -> tuple[tuple[int, int], ...] | None:
    return next(iter_isomorphisms(src, dst, respect_labels), None)


def isomorphic(a: Triangulation, b: Triangulation, respect_labels: bool = True) -> bool:
    return find_isomorphism(a, b, respect_labels) is not None


def iter_flippable(t: Triangulation) -> Iterable[int]:
    return (e for e in range(t.n_edges) if t.is_flippable(e))
