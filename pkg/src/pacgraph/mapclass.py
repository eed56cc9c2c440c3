"""
Mapping classes presented as flip loops, and what they do to arcs.

A class is a flip path out of the base triangulation together with an
isomorphism from the triangulation it ends at back to the base. Acting on an
arc means transporting it along the path and relabelling through the
isomorphism, so the triangulation edge ``e`` is sent to wherever the closing
isomorphism puts the final edge with that id.

Dehn twists are built from their action on edges: the preimage of every base
edge is tightened in turn (edges already made real are disjoint from the
next preimage and are never flipped again), and the closing isomorphism is
the one matching each realised preimage with its edge.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .curves import ClosedCurve, twist_arc
from .errors import FrameMismatch, OrbitEscapesBall, PacError
from .explorer import ArcGraphBall
from .laminations import NormalArc, carry, edge_arc, pull_back, tighten, transport_path
from .prescribing import PrescribingGraph
from .surface import Triangulation, iter_isomorphisms

Iso = tuple[tuple[int, int], ...]


def _invert(iso: Iso) -> Iso:
    out: list[tuple[int, int]] = [(0, 0)] * len(iso)
    for t, (u, r) in enumerate(iso):
        out[u] = (t, (-r) % 3)
    return tuple(out)


def _edge_map(src: Triangulation, dst: Triangulation, iso: Iso) -> list[int]:
    """Where each edge of ``src`` goes under the isomorphism."""
    out = [-1] * src.n_edges
    for h in range(len(src.glue)):
        t, s = divmod(h, 3)
        u, r = iso[t]
        out[src.edge_of[h]] = dst.edge_of[3 * u + (s + r) % 3]
    return out


def _is_isomorphism(src: Triangulation, dst: Triangulation, iso: Iso) -> bool:
    if len(iso) != src.n_triangles or sorted(u for u, _ in iso) != list(range(dst.n_triangles)):
        return False
    for h in range(len(src.glue)):
        t, s = divmod(h, 3)
        u, r = iso[t]
        k = src.glue[h]
        t2, s2 = divmod(k, 3)
        u2, r2 = iso[t2]
        if dst.glue[3 * u + (s + r) % 3] != 3 * u2 + (s2 + r2) % 3:
            return False
    return True


@dataclass(frozen=True, eq=False)
class MappingClass:
    base: Triangulation
    flips: tuple[int, ...]
    closing: Iso

    def __post_init__(self) -> None:
        if not _is_isomorphism(self.final, self.base, self.closing):
            raise PacError("the closing map is not an isomorphism onto the base triangulation")
        self.boundary_permutation  # noqa: B018  (validates consistency)

    @functools.cached_property
    def final(self) -> Triangulation:
        t = self.base
        for e in self.flips:
            t = t.flip(e)
        return t

    @functools.cached_property
    def boundary_permutation(self) -> dict[str, str]:
        perm: dict[str, str] = {}
        for k, lab in enumerate(self.final.labels):
            t, c = divmod(k, 3)
            u, r = self.closing[t]
            img = self.base.labels[3 * u + (c + r) % 3]
            if perm.setdefault(lab, img) != img:
                raise PacError(f"boundary {lab!r} would be sent to two places")
        return dict(sorted(perm.items()))

    @property
    def is_pure(self) -> bool:
        return all(k == v for k, v in self.boundary_permutation.items())

    def apply(self, a: NormalArc) -> NormalArc:
        if a.frame != self.base:
            raise FrameMismatch("the arc is not in the base frame of this class")
        return carry(transport_path(a, self.flips), self.base, self.closing)

    def apply_inverse(self, a: NormalArc) -> NormalArc:
        if a.frame != self.base:
            raise FrameMismatch("the arc is not in the base frame of this class")
        moved = carry(a, self.final, _invert(self.closing))
        return pull_back(moved, self.base, self.flips) if self.flips else moved

    def to_json(self) -> dict:
        return {"flips": list(self.flips), "closing": [list(x) for x in self.closing],
                "boundaryPermutation": self.boundary_permutation}

    @classmethod
    def from_json(cls, base: Triangulation, data: dict) -> "MappingClass":
        return cls(base, tuple(int(e) for e in data["flips"]),
                   tuple((int(u), int(r)) for u, r in data["closing"]))


def identity(base: Triangulation) -> MappingClass:
    return MappingClass(base, (), tuple((t, 0) for t in range(base.n_triangles)))


def from_edge_preimages(base: Triangulation, pre: Sequence[NormalArc]) -> MappingClass:
    """The class sending ``pre[e]`` to base edge ``e`` for every edge."""
    if len(pre) != base.n_edges:
        raise PacError("need one preimage per edge")
    flips: list[int] = []
    frame = base
    where: list[int] = []
    for a in pre:
        cur = transport_path(a, flips) if flips else a
        frame, e, path = tighten(cur)
        flips.extend(path)
        where.append(e)
    if len(set(where)) != len(where):
        raise PacError("the preimages do not form a triangulation")
    for iso in iter_isomorphisms(frame, base):
        emap = _edge_map(frame, base, iso)
        if all(emap[where[e]] == e for e in range(base.n_edges)):
            return MappingClass(base, tuple(flips), iso)
    raise PacError("no isomorphism matches the realised preimages with the base edges")


def dehn_twist(base: Triangulation, c: ClosedCurve, power: int = 1) -> MappingClass:
    """The twist about ``c`` (a curve in the base frame), turning left for positive powers."""
    if c.frame != base:
        raise FrameMismatch("the curve is not in the base frame")
    pre = [twist_arc(c, edge_arc(base, e), -power) for e in range(base.n_edges)]
    return from_edge_preimages(base, pre)


def compose(outer: MappingClass, inner: MappingClass) -> MappingClass:
    """The class acting as ``inner`` first, then ``outer``."""
    if outer.base != inner.base:
        raise FrameMismatch("classes have different base frames")
    base = outer.base
    pre = [inner.apply_inverse(outer.apply_inverse(edge_arc(base, e))) for e in range(base.n_edges)]
    return from_edge_preimages(base, pre)


def power(m: MappingClass, k: int) -> MappingClass:
    base = m.base
    back = m.apply_inverse if k >= 0 else m.apply
    pre = []
    for e in range(base.n_edges):
        a = edge_arc(base, e)
        for _ in range(abs(k)):
            a = back(a)
        pre.append(a)
    return from_edge_preimages(base, pre)


def in_mod_gamma(m: MappingClass, g: PrescribingGraph) -> bool:
    """Whether the induced boundary permutation is an automorphism of Γ."""
    perm = m.boundary_permutation
    return g.relabel(perm).edges == g.edges


# ----------------------------------------------------------------------------
# orbits


def iterate(m: MappingClass, a: NormalArc, n: int) -> list[NormalArc]:
    out = [a]
    for _ in range(n):
        out.append(m.apply(out[-1]))
    return out


def translate_ball(b: ArcGraphBall, moves: Iterable[MappingClass | Sequence[MappingClass]]) -> ArcGraphBall:
    """The ball together with its images under each move (a class or a word of classes)."""
    extra: list[NormalArc] = []
    for mv in moves:
        word = [mv] if isinstance(mv, MappingClass) else list(mv)
        for v in b.vertices:
            for m in reversed(word):
                v = m.apply(v)
            extra.append(v)
    return b.extend(extra)


@dataclass(frozen=True)
class OrbitGrowthReport:
    distances: tuple[int | None, ...]  # d(a, m^k a); None when outside the ball's reach
    stable: tuple[bool, ...] | None  # agreement with the ball one weight step smaller
    translation_estimate: Fraction | None
    weight_bound: int | None
    escaped: bool

    @property
    def increasing(self) -> bool:
        d = self.distances
        return not self.escaped and all(x is not None and y is not None and x < y
                                        for x, y in zip(d, d[1:]))

    def to_json(self) -> dict:
        te = self.translation_estimate
        return {"distances": list(self.distances),
                "stable": list(self.stable) if self.stable is not None else None,
                "translationEstimate": None if te is None else f"{te.numerator}/{te.denominator}",
                "weightBound": self.weight_bound, "escaped": self.escaped,
                "increasing": self.increasing}


def _fit(ds: Sequence[int | None]) -> Fraction | None:
    pts = [(k, d) for k, d in enumerate(ds) if d is not None]
    if len(pts) < 2:
        return None
    ks, vs = zip(*pts)
    slope = np.polyfit(np.array(ks, dtype=float), np.array(vs, dtype=float), 1)[0]
    return Fraction(float(slope)).limit_denominator(1000)


def _orbit_distances(b: ArcGraphBall, m: MappingClass, a: NormalArc, n: int) -> list[int | None]:
    orbit = iterate(m, a, n)
    big = translate_ball(b.extend(orbit), [[m] * k for k in range(1, n + 1)])
    return [big.distance(a, x) for x in orbit]


def orbit_growth(m: MappingClass, a: NormalArc, n: int, b: ArcGraphBall,
                 smaller: ArcGraphBall | None = None, strict: bool = False) -> OrbitGrowthReport:
    """Distances from ``a`` along its orbit, in the ball enlarged by its translates under ``m``.

    The enlarged ball is ``b`` together with ``m^k b`` for ``k <= n``: it holds
    the orbit and a copy of every short path between consecutive orbit points.
    """
    ds = _orbit_distances(b, m, a, n)
    stable = None
    if smaller is not None:
        prev = _orbit_distances(smaller, m, a, n)
        stable = tuple(x == y for x, y in zip(ds, prev))
    escaped = any(d is None for d in ds)
    rep = OrbitGrowthReport(tuple(ds), stable, _fit(ds), b.weight_bound, escaped)
    if escaped and strict:
        raise OrbitEscapesBall(rep)
    return rep


@dataclass(frozen=True)
class FlatReport:
    grid: tuple[tuple[int | None, ...], ...]  # grid[n][k] = d(ψ(n,k), ψ(n,0)); grid[n][0] holds d(ψ(n,0), ψ(0,0))
    along_first: tuple[int | None, ...]
    along_second: tuple[tuple[int | None, ...], ...]
    weight_bound: int | None
    stable: bool | None

    @property
    def first_increasing(self) -> bool:
        d = self.along_first
        return all(x is not None and y is not None and x < y for x, y in zip(d, d[1:]))

    @property
    def second_increasing(self) -> bool:
        return all(all(x is not None and y is not None and x < y for x, y in zip(row, row[1:]))
                   for row in self.along_second)

    def to_json(self) -> dict:
        return {"alongFirst": list(self.along_first),
                "alongSecond": [list(r) for r in self.along_second],
                "firstIncreasing": self.first_increasing,
                "secondIncreasing": self.second_increasing,
                "weightBound": self.weight_bound, "stable": self.stable}


def _flat_distances(b: ArcGraphBall, m1: MappingClass, m2: MappingClass, a: NormalArc,
                    n_max: int, k_max: int, k_rows: int) -> tuple[list[int | None], list[list[int | None]]]:
    psi: dict[tuple[int, int], NormalArc] = {}
    row = a
    for n in range(n_max + 1):
        cur = row
        for k in range(k_max + 1):
            psi[n, k] = cur
            cur = m2.apply(cur)
        row = m1.apply(row)
    moves = [[m2] * k + [m1] * n for n in range(n_max + 1) for k in range(k_max + 1) if n or k]
    big = translate_ball(b.extend(psi.values()), moves)
    first = [big.distance(psi[n, 0], psi[0, 0]) for n in range(n_max + 1)]
    second = [[big.distance(psi[n, k], psi[n, 0]) for k in range(k_max + 1)] for n in range(k_rows + 1)]
    return first, second


def flat_shadow(m1: MappingClass, m2: MappingClass, a: NormalArc, b: ArcGraphBall,
                n_max: int = 4, k_max: int = 3, rows: int = 3,
                larger: ArcGraphBall | None = None) -> FlatReport:
    """Growth of ψ(n,k) = m2^k m1^n a in both directions, in ``b`` enlarged by the translates."""
    first, second = _flat_distances(b, m1, m2, a, n_max, k_max, rows)
    stable = None
    if larger is not None:
        f2, s2 = _flat_distances(larger, m1, m2, a, n_max, k_max, rows)
        stable = f2 == first and s2 == second
    grid = tuple(tuple([first[n]] + (second[n][1:] if n < len(second) else [])) for n in range(n_max + 1))
    return FlatReport(grid, tuple(first), tuple(tuple(r) for r in second), b.weight_bound, stable)
