"""
Witness subsurfaces as boundary-partition data.

A subsurface W is recorded by its genus, the number of its boundary curves,
the boundary labels of Σ that lie on W, and the list of complementary
components with their genus, labels and the number of curves of ∂W they are
attached along. Whether every allowed arc meets W depends only on how the
labels are distributed, so no curve system is ever embedded here.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import HypothesisViolated, InvalidPartition, LabelMismatch
from .prescribing import PrescribingGraph, analyze_gamma, star_center
from .surface import SurfaceSig


@dataclass(frozen=True)
class Piece:
    """A complementary component of W."""

    genus: int
    labels: tuple[str, ...]
    attached: int = 1  # boundary curves of W it meets

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - len(self.labels) - self.attached

    def to_json(self) -> dict:
        return {"genus": self.genus, "labels": list(self.labels), "attached": self.attached}

    @classmethod
    def from_json(cls, data: dict) -> "Piece":
        return cls(int(data["genus"]), tuple(sorted(data["labels"])), int(data.get("attached", 1)))


@dataclass(frozen=True)
class SubsurfacePartition:
    genus: int
    boundary_curves: int
    complementary: tuple[Piece, ...]
    on_boundary: tuple[str, ...] = ()  # labels of Σ lying on ∂W

    @property
    def is_annulus(self) -> bool:
        return self.genus == 0 and self.boundary_curves == 2 and not self.on_boundary

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - self.boundary_curves

    def labels_outside(self) -> list[tuple[str, ...]]:
        return [p.labels for p in self.complementary]

    def validate(self, s: SurfaceSig) -> None:
        """Raise InvalidPartition unless this describes an essential proper subsurface of ``s``."""
        if self.genus < 0 or self.boundary_curves < 1:
            raise InvalidPartition("negative genus or no boundary")
        if not self.complementary:
            raise InvalidPartition("W is all of the surface")
        seen = list(self.on_boundary)
        for p in self.complementary:
            if p.genus < 0 or p.attached < 1:
                raise InvalidPartition("complementary component with bad data")
            seen += p.labels
        if sorted(seen) != sorted(s.boundary):
            raise InvalidPartition("labels do not partition the boundary of the surface")
        inner = self.boundary_curves - len(self.on_boundary)
        if sum(p.attached for p in self.complementary) != inner:
            raise InvalidPartition("complementary components do not use up the curves of ∂W")
        # gluing pieces along k curves to W adds their genus plus one handle per extra curve
        genus = self.genus + sum(p.genus + p.attached - 1 for p in self.complementary)
        if genus != s.genus:
            raise InvalidPartition(f"genus bookkeeping gives {genus}, surface has {s.genus}")
        if self.euler_char + sum(p.euler_char for p in self.complementary) != s.euler_char:
            raise InvalidPartition("Euler characteristics do not add up")
        if self.genus == 0 and self.boundary_curves == 1:
            raise InvalidPartition("W is a disk")
        if self.genus == 0 and self.boundary_curves == 2 and self.on_boundary:
            raise InvalidPartition("W is a collar of a boundary component")
        for p in self.complementary:
            if p.genus == 0 and len(p.labels) + p.attached <= 2 and p.attached == 1:
                raise InvalidPartition("a curve of ∂W bounds a disk or is parallel to the boundary")

    def to_json(self) -> dict:
        return {
            "genusW": self.genus, "boundaryCurvesW": self.boundary_curves,
            "labelsOnW": list(self.on_boundary), "isAnnulus": self.is_annulus,
            "complementary": [p.to_json() for p in self.complementary],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubsurfacePartition":
        return cls(int(data["genusW"]), int(data["boundaryCurvesW"]),
                   tuple(Piece.from_json(p) for p in data["complementary"]),
                   tuple(sorted(data.get("labelsOnW", []))))


def is_witness(w: SubsurfacePartition, g: PrescribingGraph, s: SurfaceSig | None = None) -> bool:
    """Whether every Γ-allowed arc meets W.

    An arc misses W exactly when it can be pushed into one complementary
    component, which needs both endpoints among that component's labels.
    Labels on ∂W sit on W itself.
    """
    if s is not None:
        w.validate(s)
    covered = set(w.on_boundary)
    for p in w.complementary:
        covered |= set(p.labels)
    if covered != set(g.vertices):
        raise InvalidPartition("partition labels differ from the prescribing graph vertices")
    for p in w.complementary:
        inside = set(p.labels)
        if any(u in inside and v in inside for u, v in g.edges):
            return False
    return True


@dataclass(frozen=True)
class NoneWithReason:
    kind: str  # "loop" or "oddCycle"
    witness: tuple[str, ...]

    def to_json(self) -> dict:
        return {"none": True, "reason": self.kind, "witness": list(self.witness)}


@dataclass(frozen=True)
class WitnessPair:
    """Two disjoint witnesses built from a separating curve ζ.

    ζ cuts Σ into Z₁ ⊇ X₁ and Z₂ ⊇ X₂ of the given genera; ``first`` is the
    closure of one side and ``second`` a collar of ζ.
    """

    first: SubsurfacePartition
    second: SubsurfacePartition
    x1: tuple[str, ...]
    x2: tuple[str, ...]
    genus1: int
    genus2: int
    side: int  # which Z_i the first witness is
    rerouted: bool  # the genus-0 split would have made ζ peripheral

    @property
    def zeta_sides(self) -> tuple[Piece, Piece]:
        return Piece(self.genus1, self.x1), Piece(self.genus2, self.x2)

    def nested(self) -> bool:
        """The first witness is one of the pieces left over by the collar."""
        me = Piece(self.first.genus, self.first.on_boundary)
        return me in self.second.complementary

    def to_json(self) -> dict:
        return {
            "W1": self.first.to_json(), "W2": self.second.to_json(),
            "X1": list(self.x1), "X2": list(self.x2),
            "zeta": {"genus1": self.genus1, "genus2": self.genus2},
            "side": self.side, "rerouted": self.rerouted,
        }


def _chi(genus: int, labels: Sequence[str]) -> int:
    return 2 - 2 * genus - len(labels) - 1


def _components(g: PrescribingGraph) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Colour classes of each connected component that has an edge."""
    prof = analyze_gamma(g)
    assert prof.bipartition is not None
    colour = {v: 0 for v in prof.bipartition[0]} | {v: 1 for v in prof.bipartition[1]}
    seen: set[str] = set()
    out = []
    for v in g.vertices:
        if v in seen or not g.neighbours(v):
            continue
        comp, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for x in g.neighbours(u):
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        a = tuple(sorted(x for x in comp if colour[x] == 0))
        b = tuple(sorted(x for x in comp if colour[x] == 1))
        out.append((a, b))
    return out


def _check_hypotheses(s: SurfaceSig, g: PrescribingGraph) -> None:
    if sorted(g.vertices) != sorted(s.boundary):
        raise LabelMismatch("prescribing graph vertices differ from the boundary labels")
    if s.euler_char > -3:
        raise HypothesisViolated(f"needs χ ≤ -3, surface has χ = {s.euler_char}")
    if not g.edges:
        raise HypothesisViolated("the prescribing graph has no edge")
    if s.genus == 0 and star_center(g) is not None:
        raise HypothesisViolated("planar surface with an n-pointed star")


def disjoint_witness_pair(s: SurfaceSig, g: PrescribingGraph) -> WitnessPair | NoneWithReason:
    """Two disjoint witnesses when Γ is bipartite, otherwise the obstruction.

    X₁ and X₂ are independent sets covering the labels, with isolated
    vertices on the X₂ side whenever possible, and ζ separates them. The genus of Σ is shared
    between the two sides so that both have χ < 0 and one has χ ≤ -2; when
    the genus-free split leaves a side with a single label, a handle is moved
    next to it. Among admissible choices |χ(Z₂)| is minimised, then the label
    sets are compared lexicographically.
    """
    _check_hypotheses(s, g)
    prof = analyze_gamma(g)
    if prof.loop is not None:
        return NoneWithReason("loop", (prof.loop,))
    if not prof.bipartite:
        assert prof.odd_cycle is not None
        return NoneWithReason("oddCycle", prof.odd_cycle)

    comps = _components(g)
    isolated = tuple(sorted(v for v in g.vertices if not g.neighbours(v)))
    best = None
    for flips in product((0, 1), repeat=len(comps) + len(isolated)):
        # isolated vertices join X₂ unless that forces |X₁| = 1 < |X₂|
        moved = [v for v, f in zip(isolated, flips[len(comps):]) if f]
        x1: list[str] = list(moved)
        x2: list[str] = [v for v in isolated if v not in moved]
        for (a, b), f in zip(comps, flips):
            x1 += b if f else a
            x2 += a if f else b
        t1, t2 = tuple(sorted(x1)), tuple(sorted(x2))
        # |X₁| = 1 only if |X₂| = 1
        if len(t1) == 1 and len(t2) > 1:
            continue
        for g2 in range(s.genus + 1):
            g1 = s.genus - g2
            c1, c2 = _chi(g1, t1), _chi(g2, t2)
            if c1 >= 0 or c2 >= 0 or min(c1, c2) > -2:
                continue
            rerouted = g2 > 0 and _chi(0, t2) >= 0
            key = (len(moved), abs(c2), t1, t2, g2)
            if best is None or key < best[0]:
                best = (key, t1, t2, g1, g2, rerouted)
    if best is None:
        raise HypothesisViolated("no separating curve with essential sides exists")
    _, x1, x2, g1, g2, rerouted = best
    side = 2 if _chi(g2, x2) <= -2 else 1
    mine, other = (Piece(g2, x2), Piece(g1, x1)) if side == 2 else (Piece(g1, x1), Piece(g2, x2))
    first = SubsurfacePartition(mine.genus, len(mine.labels) + 1, (other,), mine.labels)
    second = SubsurfacePartition(0, 2, tuple(sorted((Piece(g1, x1), Piece(g2, x2)),
                                                    key=lambda p: p.labels)))
    first.validate(s)
    second.validate(s)
    pair = WitnessPair(first, second, x1, x2, g1, g2, side, rerouted)
    if not (is_witness(first, g) and is_witness(second, g) and pair.nested()):
        raise HypothesisViolated("constructed subsurfaces fail the witness test")
    return pair
