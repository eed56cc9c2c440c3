"""
Finite induced subgraphs of the prescribed arc graph and the audits run on them.

A ball is every Γ-allowed arc whose base-frame weight is at most a bound,
joined when disjoint. Distances inside a ball only bound the true distance
from above, so every report carries the bound and, where asked, a stability
flag comparing against the ball one step smaller.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import (BoundTooLargeForMemory, DisconnectedSample, EmptySubgraph,
                     FamilyOutOfBall, NoSuchLoop, PacError, VertexNotInBall)
from .laminations import (NormalArc, arcs_up_to_weight, complement_components,
                          disjoint)
from .prescribing import PrescribingGraph, analyze_gamma, is_allowed, single_edge
from .surface import SurfaceSig, base_triangulation

MAX_VERTICES_ENV = "PACGRAPH_MAX_VERTICES"
DEFAULT_MAX_VERTICES = 20000

# engineering constants: large enough for the audits to see past the
# boundary effects of truncation, small enough to stay interactive
_DEFAULT_WEIGHT = {(1, 1): 12, (0, 4): 8, (0, 5): 6, (1, 2): 8, (2, 1): 6}


def default_weight(s: SurfaceSig) -> int:
    return _DEFAULT_WEIGHT.get((s.genus, s.n_boundary), 4)


def max_vertices() -> int:
    raw = os.environ.get(MAX_VERTICES_ENV)
    return int(raw) if raw else DEFAULT_MAX_VERTICES


def _order(a: NormalArc) -> tuple:
    return (a.coords, a.walk)


def enumerate_arcs(s: SurfaceSig, g: PrescribingGraph, weight: int) -> list[NormalArc]:
    """Every Γ-allowed arc of base-frame weight at most ``weight``, in lexicographic coordinate order."""
    if not g.edges:
        return []
    frame = base_triangulation(s)
    out = [a for a in arcs_up_to_weight(frame, weight) if is_allowed(g, a.endpoints)]
    cap = max_vertices()
    if len(out) > cap:
        raise BoundTooLargeForMemory(
            f"{len(out)} arcs at weight {weight} exceed the cap of {cap} (set {MAX_VERTICES_ENV})")
    return sorted(out, key=_order)


# ----------------------------------------------------------------------------
# balls


def _adjacency(vertices: Sequence[NormalArc]) -> np.ndarray:
    n = len(vertices)
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if disjoint(vertices[i], vertices[j]):
                adj[i, j] = adj[j, i] = True
    return adj


@dataclass(frozen=True, eq=False)
class ArcGraphBall:
    vertices: tuple[NormalArc, ...]
    adjacency: np.ndarray
    surface: SurfaceSig | None = None
    gamma: PrescribingGraph | None = None
    weight_bound: int | None = None
    index: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {v: i for i, v in enumerate(self.vertices)})
        if len(self.index) != len(self.vertices):
            raise PacError("ball vertices must be distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, a: object) -> bool:
        return a in self.index

    def index_of(self, a: NormalArc) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise VertexNotInBall(f"{a!r} is not in the ball") from None

    @cached_property
    def _csr(self) -> csr_matrix:
        return csr_matrix(self.adjacency.astype(np.int8))

    @cached_property
    def component_ids(self) -> np.ndarray:
        if not len(self):
            return np.zeros(0, dtype=int)
        return connected_components(self._csr, directed=False)[1]

    @property
    def n_components(self) -> int:
        return len(set(self.component_ids.tolist()))

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs BFS distances; -1 marks unreachable pairs."""
        if not len(self):
            return np.zeros((0, 0), dtype=int)
        d = shortest_path(self._csr, directed=False, unweighted=True)
        return np.where(np.isinf(d), -1, d).astype(int)

    def distance(self, a: NormalArc, b: NormalArc) -> int | None:
        d = int(self.distances[self.index_of(a), self.index_of(b)])
        return None if d < 0 else d

    def neighbours(self, a: NormalArc) -> list[NormalArc]:
        i = self.index_of(a)
        return [self.vertices[j] for j in np.flatnonzero(self.adjacency[i])]

    def adjacent(self, a: NormalArc, b: NormalArc) -> bool:
        return bool(self.adjacency[self.index_of(a), self.index_of(b)])

    def extend(self, extra: Iterable[NormalArc]) -> "ArcGraphBall":
        """The ball with more vertices added; only the new adjacencies are computed."""
        new = [v for v in dict.fromkeys(extra) if v not in self.index]
        if not new:
            return self
        n, m = len(self), len(new)
        adj = np.zeros((n + m, n + m), dtype=bool)
        adj[:n, :n] = self.adjacency
        verts = list(self.vertices) + new
        for j in range(n, n + m):
            for i in range(j):
                if disjoint(verts[i], verts[j]):
                    adj[i, j] = adj[j, i] = True
        return ArcGraphBall(tuple(verts), adj, self.surface, self.gamma, self.weight_bound)

    def to_json(self, full: bool = False) -> dict:
        out = {
            "surface": self.surface.to_json() if self.surface else None,
            "gamma": self.gamma.to_json() if self.gamma else None,
            "weightBound": self.weight_bound,
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [[int(i), int(j)] for i, j in zip(*np.nonzero(np.triu(self.adjacency)))],
            "componentIds": self.component_ids.tolist(),
        }
        if full:
            out["distances"] = self.distances.tolist()
        return out

    def to_dot(self, full: bool = False) -> str:
        lines = ["graph arcs {"]
        for i, v in enumerate(self.vertices):
            label = ",".join(map(str, v.coords)) if full else f"{abs(hash(v.walk)) % 16 ** 8:08x}"
            lines.append(f'  {i} [label="{label}" ends="{"-".join(v.endpoints)}"];')
        for i, j in zip(*np.nonzero(np.triu(self.adjacency))):
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ball(vertices: Iterable[NormalArc], surface: SurfaceSig | None = None,
               gamma: PrescribingGraph | None = None,
               weight_bound: int | None = None) -> ArcGraphBall:
    verts = tuple(dict.fromkeys(vertices))
    return ArcGraphBall(verts, _adjacency(verts), surface, gamma, weight_bound)


def ball(s: SurfaceSig, g: PrescribingGraph, weight: int | None = None) -> ArcGraphBall:
    w = default_weight(s) if weight is None else weight
    return build_ball(enumerate_arcs(s, g, w), s, g, w)


@dataclass(frozen=True)
class DistanceReport:
    distance: int | None  # None when unreachable inside the ball
    weight_bound: int | None
    stable: bool | None  # same value in the previous ball, when one was given
    upper_bound_only: bool = True  # ball distance never undercuts the true distance

    @property
    def reachable(self) -> bool:
        return self.distance is not None

    def to_json(self) -> dict:
        return {"distance": self.distance, "reachable": self.reachable,
                "weightBound": self.weight_bound, "stable": self.stable,
                "upperBoundOnly": self.upper_bound_only}


def bfs_distance(b: ArcGraphBall, x: NormalArc, y: NormalArc,
                 previous: ArcGraphBall | None = None) -> DistanceReport:
    d = b.distance(x, y)
    stable = None
    if previous is not None:
        stable = x in previous and y in previous and previous.distance(x, y) == d
    return DistanceReport(d, b.weight_bound, stable)


# ----------------------------------------------------------------------------
# exceptional vertices


@dataclass(frozen=True)
class ExceptionalReport:
    vertices: tuple[NormalArc, ...]
    loop_vertex: str
    annular: tuple[bool, ...]  # per vertex: an annular complementary piece around the loop vertex
    independent: bool
    distances: tuple[int | None, ...]  # ball distance of each vertex to the loop image

    @property
    def verified(self) -> bool:
        return all(self.annular) and self.independent

    def to_json(self) -> dict:
        return {"loopVertex": self.loop_vertex, "vertices": [v.to_json() for v in self.vertices],
                "annular": list(self.annular), "independent": self.independent,
                "distances": list(self.distances), "verified": self.verified}


def _distance_to_set(b: ArcGraphBall, targets: Sequence[int]) -> np.ndarray:
    """Ball distance from every vertex to the nearest target; -1 if none reachable."""
    if not targets:
        return np.full(len(b), -1, dtype=int)
    d = b.distances[:, list(targets)]
    d = np.where(d < 0, np.iinfo(np.int64).max, d).min(axis=1)
    return np.where(d == np.iinfo(np.int64).max, -1, d)


def has_annulus_around(a: NormalArc, w: str) -> bool:
    return any(c.is_annulus and w in c.labels for c in complement_components(a).components)


def _with_projections(b: ArcGraphBall, sub: PrescribingGraph) -> ArcGraphBall:
    """Add, for every vertex not yet next to the image, a constructed image arc disjoint from it.

    Truncation can hide the neighbour that certifies distance one; the
    construction puts it back, and vertices with no such neighbour keep
    their ball distance.
    """
    from .unicorns import disjoint_allowed_arc

    image = [i for i, v in enumerate(b.vertices) if is_allowed(sub, v.endpoints)]
    dist = _distance_to_set(b, image)
    extra = []
    for i in np.flatnonzero((dist < 0) | (dist > 1)):
        near = disjoint_allowed_arc(b.vertices[i], sub)
        if near is not None:
            extra.append(near)
    return b.extend(extra)


def exceptional_vertices(b: ArcGraphBall, loop_vertex: str, augment: bool = True) -> ExceptionalReport:
    """Vertices more than one step from every loop at ``loop_vertex``."""
    if b.gamma is None or not b.gamma.has_edge(loop_vertex, loop_vertex):
        raise NoSuchLoop(f"the prescribing graph has no loop at {loop_vertex!r}")
    n = len(b)
    loop = single_edge(list(b.gamma.vertices), loop_vertex, loop_vertex)
    if augment:
        b = _with_projections(b, loop)
    image = [i for i, v in enumerate(b.vertices) if is_allowed(loop, v.endpoints)]
    dist = _distance_to_set(b, image)
    far = [i for i in range(n) if dist[i] < 0 or dist[i] > 1]
    verts = tuple(b.vertices[i] for i in far)
    annular = tuple(has_annulus_around(v, loop_vertex) for v in verts)
    independent = not any(b.adjacency[i, j] for i, j in itertools.combinations(far, 2))
    ds = tuple(None if dist[i] < 0 else int(dist[i]) for i in far)
    return ExceptionalReport(verts, loop_vertex, annular, independent, ds)


# ----------------------------------------------------------------------------
# four-point hyperbolicity


@dataclass(frozen=True)
class DeltaReport:
    delta4pt: float
    seed: int
    samples: int
    exhaustive: bool
    worst: tuple[int, ...] | None  # vertex indices of a quadruple attaining the maximum
    slim_max: int | None = None

    def to_json(self) -> dict:
        return {"delta4pt": self.delta4pt, "slimMax": self.slim_max,
                "sampleSpec": {"seed": self.seed, "samples": self.samples,
                               "exhaustive": self.exhaustive},
                "worst": list(self.worst) if self.worst else None}


def _four_point(d: np.ndarray, quads: np.ndarray) -> np.ndarray:
    x, y, z, w = quads.T
    s1 = d[x, y] + d[z, w]
    s2 = d[x, z] + d[y, w]
    s3 = d[x, w] + d[y, z]
    s = np.sort(np.stack([s1, s2, s3]), axis=0)
    return (s[2] - s[1]) / 2


def delta_from_distances(d: np.ndarray, seed: int = 0, samples: int = 20000) -> DeltaReport:
    """Largest four-point defect over sampled quadruples of a finite distance matrix.

    Quadruples are drawn from a seeded generator, so a longer run with the
    same seed extends a shorter one and the estimate never decreases. When
    every quadruple fits in the budget they are all examined.
    """
    n = d.shape[0]
    if n and (d < 0).any():
        raise DisconnectedSample("the sample spans more than one component")
    if n < 4:
        return DeltaReport(0.0, seed, 0, True, None)
    total = n ** 4
    if total <= samples:
        quads = np.array(list(itertools.product(range(n), repeat=4)), dtype=np.int64)
        exhaustive = True
    else:
        quads = np.random.default_rng(seed).integers(0, n, size=(samples, 4))
        exhaustive = False
    defects = _four_point(d, quads)
    k = int(np.argmax(defects))
    return DeltaReport(float(defects[k]), seed, len(quads), exhaustive, tuple(int(v) for v in quads[k]))


def graph_distances(adjacency: np.ndarray) -> np.ndarray:
    d = shortest_path(csr_matrix(np.asarray(adjacency, dtype=np.int8)), directed=False, unweighted=True)
    return np.where(np.isinf(d), -1, d).astype(int)


def delta_estimate(b: ArcGraphBall, seed: int = 0, samples: int = 20000,
                   component: int | None = None) -> DeltaReport:
    """Four-point estimate on one component of the ball (the only one, by default)."""
    ids = b.component_ids
    if component is None:
        if b.n_components > 1:
            raise DisconnectedSample(f"the ball has {b.n_components} components; pick one")
        keep = np.arange(len(b))
    else:
        keep = np.flatnonzero(ids == component)
    sub = b.distances[np.ix_(keep, keep)]
    rep = delta_from_distances(sub, seed, samples)
    worst = tuple(int(keep[i]) for i in rep.worst) if rep.worst else None
    return DeltaReport(rep.delta4pt, seed, rep.samples, rep.exhaustive, worst)


# ----------------------------------------------------------------------------
# slimness and coherence audits


class _Metric:
    """Upper bounds on distances in the prescribed arc graph.

    Three sources, cheapest first: equality and disjointness are exact; the
    ball (grown with every arc the audit touches) gives BFS distances; the
    verified surgery chains give the rest.
    """

    def __init__(self, b: ArcGraphBall, g: PrescribingGraph, strict: bool) -> None:
        self.ball = b
        self.g = g
        self.strict = strict
        self._chains: dict[tuple[NormalArc, NormalArc], int] = {}

    def grow(self, arcs: Iterable[NormalArc]) -> None:
        self.ball = self.ball.extend(arcs)

    def upper(self, x: NormalArc, y: NormalArc) -> int:
        if x == y:
            return 0
        if disjoint(x, y):
            return 1
        best = None
        if x in self.ball and y in self.ball:
            best = self.ball.distance(x, y)
        if best is not None and best <= 2:
            return best
        key = (x, y) if _order(x) <= _order(y) else (y, x)
        if key not in self._chains:
            from .unicorns import distance_upper_bound
            self._chains[key] = distance_upper_bound(key[0], key[1], self.g, strict=self.strict)[0]
        chain = self._chains[key]
        return chain if best is None else min(best, chain)

    def to_set(self, x: NormalArc, ys: Iterable[NormalArc], good_enough: int) -> int:
        best = None
        ys = list(ys)
        for y in ys:  # exact checks first, they are cheap
            if x == y:
                return 0
            if disjoint(x, y):
                best = 1
        if best is not None and best <= good_enough:
            return best
        for y in ys:
            d = self.upper(x, y)
            best = d if best is None else min(best, d)
            if best <= good_enough:
                break
        return best  # type: ignore[return-value]


@dataclass(frozen=True)
class AuditViolation:
    kind: str
    arcs: tuple[NormalArc, ...]
    observed: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "observed": self.observed,
                "arcs": [a.to_json() for a in self.arcs]}


@dataclass(frozen=True)
class AuditReport:
    family: str
    constant: int
    observed: int
    samples: int
    seed: int
    weight_bound: int | None
    violations: tuple[AuditViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations and self.observed <= self.constant

    def to_json(self) -> dict:
        return {"family": self.family, "constant": self.constant, "observed": self.observed,
                "samples": self.samples, "seed": self.seed, "weightBound": self.weight_bound,
                "passed": self.passed, "violations": [v.to_json() for v in self.violations]}


FAMILY_CONSTANTS = {"loop": 1, "odd": 4, "loop_diam": 10, "odd_diam": 7}


def _odd_edge(g: PrescribingGraph) -> tuple[str, str]:
    cyc = analyze_gamma(g).odd_cycle
    if cyc is None:
        raise FamilyOutOfBall("the prescribing graph has no odd cycle")
    return cyc[0], cyc[1]


def _sub_edge(g: PrescribingGraph, family: str) -> PrescribingGraph:
    if family in ("loop", "loop_diam"):
        if not g.loops:
            raise FamilyOutOfBall("the prescribing graph has no loop")
        w = g.loops[0]
        return single_edge(list(g.vertices), w, w)
    u, v = _odd_edge(g)
    return single_edge(list(g.vertices), u, v)


def _nearest_in_image(a: NormalArc, sub: PrescribingGraph) -> NormalArc:
    """A deterministic nearest-point projection of ``a`` to the sub-graph image, within one step."""
    from .unicorns import disjoint_allowed_arc

    near = disjoint_allowed_arc(a, sub)
    if near is None:
        raise FamilyOutOfBall(f"no image arc disjoint from {a!r} was found")
    return near


def slimness_audit(b: ArcGraphBall, family: str, samples: int = 500, seed: int = 0,
                   strict: bool = True) -> AuditReport:
    """Check the slim-triangle or coherence constant of a unicorn family on sampled inputs.

    ``loop`` and ``odd`` sample triples from the image of the single-edge
    sub-graph (a loop, or an edge of an odd cycle) and ask every unicorn of
    one side to be close to the other two sides. ``loop_diam`` and
    ``odd_diam`` sample disjoint pairs and bound the diameter of the
    augmented unicorn set. Distances are upper bounds, so a pass is
    conclusive and a violation is a lead to replay.
    """
    from .unicorns import unicorn_set

    if family not in FAMILY_CONSTANTS:
        raise PacError(f"unknown family {family!r}")
    if b.gamma is None:
        raise PacError("the ball carries no prescribing graph")
    const = FAMILY_CONSTANTS[family]
    g = b.gamma
    sub = _sub_edge(g, family)
    image = [v for v in b.vertices if is_allowed(sub, v.endpoints)]
    metric = _Metric(b, g, strict)
    rng = np.random.default_rng(seed)
    observed = 0
    violations: list[AuditViolation] = []
    if family in ("loop", "odd"):
        if len(image) < 3:
            raise FamilyOutOfBall("fewer than three image arcs in the ball")
        for _ in range(samples):
            a, bb, c = (image[i] for i in rng.choice(len(image), size=3, replace=False))
            side = sorted(unicorn_set(a, bb, sub), key=_order)
            others = sorted(unicorn_set(a, c, sub) | unicorn_set(c, bb, sub), key=_order)
            for x in side:
                d = metric.to_set(x, others, const)
                observed = max(observed, d)
                if d > const:
                    violations.append(AuditViolation(family, (a, bb, c, x), d))
    else:
        pairs = [(i, j) for i, j in zip(*np.nonzero(np.triu(b.adjacency)))]
        if not pairs:
            raise FamilyOutOfBall("the ball has no disjoint pairs")
        for _ in range(samples):
            i, j = pairs[int(rng.integers(len(pairs)))]
            a, bb = b.vertices[i], b.vertices[j]
            xa = _nearest_in_image(a, sub)
            xb = _nearest_in_image(bb, sub)
            members = sorted({a, bb, xa, xb} | unicorn_set(xa, xb, sub), key=_order)
            metric.grow(members)
            diam = 0
            for x, y in itertools.combinations(members, 2):
                diam = max(diam, metric.upper(x, y))
            observed = max(observed, diam)
            if diam > const:
                violations.append(AuditViolation(family, (a, bb), diam))
    return AuditReport(family, const, observed, samples, seed, b.weight_bound, tuple(violations))


def coarse_constant(g: PrescribingGraph, sub: PrescribingGraph) -> int:
    """How far the sub-graph image may sit from any vertex."""
    if analyze_gamma(g).loop_free:
        return 1
    if any(u != v for u, v in sub.edges):
        return 2
    return 3


@dataclass(frozen=True)
class CoarseReport:
    constant: int
    observed: int
    weight_bound: int | None
    distances: tuple[int, ...]
    violations: tuple[AuditViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"constant": self.constant, "observed": self.observed,
                "weightBound": self.weight_bound, "passed": self.passed,
                "violations": [v.to_json() for v in self.violations]}


def coarse_surjectivity_audit(b: ArcGraphBall, sub: PrescribingGraph,
                              augment: bool = True) -> CoarseReport:
    """Ball distance from every ball vertex to the image of the sub-graph's arc graph."""
    if not sub.edges:
        raise EmptySubgraph("the sub-graph has no edges")
    if b.gamma is None:
        raise PacError("the ball carries no prescribing graph")
    if not sub.edges <= b.gamma.edges:
        raise PacError("not a sub-graph of the ball's prescribing graph")
    const = coarse_constant(b.gamma, sub)
    n = len(b)
    if augment:
        b = _with_projections(b, sub)
    image = [i for i, v in enumerate(b.vertices) if is_allowed(sub, v.endpoints)]
    dist = _distance_to_set(b, image)[:n]
    violations = []
    for i, d in enumerate(dist):
        if d < 0 or d > const:
            violations.append(AuditViolation("coarse", (b.vertices[i],), int(d)))
    observed = int(dist.max()) if n else 0
    if (dist < 0).any():
        observed = -1
    return CoarseReport(const, observed, b.weight_bound, tuple(int(x) for x in dist),
                        tuple(violations))
