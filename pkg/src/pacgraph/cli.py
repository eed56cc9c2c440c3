"""
Command line front end.

Every subcommand reads a surface file and a prescribing-graph file (JSON),
writes one report to ``--out`` and echoes it to stdout. Exit status is 0 on
success, 2 when a checked bound is violated (the report then carries the
witnesses) and 1 on any error.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .curves import curve_around_arc, loop_pushoffs
from .errors import ConfigError, PacError
from .explorer import (ArcGraphBall, ball, bfs_distance, coarse_surjectivity_audit,
                       default_weight, delta_estimate, exceptional_vertices, slimness_audit)
from .laminations import arc_from_json, disjoint, intersection_number
from .mapclass import MappingClass, dehn_twist, orbit_growth
from .prescribing import PrescribingGraph, analyze_gamma, classify, star_center
from .sporadic import hat_arc, unique_partner
from .surface import SurfaceSig, base_triangulation
from .witnesses import disjoint_witness_pair

SCHEMA_VERSION = 1
OK, ERROR, VIOLATION = 0, 1, 2


# ----------------------------------------------------------------------------
# config files


def _load_json(path: str, what: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as ex:
        raise ConfigError(f"{what} file {path}: {ex.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise ConfigError(f"{path}:{ex.lineno}:{ex.colno}: {ex.msg}") from None


def _field(data: Any, key: str, path: str) -> Any:
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    if key not in data:
        raise ConfigError(f"{path}: missing field {key!r}")
    return data[key]


def load_surface(path: str) -> SurfaceSig:
    data = _load_json(path, "surface")
    genus = _field(data, "genus", path)
    boundary = _field(data, "boundary", path)
    if not isinstance(genus, int) or genus < 0:
        raise ConfigError(f"{path}: field 'genus' must be a non-negative integer")
    if not isinstance(boundary, list):
        raise ConfigError(f"{path}: field 'boundary' must be a list of labels")
    return SurfaceSig.from_json(data)


def load_gamma(path: str) -> PrescribingGraph:
    data = _load_json(path, "gamma")
    _field(data, "vertices", path)
    edges = data.get("edges", [])
    for k, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise ConfigError(f"{path}: edges[{k}] must be a pair of labels")
    return PrescribingGraph.from_json(data)


def _load_arc(path: str, s: SurfaceSig):
    data = _load_json(path, "arc")
    _field(data, "coords", path)
    _field(data, "endpoints", path)
    return arc_from_json(base_triangulation(s), data)


def _load_mapping(path: str, s: SurfaceSig) -> MappingClass:
    """A flip loop ``{"flips", "closing"}`` or a twist ``{"twist": {"arc", "power"}}``.

    The twist is about the curve around the arc, or the first essential
    push-off when the arc is a loop.
    """
    data = _load_json(path, "mapping")
    base = base_triangulation(s)
    if isinstance(data, dict) and "twist" in data:
        spec = data["twist"]
        a = arc_from_json(base, _field(spec, "arc", path))
        c = loop_pushoffs(a)[0] if a.is_loop else curve_around_arc(a)
        return dehn_twist(base, c, int(spec.get("power", 1)))
    _field(data, "flips", path)
    _field(data, "closing", path)
    return MappingClass.from_json(base, data)


# ----------------------------------------------------------------------------
# subcommands


def _ball(args, s: SurfaceSig, g: PrescribingGraph, weight: int | None = None) -> ArcGraphBall:
    return ball(s, g, weight if weight is not None else args.weight)


def _pick(b: ArcGraphBall, args, attr: str, index_attr: str, s: SurfaceSig):
    path = getattr(args, attr, None)
    if path:
        return _load_arc(path, s)
    k = getattr(args, index_attr)
    if not 0 <= k < len(b):
        raise ConfigError(f"--{index_attr.replace('_', '-')} {k} is outside the ball (size {len(b)})")
    return b.vertices[k]


def cmd_classify(args, s, g) -> tuple[dict, int]:
    return {"classification": classify(s, g).to_json(), "profile": analyze_gamma(g).to_json()}, OK


def cmd_ball(args, s, g) -> tuple[dict, int]:
    b = _ball(args, s, g)
    if args.format == "dot":
        return {"dot": b.to_dot(), "vertices": len(b)}, OK
    return {"ball": b.to_json(full=args.full)}, OK


def cmd_distance(args, s, g) -> tuple[dict, int]:
    from .unicorns import distance_upper_bound

    b = _ball(args, s, g)
    x, y = _pick(b, args, "arc_a", "index_a", s), _pick(b, args, "arc_b", "index_b", s)
    b = b.extend([x, y])
    w = b.weight_bound
    previous = ball(s, g, w - 1).extend([x, y]) if w and w > 1 else None
    rep = bfs_distance(b, x, y, previous)
    i_xy = intersection_number(x, y)
    length, path = distance_upper_bound(x, y, g)
    bound_ok = length <= i_xy + 1
    out = {"bfs": rep.to_json(), "intersection": i_xy, "pathLength": length,
           "path": path.to_json(), "boundHolds": bound_ok,
           "sandwich": rep.distance is not None and rep.distance <= length}
    return out, OK if bound_ok else VIOLATION


def cmd_audit(args, s, g) -> tuple[dict, int]:
    b = _ball(args, s, g)
    if args.kind == "slimness":
        rep = slimness_audit(b, args.family, samples=args.samples, seed=args.seed)
        return {"audit": rep.to_json()}, OK if rep.passed else VIOLATION
    if args.kind == "coarse":
        if not args.sub:
            raise ConfigError("audit coarse needs --sub FILE (the sub-graph)")
        rep = coarse_surjectivity_audit(b, load_gamma(args.sub))
        return {"audit": rep.to_json()}, OK if rep.passed else VIOLATION
    if args.kind == "delta":
        rep = delta_estimate(b, seed=args.seed, samples=args.samples)
        return {"audit": rep.to_json(), "weightBound": b.weight_bound}, OK
    w = args.loop_vertex or (g.loops[0] if g.loops else None)
    if w is None:
        raise ConfigError("audit x2 needs a loop in the prescribing graph")
    rep = exceptional_vertices(b, w)
    return {"audit": rep.to_json()}, OK if rep.verified else VIOLATION


def cmd_witnesses(args, s, g) -> tuple[dict, int]:
    return {"witnesses": disjoint_witness_pair(s, g).to_json()}, OK


def cmd_orbit(args, s, g) -> tuple[dict, int]:
    if not args.mapping:
        raise ConfigError("orbit needs --mapping FILE")
    m = _load_mapping(args.mapping, s)
    b = _ball(args, s, g)
    if args.arc:
        a = _load_arc(args.arc, s)
    else:
        moved = [v for v in b.vertices if m.apply(v) != v]
        if not moved:
            raise PacError("the class fixes every vertex of the ball")
        a = moved[0]
    w = b.weight_bound
    smaller = ball(s, g, w - 1) if w and w > 1 else None
    rep = orbit_growth(m, a, args.steps, b, smaller)
    return {"orbit": rep.to_json(), "start": a.to_json(), "mapping": m.to_json()}, OK


def cmd_sporadic(args, s, g) -> tuple[dict, int]:
    if args.kind == "hat":
        center = args.center or star_center(g)
        if center is None:
            raise ConfigError("sporadic hat needs --center or a star-shaped prescribing graph")
        if args.arc:
            a = _load_arc(args.arc, s)
            return {"hat": hat_arc(a, center).to_json(), "arc": a.to_json()}, OK
        b = _ball(args, s, g)
        hats = {v: hat_arc(v, center) for v in b.vertices}
        worst, bad = 0, []
        for i, x in enumerate(b.vertices):
            for y in b.vertices[i + 1:]:
                if disjoint(x, y):
                    k = intersection_number(hats[x], hats[y])
                    worst = max(worst, k)
                    if k > 2:
                        bad.append([x.to_json(), y.to_json(), k])
        out = {"vertices": len(b), "maxHatIntersection": worst, "violations": bad,
               "weightBound": b.weight_bound}
        return out, VIOLATION if bad else OK
    if args.arc:
        a = _load_arc(args.arc, s)
        return {"partner": unique_partner(a).to_json(), "arc": a.to_json()}, OK
    b = _ball(args, s, g)
    loops = [v for v in b.vertices if v.is_loop]
    pairs, skipped, bad = {}, 0, []
    for v in loops:
        try:
            pairs[v] = unique_partner(v)
        except PacError:
            skipped += 1
    for v, p in pairs.items():
        if unique_partner(p) != v or not disjoint(v, p):
            bad.append(v.to_json())
    keys = list(pairs)
    adjacency_breaks = sum(1 for i, x in enumerate(keys) for y in keys[i + 1:]
                           if disjoint(x, y) != disjoint(pairs[x], pairs[y]))
    out = {"loops": len(loops), "paired": len(pairs), "separatingSkipped": skipped,
           "involutionFailures": bad, "adjacencyBreaks": adjacency_breaks,
           "weightBound": b.weight_bound}
    return out, VIOLATION if bad or adjacency_breaks else OK


COMMANDS: dict[str, Callable] = {
    "classify": cmd_classify, "ball": cmd_ball, "distance": cmd_distance, "audit": cmd_audit,
    "witnesses": cmd_witnesses, "orbit": cmd_orbit, "sporadic": cmd_sporadic,
}


# ----------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", required=True, help="surface JSON: {genus, boundary}")
    common.add_argument("--gamma", required=True, help="prescribing graph JSON: {vertices, edges}")
    common.add_argument("--weight", type=int, default=None, help="ball weight bound")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="directory for the report")
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--no-timestamp", action="store_true")

    p = argparse.ArgumentParser(prog="pacgraph", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=f"pacgraph {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common])
    sp = sub.add_parser("ball", parents=[common])
    sp.add_argument("--full", action="store_true", help="include all-pairs distances")
    sp = sub.add_parser("distance", parents=[common])
    sp.add_argument("--arc-a")
    sp.add_argument("--arc-b")
    sp.add_argument("--index-a", type=int, default=0)
    sp.add_argument("--index-b", type=int, default=1)
    sp = sub.add_parser("audit", parents=[common])
    sp.add_argument("kind", choices=("slimness", "coarse", "delta", "x2"))
    sp.add_argument("--family", default="loop", choices=("loop", "odd", "loop_diam", "odd_diam"))
    sp.add_argument("--samples", type=int, default=500)
    sp.add_argument("--sub")
    sp.add_argument("--loop-vertex")
    sub.add_parser("witnesses", parents=[common])
    sp = sub.add_parser("orbit", parents=[common])
    sp.add_argument("--mapping")
    sp.add_argument("--arc")
    sp.add_argument("--steps", type=int, default=4)
    sp = sub.add_parser("sporadic", parents=[common])
    sp.add_argument("kind", choices=("hat", "partner"))
    sp.add_argument("--arc")
    sp.add_argument("--center")
    return p


def _report_name(args) -> str:
    kind = getattr(args, "kind", None)
    return f"{args.command}-{kind}" if kind else args.command


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        s = load_surface(args.surface)
        g = load_gamma(args.gamma)
        if args.weight is None:
            args.weight = default_weight(s)
        body, status = COMMANDS[args.command](args, s, g)
    except PacError as ex:
        print(f"error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return ERROR
    name = _report_name(args)
    report = {"schema": f"pacgraph.{name}", "schemaVersion": SCHEMA_VERSION,
              "surface": s.to_json(), "gamma": g.to_json(), "weight": args.weight,
              "seed": args.seed, "status": "violation" if status == VIOLATION else "ok"}
    if not args.no_timestamp:
        report["generatedAt"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    report.update(body)
    dot = report.pop("dot", None)
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.json").write_text(text)
        if dot is not None:
            (out / f"{name}.dot").write_text(dot)
    sys.stdout.write(dot if dot is not None else text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
