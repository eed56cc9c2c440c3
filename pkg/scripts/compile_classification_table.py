"""Write the golden classification table for genus <= 1, at most five boundary components.

The verdicts are encoded here directly from the classification theorems and
the list of low-complexity cases, independently of ``pacgraph.prescribing``;
only the enumeration of prescribing graphs up to isomorphism is shared.

    python3 scripts/compile_classification_table.py [OUT]
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

from pacgraph.prescribing import graphs_up_to_isomorphism

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden" / "classification.json"


def _bipartite(vertices, edges) -> bool:
    if any(u == v for u, v in edges):
        return False
    side: dict[str, int] = {}
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for root in vertices:
        if root in side:
            continue
        side[root] = 0
        todo = [root]
        while todo:
            u = todo.pop()
            for v in adj[u]:
                if v not in side:
                    side[v] = 1 - side[u]
                    todo.append(v)
                elif side[v] == side[u]:
                    return False
    return True


def _is_star(vertices, edges) -> bool:
    """One vertex joined to each of the others and nothing else."""
    n = len(vertices)
    if any(u == v for u, v in edges) or len(edges) != n - 1:
        return False
    return any(all(c in e for e in edges) for c in vertices)


def verdict(genus: int, b: int, vertices, edges) -> dict:
    chi = 2 - 2 * genus - b
    if not edges:
        return {"trivial": True, "reason": "empty", "vertexCount": 0}
    if chi >= 0:
        if b == 1:
            return {"trivial": True, "reason": "empty", "vertexCount": 0}
        cross = any(u != v for u, v in edges)
        return {"trivial": True, "reason": "singleton" if cross else "empty", "vertexCount": int(cross)}
    if genus == 0 and b == 3:
        # a pair of pants carries one arc per pair of boundaries and one loop per boundary
        return {"trivial": True, "reason": "finite", "vertexCount": len(edges)}
    if genus == 0 and _is_star(vertices, edges):
        hyp = True
    elif genus == 1 and b == 2 and len(edges) == 1 and edges[0][0] != edges[0][1]:
        hyp = True
    elif genus == 0 and b == 4:
        hyp = True  # a full subgraph of a quasi-tree
    else:
        hyp = not _bipartite(vertices, edges)
    return {"trivial": False, "connected": True, "infiniteDiameter": True, "hyperbolic": hyp}


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else OUT
    rows = []
    for genus in (0, 1):
        for b in range(1, 6):
            labels = [f"p{i}" for i in range(b)]
            for g in graphs_up_to_isomorphism(labels):
                edges = g.sorted_edges()
                rows.append({"genus": genus, "boundary": labels, "edges": [list(e) for e in edges],
                             "verdict": verdict(genus, b, labels, edges)})
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"format": 1, "rows": rows}, indent=1) + "\n")
    print(f"{len(rows)} rows written to {out}")


if __name__ == "__main__":
    main()
