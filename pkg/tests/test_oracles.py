"""The reference oracles used by the acceptance checks are themselves checked here."""
import itertools

import networkx as nx

from farey_oracle import EDGE_SLOPES, coords, farey_adjacent, farey_distance, slopes_up_to


def test_farey_distance_matches_bfs():
    slopes = list(slopes_up_to(40).values()) + list(EDGE_SLOPES)
    g = nx.Graph()
    g.add_nodes_from(slopes)
    g.add_edges_from((u, v) for u, v in itertools.combinations(slopes, 2) if farey_adjacent(u, v))
    small = [v for v in slopes if abs(v[0]) <= 6 and v[1] <= 6]
    for u in small:
        d = nx.single_source_shortest_path_length(g, u)
        for v in small:
            assert d[v] == farey_distance(u, v)


def test_slopes_are_determined_by_crossings():
    table = slopes_up_to(12)
    assert all(coords(v) == c for c, v in table.items())
    assert not set(table.values()) & set(EDGE_SLOPES)


def test_farey_basics():
    assert farey_distance((1, 0), (5, 1)) == 1
    assert farey_distance((0, 1), (1, 2)) == 1
    assert farey_distance((1, 0), (1, 2)) == 2
    assert farey_distance((3, 7), (3, 7)) == 0
