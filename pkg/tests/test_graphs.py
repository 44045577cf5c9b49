import random

import networkx as nx
import pytest

from graphrepair.graphs import (
    DisconnectedGraphError,
    Graph,
    build_repair_tree,
    complete_graph,
    path_graph,
    random_recursive_tree,
    select_helpers,
    spanning_tree_rooted,
    star_graph,
)


def floyd_warshall(g):
    """All-pairs shortest paths, the oracle for BFS-based helper selection."""
    inf = float("inf")
    dist = [[inf] * g.n for _ in range(g.n)]
    for v in range(g.n):
        dist[v][v] = 0
    for u, v in g.edges():
        dist[u][v] = dist[v][u] = 1
    for m in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if dist[i][m] + dist[m][j] < dist[i][j]:
                    dist[i][j] = dist[i][m] + dist[m][j]
    return dist


def seeded_gnp(n, p, seed):
    rng = random.Random(seed)
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if g.is_connected():
            return g


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 5)])


def test_graph_text_roundtrip():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    text = g.to_text()
    assert text.splitlines()[0] == "4 4"
    h = Graph.from_text(text)
    assert h.edges() == g.edges()
    with pytest.raises(ValueError):
        Graph.from_text("3 2\n0 1\n")  # missing edge line


def test_select_helpers_path():
    g = path_graph(4)  # 0-1-2-3-4
    helpers, layers = select_helpers(g, 0, 2)
    assert helpers == (1, 2)
    assert layers.layers == ((1,), (2,))
    assert layers.depth == 2


def test_select_helpers_star_failed_leaf():
    g = star_graph(6)  # center 0, leaves 1..6
    helpers, layers = select_helpers(g, 1, 4)
    assert helpers == (0, 2, 3, 4)  # center plus the 3 smallest leaves
    assert layers.layers == ((0,), (2, 3, 4))


def test_select_helpers_matches_all_pairs_shortest_paths():
    g = seeded_gnp(20, 0.3, seed=11)
    dist = floyd_warshall(g)
    for failed in range(0, 20, 5):
        d = 7
        helpers, layers = select_helpers(g, failed, d)
        # oracle: sort all candidates by (distance, id) and take d
        order = sorted((dist[failed][v], v) for v in range(g.n) if v != failed)
        expected = tuple(sorted(v for _, v in order[:d]))
        assert helpers == expected
        # ball minimality: |N_{t-1}| < d <= |N_t|
        t = layers.depth
        assert len(layers.ball(t - 1)) < d <= len(layers.ball(t))
        # layer membership agrees with graph distance
        for j, layer in enumerate(layers.layers, start=1):
            assert all(dist[failed][v] == j for v in layer)


def test_select_helpers_errors():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        select_helpers(g, 0, 2)
    with pytest.raises(ValueError):
        select_helpers(path_graph(3), 0, 4)


def test_repair_tree_path_is_path():
    g = path_graph(3)
    tree = build_repair_tree(g, 0, [1, 2, 3])
    assert tree.parent == {1: 0, 2: 1, 3: 2}
    assert tree.subtree_size == {0: 4, 1: 3, 2: 2, 3: 1}
    assert tree.layer_sizes() == (1, 1, 1)


def test_repair_tree_complete_graph_is_star():
    g = complete_graph(6)
    tree = build_repair_tree(g, 2, [0, 1, 3, 4, 5])
    assert all(tree.parent[v] == 2 for v in (0, 1, 3, 4, 5))
    assert all(tree.subtree_size[v] == 1 for v in (0, 1, 3, 4, 5))


def test_repair_tree_two_layer_fanout():
    # center 0 with 5 inner vertices, each inner vertex with 4 private leaves
    edges = [(0, i) for i in range(1, 6)]
    nxt = 6
    for i in range(1, 6):
        for _ in range(4):
            edges.append((i, nxt))
            nxt += 1
    g = Graph(nxt, edges)
    helpers, layers = select_helpers(g, 0, 25)
    assert layers.sizes == (5, 20)
    tree = build_repair_tree(g, 0, helpers)
    for v in range(1, 6):
        assert tree.subtree_size[v] == 5
    for v in range(6, 26):
        assert tree.subtree_size[v] == 1


def test_spanning_tree_rooted_depths_decrease_toward_root():
    g = seeded_gnp(15, 0.25, seed=3)
    distances = floyd_warshall(g)
    vertices = sorted(g.reachable_from(4))
    tree = spanning_tree_rooted(g, 4, vertices)
    for v in tree.non_root():
        assert tree.depth[tree.parent[v]] == tree.depth[v] - 1
        assert g.has_edge(v, tree.parent[v])
        assert tree.depth[v] == distances[4][v]  # BFS tree preserves distances


def test_spanning_tree_single_vertex_and_disconnected():
    g = Graph(3, [(0, 1)])
    tree = spanning_tree_rooted(g, 2, [2])
    assert tree.vertices() == (2,)
    assert tree.subtree_size[2] == 1
    with pytest.raises(DisconnectedGraphError):
        spanning_tree_rooted(g, 0, [0, 1, 2])


def test_repair_tree_layers_match_decomposition_below_depth():
    g = seeded_gnp(24, 0.2, seed=19)
    helpers, layers = select_helpers(g, 0, 12)
    tree = build_repair_tree(g, 0, helpers)
    t = layers.depth
    assert tree.height == t
    assert tree.layer_sizes()[: t - 1] == layers.sizes[: t - 1]


def test_random_recursive_tree_is_tree_on_given_vertices():
    rng = random.Random(5)
    for _ in range(20):
        tree = random_recursive_tree(9, list(range(6)), rng)
        assert set(tree.vertices()) == {9, 0, 1, 2, 3, 4, 5}
        assert tree.subtree_size[9] == 7
        assert sum(tree.subtree_size[c] for c in tree.children[9]) == 6


def test_connectivity_matches_networkx():
    for seed in range(6):
        rng = random.Random(seed)
        n = 14
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.12]
        g = Graph(n, edges)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        assert g.is_connected() == nx.is_connected(h)
