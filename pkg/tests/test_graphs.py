from __future__ import annotations

import itertools
import math
import random

import pytest

from cospec.errors import InvalidPartition, NotConnected
from cospec.graphs import (
    CoalescingSpec,
    Graph,
    Partition,
    RootedGraph,
    VertexLabel,
    all_pairs_distances,
    are_isomorphic,
    base_positions,
    coalesce,
    diameter,
    distance_t_graph,
    find_isomorphism,
    random_connected_graph,
    random_tree,
    single_site_spec,
    union_distance_graphs,
)
from helpers import random_spec


def floyd_warshall(g: Graph):
    d = [[0 if u == v else (1 if g.has_edge(u, v) else math.inf) for v in range(g.n)] for u in range(g.n)]
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def test_constructors():
    assert Graph.complete(4).num_edges == 6
    assert Graph.path(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert Graph.cycle(5).degrees() == [2] * 5
    assert Graph.star(4).degree(0) == 3
    assert Graph.empty(3).num_edges == 0
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_distances_match_floyd_warshall():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 9)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
        assert all_pairs_distances(g).tolist() == floyd_warshall(g)


def test_path_and_cycle_distances():
    assert all_pairs_distances(Graph.path(4)).tolist()[0] == [0, 1, 2, 3]
    assert diameter(Graph.cycle(7)) == 3
    assert math.isinf(all_pairs_distances(Graph.empty(2))[0, 1])
    with pytest.raises(NotConnected):
        diameter(Graph.empty(2))


def test_distance_graphs():
    c6 = Graph.cycle(6)
    assert distance_t_graph(c6, 3).num_edges == 3
    assert union_distance_graphs(c6, {1}) == c6
    assert union_distance_graphs(c6, {1, 2, 3}) == Graph.complete(6)
    assert union_distance_graphs(c6, set()) == Graph.empty(6)


def test_complement_and_induced():
    g = Graph.path(4)
    assert g.complement().num_edges == 3
    assert g.induced([1, 2, 3]) == Graph.path(3)


def test_partition_parse_and_format():
    p = Partition.parse("1;2;3;4,5,6,7", 7)
    assert p.classes == ((0,), (1,), (2,), (3, 4, 5, 6))
    assert p.format() == "1;2;3;4,5,6,7"
    assert Partition.parse("3-16;1;2", 16).sizes() == [14, 1, 1]
    assert Partition.isolating(5, [4]).classes == ((4,), (0, 1, 2, 3))


@pytest.mark.parametrize("text", ["1;1,2", "1;2", "1;2;3;4;5", "0;1,2"])
def test_partition_rejects(text):
    with pytest.raises(InvalidPartition):
        Partition.parse(text, 3)


def test_rooted_graph_normalisation():
    r = RootedGraph(Graph.path(3), 1)
    assert r.normalized.degree(0) == 2
    with pytest.raises(ValueError):
        RootedGraph(Graph.path(3), 3)


def test_coalesce_labels_and_size():
    base = Graph.path(3)
    spec = CoalescingSpec(base, Partition.of([[0, 2], [1]]), (RootedGraph(Graph.path(2), 0), RootedGraph(Graph.complete(3), 0)))
    g, labels = coalesce(spec)
    assert g.n == 2 * 2 + 1 * 3
    assert labels == sorted(labels)
    assert labels[0] == VertexLabel(1, 1, 1) and str(labels[-1]) == "2:3:1"
    for idx, lab in enumerate(labels):
        assert spec.index(lab.i - 1, lab.j - 1, lab.k - 1) == idx
    assert g.num_edges == base.num_edges + 2 * 1 + 1 * 3
    assert g.induced(base_positions(spec)) == base


def test_coalescing_k1_everywhere_is_identity():
    rng = random.Random(8)
    for _ in range(10):
        g = random_connected_graph(rng.randint(1, 8), rng)
        spec = CoalescingSpec(g, Partition.whole(g.n), (RootedGraph(Graph.empty(1), 0),))
        assert coalesce(spec)[0] == g


def test_coalesced_graph_edge_count_and_cut_vertices():
    rng = random.Random(12)
    for _ in range(30):
        spec = random_spec(rng)
        g, _ = coalesce(spec)
        expected = spec.base.num_edges + sum(
            len(c) * h.graph.num_edges for c, h in zip(spec.partition.classes, spec.attachments)
        )
        assert g.num_edges == expected
        assert g.is_connected()


def test_single_site_spec():
    spec = single_site_spec(Graph.path(3), [1], RootedGraph(Graph.path(2), 0))
    assert spec.num_vertices == 4
    assert len(single_site_spec(Graph.path(2), [0, 1], RootedGraph(Graph.path(2), 0)).partition) == 1


def test_isomorphism_on_random_relabelings():
    rng = random.Random(21)
    for _ in range(60):
        n = rng.randint(1, 10)
        g = random_connected_graph(n, rng, p=rng.random())
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        found = find_isomorphism(g, h)
        assert found is not None and g.relabel(found) == h


def test_non_isomorphic_regular_graphs():
    # C6 and two disjoint triangles: same degrees, same refinement colours
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(Graph.cycle(6), two_triangles)


def test_isomorphism_brute_force_small():
    graphs = [Graph(4, tuple(adj)) for adj in _all_graphs(4)]
    rng = random.Random(0)
    for g, h in rng.sample(list(itertools.product(graphs, graphs)), 200):
        brute = any(g.relabel(list(p)) == h for p in itertools.permutations(range(4)))
        assert are_isomorphic(g, h) == brute


def _all_graphs(n):
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        yield adj


def test_random_tree_is_tree():
    rng = random.Random(2)
    for n in range(1, 12):
        t = random_tree(n, rng)
        assert t.is_connected() and t.num_edges == n - 1
