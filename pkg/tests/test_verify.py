from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from cospec import catalog
from cospec.codec import decode_graph6
from cospec.errors import InvalidPartition
from cospec.exact import ExactMatrix
from cospec.graphs import Graph, Partition, RootedGraph, random_connected_graph
from cospec.matrices import ADJACENCY, DISTANCE, DistanceFunction, GeneralizedDistance, QLaplacian
from cospec.similarity import BlockSimilarity, SimilarityProblem, SimilarityWitness, find_block_similarity
from cospec.verify import (
    butler_condition,
    cospectral,
    find_breaking_attachment,
    find_distinguishing_table,
    rooted_connected_graphs,
    shift_lemma_oracle,
    verify_coalesced_cospectral,
    verify_extended_witness,
)
from helpers import random_partition, random_rooted, random_spec


def _rooted_brute_force(n):
    """Connected graphs with root 0 up to root-fixing isomorphism, by brute force."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    reps = []
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for b, p in enumerate(pairs) if mask >> b & 1])
        if not g.is_connected():
            continue
        forms = {g.relabel((0,) + p) for p in itertools.permutations(range(1, n))}
        if not any(r in forms for r in reps):
            reps.append(g)
    return len(reps)


def test_rooted_graph_counts():
    counts = [sum(1 for _ in rooted_connected_graphs(n, n)) for n in range(1, 5)]
    assert counts == [1, 1, 3, 11]
    assert counts == [_rooted_brute_force(n) for n in range(1, 5)]
    assert sum(1 for _ in rooted_connected_graphs(4)) == 16


def test_shift_oracle_on_random_specs():
    rng = random.Random(100)
    for _ in range(25):
        assert shift_lemma_oracle(random_spec(rng))


def test_cospectral_verdict():
    v = cospectral(*(decode_graph6(c) for c in catalog.SEVEN_PAIRS[0]))
    assert v and v.charpoly_1 == v.charpoly_2 and v.charpoly_1.degree == 7
    assert not cospectral(Graph.path(4), Graph.star(4), ADJACENCY)


def test_butler_condition():
    g1, g2 = (decode_graph6(c) for c in catalog.FIG2_PAIR)
    assert butler_condition(g1, g2, [0, 1, 2], [3, 4, 5, 6])
    assert not butler_condition(g1, g2, [0, 1], [2, 3, 4, 5, 6])
    with pytest.raises(InvalidPartition):
        butler_condition(g1, g2, [0, 1], [1, 2])


def test_butler_condition_implies_cospectral_coalescings():
    g1, g2 = (decode_graph6(c) for c in catalog.FIG2_PAIR)
    part = Partition.of([[0, 1, 2], [3, 4, 5, 6]])
    rng = random.Random(2)
    for _ in range(4):
        atts = (random_rooted(rng, 4), random_rooted(rng, 4))
        assert verify_coalesced_cospectral(g1, g2, part, atts, ADJACENCY).equal


def _within_class_permutation(part, rng):
    perm = list(range(part.n))
    for cls in part.classes:
        images = list(cls)
        rng.shuffle(images)
        for v, w in zip(cls, images):
            perm[v] = w
    return perm


def test_q_laplacian_extension_on_relabelled_pairs():
    rng = random.Random(14)
    for _ in range(15):
        n = rng.randint(2, 6)
        g = random_connected_graph(n, rng)
        part = random_partition(n, rng)
        perm = _within_class_permutation(part, rng)
        h = g.relabel(perm)
        full = ExactMatrix([[1 if perm[c] == r else 0 for c in range(n)] for r in range(n)])
        s = BlockSimilarity.from_matrix(full, part)
        q = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        atts = [random_rooted(rng, 3) for _ in part.classes]
        w = verify_extended_witness(s, g, h, atts, QLaplacian(q))
        assert isinstance(w, SimilarityWitness)


def test_adjacency_whole_block_extension():
    g1, g2 = (decode_graph6(c) for c in catalog.FIG2_PAIR)
    w = find_block_similarity(SimilarityProblem(g1, g2, Partition.whole(7), ADJACENCY))
    assert isinstance(w, SimilarityWitness)
    rng = random.Random(5)
    for _ in range(3):
        h = random_rooted(rng, 3)
        verify_extended_witness(w.s, g1, g2, [h], ADJACENCY)
        assert verify_coalesced_cospectral(g1, g2, Partition.whole(7), [h], ADJACENCY).equal


def test_distance_extension_needs_sjjs_witness():
    s = catalog.eight_similarity()
    g2, g1 = (decode_graph6(c) for c in catalog.EIGHT_PAIR)
    rng = random.Random(9)
    for _ in range(5):
        atts = [random_rooted(rng, 3) for _ in range(3)]
        verify_extended_witness(s, g1, g2, atts, DISTANCE, require_sjjs=True)


def test_simultaneous_witness_extends_to_generalized_distance():
    s = catalog.seven_similarity()
    pair = catalog.SEVEN_PAIRS[1]
    prob = catalog.reference_problem(pair, s.partition, DISTANCE, simultaneous=True)
    rng = random.Random(4)
    for _ in range(4):
        atts = [random_rooted(rng, 3) for _ in range(4)]
        f = DistanceFunction.table([rng.randint(-2, 4) for _ in range(12)])
        assert verify_coalesced_cospectral(prob.g1, prob.g2, s.partition, atts, GeneralizedDistance(f)).equal


def test_breaking_attachment_absent_for_isomorphic_pair():
    g = decode_graph6("FzE}w")
    h = g.relabel([6, 5, 4, 3, 2, 1, 0])
    r = find_breaking_attachment(g, h, None, DISTANCE, max_h=3)
    assert not r.found and r.tested == 4


def test_breaking_attachment_for_union_pair():
    g1, g2 = (decode_graph6(c) for c in catalog.UNION_PAIR)
    r = find_breaking_attachment(g1, g2, [0, 7], DISTANCE, max_h=3)
    assert r.found
    assert not cospectral(*_coalesced_pair(g1, g2, [0, 7], r.attachment), DISTANCE)


def _coalesced_pair(g1, g2, sites, h):
    from cospec.graphs import CoalescingSpec, coalesced_graph

    part = Partition.isolating(g1.n, sites)
    spec = CoalescingSpec(g1, part, (h, RootedGraph(Graph.empty(1), 0)))
    return coalesced_graph(spec), coalesced_graph(spec.with_base(g2))


def test_distinguishing_table():
    a, b = (decode_graph6(c) for c in catalog.SEVEN_EXCEPTION)
    f = find_distinguishing_table(a, b)
    assert f is not None
    assert not cospectral(a, b, GeneralizedDistance(f)).equal
    a, b = (decode_graph6(c) for c in catalog.SEVEN_PAIRS[0])
    assert find_distinguishing_table(a, b, values=(0, 1, 2)) is None
