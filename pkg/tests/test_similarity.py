from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from cospec import catalog
from cospec.codec import decode_graph6
from cospec.errors import ConstraintViolated, ShapeError
from cospec.exact import ExactMatrix
from cospec.graphs import CoalescingSpec, Graph, Partition, RootedGraph, random_connected_graph
from cospec.matrices import ADJACENCY, DISTANCE, build_matrix
from cospec.similarity import (
    ALL_SAMPLED_SINGULAR,
    NO_SOLUTION_SPACE,
    BlockSimilarity,
    NonexistenceReport,
    SimilarityProblem,
    SimilarityWitness,
    check_similarity,
    coalesced_partition,
    extend_similarity,
    find_block_similarity,
    is_similarity,
    similarity_equations,
)


def permutation_matrix(perm):
    """P with P[perm[v], v] = 1, so P A P^T is A relabelled by perm."""
    n = len(perm)
    return ExactMatrix([[1 if perm[c] == r else 0 for c in range(n)] for r in range(n)])


def test_block_similarity_shapes():
    p = Partition.parse("1;2,3", 3)
    with pytest.raises(ShapeError):
        BlockSimilarity((ExactMatrix([[1]]),), p)
    with pytest.raises(ShapeError):
        BlockSimilarity((ExactMatrix([[1]]), ExactMatrix([[1]])), p)


def test_from_matrix_round_trip():
    p = Partition.parse("1,3;2", 3)
    s = ExactMatrix([[1, 0, 2], [0, 5, 0], [3, 0, 4]])
    b = BlockSimilarity.from_matrix(s, p)
    assert b.blocks[0].tolist() == [[1, 2], [3, 4]]
    assert b.matrix() == s
    assert b.determinant() == -2 * 5
    with pytest.raises(ShapeError):
        BlockSimilarity.from_matrix(ExactMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), p)


def test_permutation_is_a_similarity():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 7)
        g = random_connected_graph(n, rng)
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        prob = SimilarityProblem(g, h, Partition.whole(n), DISTANCE, require_sjjs=True)
        s = BlockSimilarity.from_matrix(permutation_matrix(perm), prob.partition)
        w = check_similarity(s, prob)
        assert w.det_s in (1, -1)


def test_check_similarity_names_failing_block():
    g1, g2 = (decode_graph6(c) for c in catalog.SEVEN_PAIRS[0])
    part = Partition.parse(catalog.SEVEN_PARTITION, 7)
    wrong = BlockSimilarity((ExactMatrix([[1]]),) * 3 + (ExactMatrix.identity(4),), part)
    with pytest.raises(ConstraintViolated) as info:
        check_similarity(wrong, SimilarityProblem(g2, g1, part, DISTANCE))
    assert info.value.block is not None
    assert not is_similarity(wrong, SimilarityProblem(g2, g1, part, DISTANCE))


def test_singular_candidate_rejected():
    g = Graph.path(3)
    p = Partition.whole(3)
    with pytest.raises(ConstraintViolated):
        check_similarity(BlockSimilarity((ExactMatrix.zeros(3),), p), SimilarityProblem(g, g, p, ADJACENCY))


def test_equations_vanish_on_reference_similarity():
    s = catalog.seven_similarity()
    prob = catalog.reference_problem(catalog.SEVEN_PAIRS[0], s.partition, DISTANCE, require_sjjs=True)
    rows, nvars = similarity_equations(prob)
    flat = [x for b in s.blocks for r in b.tolist() for x in r]
    assert nvars == len(flat) == 1 + 1 + 1 + 16
    for eq in rows:
        assert sum(c * flat[v] for v, c in eq.items()) == 0


def test_reference_matrix_orientation():
    s = catalog.seven_similarity()
    pair = catalog.SEVEN_PAIRS[0]
    a, b = (decode_graph6(c) for c in pair)
    ma, mb = build_matrix(a, DISTANCE), build_matrix(b, DISTANCE)
    full = s.matrix()
    assert full @ mb == ma @ full


def test_find_returns_verified_witness():
    a, b = (decode_graph6(c) for c in catalog.SEVEN_PAIRS[3])
    part = Partition.parse(catalog.SEVEN_PARTITION, 7)
    prob = SimilarityProblem(a, b, part, DISTANCE, require_sjjs=True)
    w = find_block_similarity(prob, rng_seed=1)
    assert isinstance(w, SimilarityWitness)
    assert w.det_s != 0 and "J" in w.checked
    assert is_similarity(w.s, prob)


def test_find_is_deterministic_for_a_seed():
    a, b = (decode_graph6(c) for c in catalog.EIGHT_PAIR)
    prob = SimilarityProblem(a, b, Partition.parse(catalog.EIGHT_PARTITION_3, 8), DISTANCE, require_sjjs=True)
    assert find_block_similarity(prob, 5).to_json() == find_block_similarity(prob, 5).to_json()


def test_non_cospectral_pair_has_no_solution_space():
    prob = SimilarityProblem(Graph.path(4), Graph.star(4), Partition.whole(4), ADJACENCY)
    r = find_block_similarity(prob)
    assert isinstance(r, NonexistenceReport)
    assert r.verdict == NO_SOLUTION_SPACE and r.error_bound == 0


def test_error_bound_formula():
    r = NonexistenceReport(5, 64, 10**6, ALL_SAMPLED_SINGULAR, 7)
    assert r.error_bound == Fraction(7, 2 * 10**6 + 1) ** 64
    assert math.isclose(r.error_bound_log10, 64 * math.log10(7 / (2 * 10**6 + 1)))
    assert r.error_bound_log10 < -200
    assert r.to_json()["verdict"] == ALL_SAMPLED_SINGULAR


def test_extend_similarity_repeats_blocks():
    s = catalog.seven_similarity()
    g = decode_graph6(catalog.SEVEN_PAIRS[0][1])
    atts = (RootedGraph(Graph.path(2), 0), RootedGraph(Graph.empty(1), 0),
            RootedGraph(Graph.path(3), 1), RootedGraph(Graph.complete(3), 0))
    spec = CoalescingSpec(g, s.partition, atts)
    ext = extend_similarity(s, spec)
    assert len(ext.blocks) == 2 + 1 + 3 + 3
    assert ext.partition == coalesced_partition(spec)
    assert ext.blocks[-1] == s.blocks[-1]
    with pytest.raises(ShapeError):
        extend_similarity(s, CoalescingSpec(g, Partition.whole(7), (atts[0],)))
