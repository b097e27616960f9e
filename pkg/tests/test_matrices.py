from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cospec import catalog
from cospec.errors import FUndefinedAtDistance, NotConnected
from cospec.exact import ExactMatrix
from cospec.graphs import CoalescingSpec, Graph, coalesced_graph, diameter, random_connected_graph
from cospec.matrices import (
    ADJACENCY,
    DISTANCE,
    NEGATIVE_LAPLACIAN,
    SIGNLESS_LAPLACIAN,
    DistanceFunction,
    GeneralizedDistance,
    QLaplacian,
    build_matrix,
    distance_class_matrices,
    parse_kind,
    shifted_block_matrix,
)
from helpers import random_spec


def test_parse_kind():
    assert parse_kind("adj") == ADJACENCY
    assert parse_kind("qlap:1") == SIGNLESS_LAPLACIAN
    assert parse_kind("qlap:-1") == NEGATIVE_LAPLACIAN
    assert parse_kind("qlap:1/2") == QLaplacian(Fraction(1, 2))
    assert parse_kind("dist") == DISTANCE
    assert parse_kind("gendist:0,1,4,9").f(3) == 9
    assert parse_kind("gendist:square").f(7) == 49
    assert parse_kind("gendist:exp:1/2").f(3) == Fraction(1, 8)
    assert parse_kind("gendist:indicator:2,3").f.expanded(4).values == (0, 0, 1, 1, 0)
    with pytest.raises(ValueError):
        parse_kind("nonsense")


def test_kind_labels_round_trip():
    for text in ("qlap:0", "qlap:-1", "dist", "gendist:0,1,4,9", "gendist:square", "gendist:exp:2", "gendist:indicator:2,3"):
        assert parse_kind(parse_kind(text).label) == parse_kind(text)


def test_q_laplacian_entries():
    g = Graph.star(4)
    lap = build_matrix(g, NEGATIVE_LAPLACIAN)
    assert lap[0, 0] == -3 and lap[1, 1] == -1 and lap[0, 1] == 1 and lap[1, 2] == 0
    assert all(sum(lap.row(i)) == 0 for i in range(4))
    signless = build_matrix(g, SIGNLESS_LAPLACIAN)
    assert signless[0, 0] == 3
    assert build_matrix(g, ADJACENCY).is_symmetric()


def test_distance_needs_connected():
    with pytest.raises(NotConnected):
        build_matrix(Graph.empty(2), DISTANCE)
    assert build_matrix(Graph.empty(2), ADJACENCY).is_zero()


def test_generalized_distance_tables():
    g = Graph.path(4)
    ident = GeneralizedDistance(DistanceFunction.table([0, 1, 2, 3]))
    assert build_matrix(g, ident) == build_matrix(g, DISTANCE)
    sq = build_matrix(g, GeneralizedDistance(DistanceFunction.square()))
    assert sq[0, 3] == 9
    with pytest.raises(FUndefinedAtDistance) as info:
        build_matrix(g, GeneralizedDistance(DistanceFunction.table([0, 1, 2])))
    assert info.value.distance == 3


def test_indicator_gives_distance_graph_adjacency():
    g = Graph.cycle(7)
    m = build_matrix(g, GeneralizedDistance(DistanceFunction.indicator([2])))
    assert m == distance_class_matrices(g)[2]


def test_distance_classes_sum_to_distance_matrix():
    rng = random.Random(6)
    for _ in range(15):
        g = random_connected_graph(rng.randint(1, 9), rng)
        parts = distance_class_matrices(g)
        total = ExactMatrix.zeros(g.n)
        for t, a in enumerate(parts):
            total = total + a.scale(t)
        assert total == build_matrix(g, DISTANCE)
        assert len(parts) == diameter(g) + 1


def test_reference_distance_matrices():
    spec = CoalescingSpec(catalog.FIG1_BASE, catalog.FIG1_PARTITION, catalog.FIG1_ATTACHMENTS)
    assert build_matrix(catalog.FIG1_BASE, DISTANCE) == catalog.FIG1_BASE_DISTANCES
    assert build_matrix(coalesced_graph(spec), DISTANCE) == catalog.FIG1_COALESCED_DISTANCES
    assert shifted_block_matrix(spec, DISTANCE) == catalog.FIG1_COALESCED_DISTANCES


def _kinds(rng, dmax):
    table = [rng.randint(-3, 5) for _ in range(dmax + 1)]
    return [
        ADJACENCY,
        SIGNLESS_LAPLACIAN,
        NEGATIVE_LAPLACIAN,
        QLaplacian(Fraction(rng.randint(-5, 5), rng.randint(1, 4))),
        DISTANCE,
        GeneralizedDistance(DistanceFunction.table(table)),
        GeneralizedDistance(DistanceFunction.exponential(Fraction(1, 2))),
        GeneralizedDistance(DistanceFunction.indicator([1, 3])),
    ]


def test_block_assembly_matches_direct_construction():
    rng = random.Random(30)
    for _ in range(30):
        spec = random_spec(rng)
        g = coalesced_graph(spec)
        for kind in _kinds(rng, diameter(g)):
            assert shifted_block_matrix(spec, kind) == build_matrix(g, kind), kind
