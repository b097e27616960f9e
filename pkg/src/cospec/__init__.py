"""Exact tools for building and certifying cospectral graphs by coalescing."""

from __future__ import annotations

from .codec import decode_graph6, encode_graph6, stream_graph6
from .errors import (
    ConstraintViolated,
    CospecError,
    FUndefinedAtDistance,
    InvalidPartition,
    MalformedGraph6,
    NotConnected,
    ShapeError,
    UseExternalFile,
)
from .exact import ExactMatrix, Polynomial, charpoly, determinant, nullspace, rank
from .graphs import (
    CoalescingSpec,
    Graph,
    Partition,
    RootedGraph,
    VertexLabel,
    all_pairs_distances,
    are_isomorphic,
    coalesce,
    coalesced_graph,
    diameter,
    distance_t_graph,
    union_distance_graphs,
)
from .matrices import (
    ADJACENCY,
    DISTANCE,
    NEGATIVE_LAPLACIAN,
    SIGNLESS_LAPLACIAN,
    Distance,
    DistanceFunction,
    GeneralizedDistance,
    QLaplacian,
    build_matrix,
    parse_kind,
    shifted_block_matrix,
)
from .search import CensusReport, classify_sjjs, enumerate_connected, mine_cospectral
from .similarity import (
    BlockSimilarity,
    NonexistenceReport,
    SimilarityProblem,
    SimilarityWitness,
    check_similarity,
    extend_similarity,
    find_block_similarity,
)
from .verify import (
    butler_condition,
    conjecture_counterexample_check,
    cospectral,
    find_breaking_attachment,
    shift_lemma_oracle,
    verify_coalesced_cospectral,
    verify_extended_witness,
)

__version__ = "0.1.0"

__all__ = [
    "decode_graph6",
    "encode_graph6",
    "stream_graph6",
    "ConstraintViolated",
    "CospecError",
    "FUndefinedAtDistance",
    "InvalidPartition",
    "MalformedGraph6",
    "NotConnected",
    "ShapeError",
    "UseExternalFile",
    "ExactMatrix",
    "Polynomial",
    "charpoly",
    "determinant",
    "nullspace",
    "rank",
    "CoalescingSpec",
    "Graph",
    "Partition",
    "RootedGraph",
    "VertexLabel",
    "all_pairs_distances",
    "are_isomorphic",
    "coalesce",
    "coalesced_graph",
    "diameter",
    "distance_t_graph",
    "union_distance_graphs",
    "ADJACENCY",
    "DISTANCE",
    "NEGATIVE_LAPLACIAN",
    "SIGNLESS_LAPLACIAN",
    "Distance",
    "DistanceFunction",
    "GeneralizedDistance",
    "QLaplacian",
    "build_matrix",
    "parse_kind",
    "shifted_block_matrix",
    "CensusReport",
    "classify_sjjs",
    "enumerate_connected",
    "mine_cospectral",
    "BlockSimilarity",
    "NonexistenceReport",
    "SimilarityProblem",
    "SimilarityWitness",
    "check_similarity",
    "extend_similarity",
    "find_block_similarity",
    "butler_condition",
    "conjecture_counterexample_check",
    "cospectral",
    "find_breaking_attachment",
    "shift_lemma_oracle",
    "verify_coalesced_cospectral",
    "verify_extended_witness",
]
