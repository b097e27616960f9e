"""Reference graphs and similarity matrices used by ``cospec reproduce``.

Vertex numbers in partitions are 1-based, in graph6 order.  The reference
similarity matrices below satisfy ``S M(second) = M(first) S`` for the
listed ``(first, second)`` pair, so problems built from them put the second
graph in the ``g1`` slot (see :func:`reference_problem`).
"""

from __future__ import annotations

from fractions import Fraction

from .codec import decode_graph6
from .exact import ExactMatrix, block_diag
from .graphs import Graph, Partition, RootedGraph
from .matrices import MatrixKind
from .similarity import BlockSimilarity, SimilarityProblem


def _scaled(rows, denominator) -> ExactMatrix:
    return ExactMatrix([[Fraction(x, denominator) for x in r] for r in rows])


def _one() -> ExactMatrix:
    return ExactMatrix([[1]])


# six-vertex base graph and its three attachments, with both distance matrices
FIG1_BASE = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
FIG1_PARTITION = Partition.of([[0, 1, 2], [3], [4, 5]])
FIG1_ATTACHMENTS = (
    RootedGraph(Graph.path(3), 0),
    RootedGraph(Graph.empty(1), 0),
    RootedGraph(Graph.complete(3), 0),
)
FIG1_BASE_DISTANCES = ExactMatrix([
    [0, 1, 2, 3, 4, 4],
    [1, 0, 1, 2, 3, 3],
    [2, 1, 0, 1, 2, 2],
    [3, 2, 1, 0, 1, 1],
    [4, 3, 2, 1, 0, 1],
    [4, 3, 2, 1, 1, 0],
])
FIG1_COALESCED_DISTANCES = ExactMatrix([
    [0, 1, 2, 1, 2, 3, 2, 3, 4, 3, 4, 4, 5, 5, 5, 5],
    [1, 0, 1, 2, 1, 2, 3, 2, 3, 2, 3, 3, 4, 4, 4, 4],
    [2, 1, 0, 3, 2, 1, 4, 3, 2, 1, 2, 2, 3, 3, 3, 3],
    [1, 2, 3, 0, 3, 4, 1, 4, 5, 4, 5, 5, 6, 6, 6, 6],
    [2, 1, 2, 3, 0, 3, 4, 1, 4, 3, 4, 4, 5, 5, 5, 5],
    [3, 2, 1, 4, 3, 0, 5, 4, 1, 2, 3, 3, 4, 4, 4, 4],
    [2, 3, 4, 1, 4, 5, 0, 5, 6, 5, 6, 6, 7, 7, 7, 7],
    [3, 2, 3, 4, 1, 4, 5, 0, 5, 4, 5, 5, 6, 6, 6, 6],
    [4, 3, 2, 5, 4, 1, 6, 5, 0, 3, 4, 4, 5, 5, 5, 5],
    [3, 2, 1, 4, 3, 2, 5, 4, 3, 0, 1, 1, 2, 2, 2, 2],
    [4, 3, 2, 5, 4, 3, 6, 5, 4, 1, 0, 1, 1, 2, 1, 2],
    [4, 3, 2, 5, 4, 3, 6, 5, 4, 1, 1, 0, 2, 1, 2, 1],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 1, 2, 0, 3, 1, 3],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 2, 1, 3, 0, 3, 1],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 1, 2, 1, 3, 0, 3],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 2, 1, 3, 1, 3, 0],
])

# adjacency pair: subset-sum condition holds, no block similarity exists
FIG2_PAIR = ("F@AMw", "F@AZg")
FIG2_V1 = (1, 2, 3)
FIG2_V2 = (4, 5, 6, 7)

# 16-vertex trees, coalescing at vertex 1
TREES_PAIR = ("O@?KAC@?G?t?O???_?G?A", "O@I?GC@PD?G??@??_?_?@")
TREES_PARTITION = "1;2;3-16"
TREES_BLOCK = _scaled([
    [20, 7, 7, -15, 16, 1, 3, 2, 15, -2, -6, 0, 19, -14],
    [7, 21, 21, 8, -5, 3, 9, 6, -8, -6, 0, 0, -14, 11],
    [20, 7, 7, -15, 16, 1, 3, 2, 15, -2, 19, -14, -6, 0],
    [7, 21, 21, 8, -5, 3, 9, 6, -8, -6, -14, 11, 0, 0],
    [-2, -6, -6, 28, 9, -16, 5, 21, 25, -21, 2, 6, 2, 6],
    [15, -8, -8, 2, 12, 14, -11, 28, -2, 25, -15, 8, -15, 8],
    [-16, 5, 5, 12, 19, 31, -13, 9, -12, -9, 16, -5, 16, -5],
    [-1, -3, -3, 14, 31, -8, 29, -16, -14, 16, 1, 3, 1, 3],
    [-3, -9, -9, -11, -13, 29, 34, 5, 11, -5, 3, 9, 3, 9],
    [2, 6, 6, 25, -9, 16, -5, -21, 28, 21, -2, -6, -2, -6],
    [-15, 8, 8, -2, -12, -14, 11, 25, 2, 28, 15, -8, 15, -8],
    [33, -7, -7, 15, -16, -1, -3, -2, -15, 2, 20, 7, 20, 7],
    [-7, 0, 11, -8, 5, -3, -9, -6, 8, 6, 7, 21, 7, 21],
    [-7, 11, 0, -8, 5, -3, -9, -6, 8, 6, 7, 21, 7, 21],
], 53)

# 10-vertex pair; the code is sometimes printed with a stray trailing "!"
TEN_PAIR = ("ItNPaGCI_", "ItJ`A?TI_")
TEN_PRINTED_CODE = "ItNPaGCI_!"
TEN_PARTITION = "1;2;3-10"
TEN_BLOCK = _scaled([
    [5, 1, 2, 1, 2, 1, -3, -2],
    [-1, 4, 1, 4, 1, -3, 2, -1],
    [2, -1, 1, -1, 2, -1, 3, 2],
    [3, 2, -3, 2, -3, 2, 1, 3],
    [2, -1, 2, -1, 1, -1, 3, 2],
    [-1, -3, 1, 4, 1, 4, 2, -1],
    [-1, 4, 1, -3, 1, 4, 2, -1],
    [-2, 1, 2, 1, 2, 1, -3, 5],
], 7)

# 8-vertex pair: witness for three classes, none for the finer four-class split
EIGHT_PAIR = ("GNKutO", "GB}XV_")
EIGHT_PARTITION_3 = "1;2;3-8"
EIGHT_PARTITION_4 = "1;2;3,4,5;6,7,8"
EIGHT_BLOCK = _scaled([
    [0, 1, 1, -1, 1, 0],
    [1, 0, 1, 0, -1, 1],
    [1, 1, 0, 1, 0, -1],
    [1, 0, -1, 0, 1, 1],
    [-1, 1, 0, 1, 0, 1],
    [0, -1, 1, 1, 1, 0],
], 2)

# all distance-cospectral pairs on seven vertices; the last one is not
# cospectral for every generalized distance matrix
SEVEN_PAIRS = (
    ("F{|Xw", "FzE}w"),
    ("FBnWw", "FCS~w"),
    ("F^UXw", "FWl}w"),
    ("FM]ww", "FHd^w"),
    ("FVSsW", "FOnRW"),
    ("FEhwo", "F@Q^o"),
    ("FfUPW", "F_luW"),
    ("FyJ{o", "F|oZo"),
    ("F^UPW", "FWluW"),
    ("FndPW", "Fg]uW"),
    ("FqyWo", "Ft@]o"),
)
SEVEN_EXCEPTION = ("FqyWo", "Ft@]o")
SEVEN_PARTITION = "1;2;3;4,5,6,7"
HALF_J_MINUS_2I = _scaled([[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]], 2)

# 8-vertex pair with two similarity matrices of different block shapes
UNION_PAIR = ("GE{SZW", "GEBb{w")
UNION_PARTITION_A = "1;2;3;4;5,6,7,8"
UNION_PARTITION_B = "1-7;8"
UNION_BLOCK_B = _scaled([
    [-1, 1, 1, 1, 0, 0, 0],
    [1, 1, 0, 0, 0, 1, -1],
    [1, 0, 0, 1, 1, -1, 0],
    [1, 0, 1, 0, -1, 0, 1],
    [0, 0, -1, 1, 0, 1, 1],
    [0, -1, 1, 0, 1, 1, 0],
    [0, 1, 0, -1, 1, 0, 1],
], 2)

# nine-vertex distance-cospectral pairs with no similarity commuting with J
NINE_PAIRS = (
    ("H?BF~z~", "H?Bvfn~"),
    ("HCXjZ^~", "HCdcv~~"),
    ("H?`@f~~", "H?`E]^~"),
    ("H?BDzz~", "H?`E^~}"),
    ("H?`Ffz~", "H?`E^~}"),
    ("H??EF~}", "H??Ffb~"),
    ("H?ze||~", "HCpV~z^"),
    ("H??EFbN", "H?ABBBz"),
)

# 11-vertex pair similar for every distance-t adjacency matrix at once
GENDIST_PAIR = ("JCO_?c]@_S?", "JCO_?sAB_k?")
GENDIST_PARTITION = "1;2;3;4;5;6;7;8-11"
GENDIST_BLOCK = _scaled([[1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1]], 2)


def reference_similarity(partition_text: str, n: int, blocks) -> BlockSimilarity:
    return BlockSimilarity(tuple(blocks), Partition.parse(partition_text, n))


def reference_problem(
    pair: tuple[str, str],
    partition: Partition,
    kind: MatrixKind,
    require_sjjs: bool = False,
    simultaneous: bool = False,
) -> SimilarityProblem:
    """Problem for a reference matrix: ``g1`` is the second code of ``pair``."""
    first, second = decode_graph6(pair[0]), decode_graph6(pair[1])
    return SimilarityProblem(second, first, partition, kind, require_sjjs, simultaneous)


def trees_similarity() -> BlockSimilarity:
    return reference_similarity(TREES_PARTITION, 16, [_one(), _one(), TREES_BLOCK])


def ten_similarity() -> BlockSimilarity:
    return reference_similarity(TEN_PARTITION, 10, [_one(), _one(), TEN_BLOCK])


def eight_similarity() -> BlockSimilarity:
    return reference_similarity(EIGHT_PARTITION_3, 8, [_one(), _one(), EIGHT_BLOCK])


def seven_similarity() -> BlockSimilarity:
    return reference_similarity(SEVEN_PARTITION, 7, [_one(), _one(), _one(), HALF_J_MINUS_2I])


def union_similarities() -> tuple[BlockSimilarity, BlockSimilarity]:
    a = reference_similarity(UNION_PARTITION_A, 8, [_one()] * 4 + [HALF_J_MINUS_2I])
    b = reference_similarity(UNION_PARTITION_B, 8, [UNION_BLOCK_B, _one()])
    return a, b


def gendist_similarity() -> BlockSimilarity:
    return reference_similarity(GENDIST_PARTITION, 11, [_one()] * 7 + [GENDIST_BLOCK])


def seven_full_matrix() -> ExactMatrix:
    return block_diag([_one(), _one(), _one(), HALF_J_MINUS_2I])
