"""Block-diagonal similarity matrices between two graphs' matrices.

A similarity ``S = B_1 (+) ... (+) B_l`` aligned to a vertex partition
satisfies ``S M1 = M2 S``.  Because ``S`` is block diagonal this splits into
one equation per ordered pair of classes::

    B_a M1[V_a, V_b] = M2[V_a, V_b] B_b

which is linear in the block entries.  Extra requirements (``SJ = JS``, or
simultaneous similarity of every distance-t adjacency matrix) add more
equations of exactly the same shape.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Union

from .errors import ConstraintViolated, ShapeError
from .exact import ExactMatrix, Scalar, bareiss_det, determinant, exact, sparse_nullspace, submatrix
from .graphs import CoalescingSpec, Graph, Partition, diameter, union_distance_graphs
from .matrices import MatrixKind, adjacency_matrix, build_matrix

log = logging.getLogger(__name__)

NO_SOLUTION_SPACE = "NoSolutionSpace"
ALL_SAMPLED_SINGULAR = "AllSampledSingular"


@dataclass(frozen=True)
class BlockSimilarity:
    blocks: tuple[ExactMatrix, ...]
    partition: Partition

    def __post_init__(self):
        blocks = tuple(b if isinstance(b, ExactMatrix) else ExactMatrix(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if len(blocks) != len(self.partition):
            raise ShapeError(f"{len(blocks)} blocks for {len(self.partition)} classes")
        for b, cls in zip(blocks, self.partition.classes):
            if b.shape != (len(cls), len(cls)):
                raise ShapeError(f"block of shape {b.shape} for a class of size {len(cls)}")

    @classmethod
    def from_matrix(cls, s: ExactMatrix, partition: Partition) -> BlockSimilarity:
        """Split a full matrix (rows in vertex order) into partition blocks."""
        if s.shape != (partition.n, partition.n):
            raise ShapeError("matrix size does not match the partition")
        where = {}
        for a, c in enumerate(partition.classes):
            for v in c:
                where[v] = a
        for u in range(s.nrows):
            for v in range(s.ncols):
                if where[u] != where[v] and s[u, v] != 0:
                    raise ShapeError(f"entry ({u}, {v}) lies outside the diagonal blocks")
        return cls(tuple(submatrix(s, c, c) for c in partition.classes), partition)

    def matrix(self) -> ExactMatrix:
        """Full matrix with rows and columns in original vertex order."""
        n = self.partition.n
        out = [[0] * n for _ in range(n)]
        for b, c in zip(self.blocks, self.partition.classes):
            for r, u in enumerate(c):
                for k, v in enumerate(c):
                    out[u][v] = b[r, k]
        return ExactMatrix._trusted(out, n)

    def determinant(self) -> Scalar:
        return exact(reduce(lambda acc, b: acc * determinant(b), self.blocks, 1))

    def to_json(self) -> dict:
        return {
            "partition": [[v + 1 for v in c] for c in self.partition.classes],
            "blocks": [[[str(x) for x in row] for row in b] for b in self.blocks],
        }


@dataclass(frozen=True)
class SimilarityProblem:
    g1: Graph
    g2: Graph
    partition: Partition
    kind: MatrixKind
    require_sjjs: bool = False
    simultaneous: bool = False

    def __post_init__(self):
        if self.g1.n != self.g2.n:
            raise ShapeError("graphs have different vertex counts")
        if self.partition.n != self.g1.n:
            raise ShapeError("partition does not match the graphs")

    def constraint_matrices(self) -> list[tuple[str, ExactMatrix, ExactMatrix]]:
        """Every ``(name, M1, M2)`` with required ``S M1 = M2 S``."""
        out = [(self.kind.label, build_matrix(self.g1, self.kind), build_matrix(self.g2, self.kind))]
        n = self.g1.n
        if self.require_sjjs:
            j = ExactMatrix.ones(n)
            out.append(("J", j, j))
        if self.simultaneous:
            top = max(diameter(self.g1), diameter(self.g2))
            for t in range(top + 1):
                if t == 0:
                    a1 = a2 = ExactMatrix.identity(n)
                else:
                    a1 = adjacency_matrix(union_distance_graphs(self.g1, {t}))
                    a2 = adjacency_matrix(union_distance_graphs(self.g2, {t}))
                out.append((f"A^({t})", a1, a2))
        return out


@dataclass
class SimilarityWitness:
    s: BlockSimilarity
    det_s: Scalar
    checked: tuple[str, ...]
    residual_zero: bool = True
    sjjs: bool = False

    def to_json(self) -> dict:
        return {
            "result": "witness",
            "det_s": str(self.det_s),
            "checked": list(self.checked),
            "residual_zero": self.residual_zero,
            "sjjs": self.sjjs,
            "s": self.s.to_json(),
        }


@dataclass
class NonexistenceReport:
    """No invertible element was found in the solution space.

    ``NoSolutionSpace`` is exact.  ``AllSampledSingular`` is probabilistic:
    the determinant restricted to the solution space is a polynomial of
    degree ``matrix_size``, so if it is not identically zero each uniform
    sample from ``[-bound, bound]`` hits a root with probability at most
    ``matrix_size / (2 bound + 1)``.
    """

    solution_space_dim: int
    trials: int
    coefficient_bound: int
    verdict: str
    matrix_size: int
    reason: str = ""

    @property
    def error_bound(self) -> Fraction:
        if self.verdict == NO_SOLUTION_SPACE:
            return Fraction(0)
        return Fraction(self.matrix_size, 2 * self.coefficient_bound + 1) ** self.trials

    @property
    def error_bound_log10(self) -> float:
        if self.verdict == NO_SOLUTION_SPACE:
            return -math.inf
        return self.trials * (math.log10(self.matrix_size) - math.log10(2 * self.coefficient_bound + 1))

    def to_json(self) -> dict:
        return {
            "result": "nonexistence",
            "verdict": self.verdict,
            "solution_space_dim": self.solution_space_dim,
            "trials": self.trials,
            "coefficient_bound": self.coefficient_bound,
            "matrix_size": self.matrix_size,
            "error_bound_log10": None if self.verdict == NO_SOLUTION_SPACE else self.error_bound_log10,
            "reason": self.reason,
        }


SearchResult = Union[SimilarityWitness, NonexistenceReport]


def check_similarity(s: BlockSimilarity, prob: SimilarityProblem) -> SimilarityWitness:
    """Verify ``s`` exactly against every equation of ``prob``.

    Raises :class:`ConstraintViolated` naming the first failing block
    equation ``(a, b)`` (1-based class indices).
    """
    if s.partition != prob.partition:
        raise ShapeError("similarity is aligned to a different partition")
    det_s = s.determinant()
    if det_s == 0:
        raise ConstraintViolated("S is singular")
    classes = prob.partition.classes
    names = []
    for name, m1, m2 in prob.constraint_matrices():
        for a, ca in enumerate(classes):
            for b, cb in enumerate(classes):
                lhs = s.blocks[a] @ submatrix(m1, ca, cb)
                rhs = submatrix(m2, ca, cb) @ s.blocks[b]
                if lhs != rhs:
                    raise ConstraintViolated(
                        f"{name}: block equation ({a + 1}, {b + 1}) fails", block=(a + 1, b + 1)
                    )
        names.append(name)
    full = s.matrix()
    m1 = build_matrix(prob.g1, prob.kind)
    m2 = build_matrix(prob.g2, prob.kind)
    if not (full @ m1 - m2 @ full).is_zero():
        raise ConstraintViolated("S M1 - M2 S is nonzero")
    return SimilarityWitness(s, det_s, tuple(names), True, prob.require_sjjs)


def is_similarity(s: BlockSimilarity, prob: SimilarityProblem) -> bool:
    try:
        check_similarity(s, prob)
    except ConstraintViolated:
        return False
    return True


def _variable_offsets(partition: Partition) -> list[int]:
    offs = []
    acc = 0
    for c in partition.classes:
        offs.append(acc)
        acc += len(c) ** 2
    return offs + [acc]


def similarity_equations(prob: SimilarityProblem) -> tuple[list[dict[int, Scalar]], int]:
    """Sparse linear system in the block entries; returns (rows, nvars).

    Variable ``offs[a] + r * p + k`` is entry ``(r, k)`` of block ``a`` of
    size ``p``.
    """
    classes = prob.partition.classes
    offs = _variable_offsets(prob.partition)
    seen: set[frozenset] = set()
    rows: list[dict[int, Scalar]] = []
    for _, m1, m2 in prob.constraint_matrices():
        for a, ca in enumerate(classes):
            p = len(ca)
            for b, cb in enumerate(classes):
                q = len(cb)
                x1 = [[m1[u, v] for v in cb] for u in ca]
                x2 = [[m2[u, v] for v in cb] for u in ca]
                for r in range(p):
                    for c in range(q):
                        eq: dict[int, Scalar] = {}
                        # (B_a M1[a,b])[r,c] = sum_k B_a[r,k] M1[a,b][k,c]
                        for k in range(p):
                            coef = x1[k][c]
                            if coef:
                                var = offs[a] + r * p + k
                                eq[var] = eq.get(var, 0) + coef
                        # (M2[a,b] B_b)[r,c] = sum_k M2[a,b][r,k] B_b[k,c]
                        for k in range(q):
                            coef = x2[r][k]
                            if coef:
                                var = offs[b] + k * q + c
                                eq[var] = eq.get(var, 0) - coef
                        eq = {v: x for v, x in eq.items() if x}
                        if not eq:
                            continue
                        key = frozenset(eq.items())
                        if key not in seen:
                            seen.add(key)
                            rows.append(eq)
    return rows, offs[-1]


def _blocks_from_vector(vec: list[int], partition: Partition) -> list[list[list[int]]]:
    offs = _variable_offsets(partition)
    out = []
    for a, c in enumerate(partition.classes):
        p = len(c)
        flat = vec[offs[a] : offs[a] + p * p]
        out.append([flat[r * p : (r + 1) * p] for r in range(p)])
    return out


def find_block_similarity(
    prob: SimilarityProblem,
    rng_seed: int = 0,
    trials: int = 64,
    coeff_bound: int = 10**6,
) -> SearchResult:
    """Search the solution space of ``prob`` for an invertible element.

    The exact rational kernel of the block equations is computed first.  A
    handful of cheap candidates (each basis vector, small +-1 combinations)
    are tried for readable witnesses; then ``trials`` coefficient vectors are
    drawn uniformly from ``[-coeff_bound, coeff_bound]``.  Only those
    uniform draws enter the error bound of a :class:`NonexistenceReport`.
    """
    rows, nvars = similarity_equations(prob)
    basis = sparse_nullspace(rows, nvars)
    dim = len(basis)
    n = prob.partition.n
    log.debug("similarity system: %d equations, %d unknowns, kernel dim %d", len(rows), nvars, dim)

    def report(verdict: str, reason: str, used_trials: int = 0) -> NonexistenceReport:
        return NonexistenceReport(dim, used_trials, coeff_bound, verdict, n, reason)

    if dim == 0:
        return report(NO_SOLUTION_SPACE, "only S = 0 satisfies the block equations")
    offs = _variable_offsets(prob.partition)
    for a in range(len(prob.partition)):
        if all(not any(v[offs[a] : offs[a + 1]]) for v in basis):
            return report(NO_SOLUTION_SPACE, f"block {a + 1} vanishes on the whole solution space")

    rng = random.Random(rng_seed)

    def combine(coeffs: list[int]) -> list[int]:
        vec = [0] * nvars
        for c, b in zip(coeffs, basis):
            if c:
                for idx, x in enumerate(b):
                    if x:
                        vec[idx] += c * x
        return vec

    def attempt(coeffs: list[int]) -> SimilarityWitness | None:
        vec = combine(coeffs)
        g = reduce(math.gcd, vec, 0)
        if g == 0:
            return None
        vec = [x // g for x in vec]
        blocks = _blocks_from_vector(vec, prob.partition)
        if any(bareiss_det(b) == 0 for b in blocks):
            return None
        s = BlockSimilarity(tuple(ExactMatrix._trusted(b) for b in blocks), prob.partition)
        return check_similarity(s, prob)

    warmup = [[int(i == k) for i in range(dim)] for k in range(dim)]
    warmup.append([1] * dim)
    warmup.extend([rng.choice((-1, 1)) for _ in range(dim)] for _ in range(8))
    for coeffs in warmup:
        w = attempt(coeffs)
        if w is not None:
            return w
    for _ in range(trials):
        w = attempt([rng.randint(-coeff_bound, coeff_bound) for _ in range(dim)])
        if w is not None:
            return w
    return report(ALL_SAMPLED_SINGULAR, "every sampled element of the solution space was singular", trials)


def coalesced_partition(spec: CoalescingSpec) -> Partition:
    """Partition of a coalesced graph into its ``i:j`` blocks, in (i, j) order."""
    classes = []
    for i, h in enumerate(spec.attachments):
        for j in range(h.n):
            classes.append(tuple(spec.block(i, j)))
    return Partition(spec.num_vertices, tuple(classes))


def extend_similarity(s: BlockSimilarity, spec: CoalescingSpec) -> BlockSimilarity:
    """Repeat block B_i once per vertex of H_i, following the ``i:j`` order."""
    if s.partition != spec.partition:
        raise ShapeError("similarity and coalescing use different partitions")
    blocks = []
    for b, h in zip(s.blocks, spec.attachments):
        blocks.extend([b] * h.n)
    return BlockSimilarity(tuple(blocks), coalesced_partition(spec))
