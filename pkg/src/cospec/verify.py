"""Cospectrality checks for coalesced graphs and their brute-force oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .codec import decode_graph6, encode_graph6
from .errors import InvalidPartition, NotConnected
from .exact import ExactMatrix, Polynomial, charpoly, submatrix
from .graphs import (
    CoalescingSpec,
    Graph,
    Partition,
    RootedGraph,
    all_pairs_distances,
    coalesced_graph,
    diameter,
)
from .matrices import (
    DISTANCE,
    DistanceFunction,
    GeneralizedDistance,
    MatrixKind,
    adjacency_matrix,
    build_matrix,
)
from .search import enumerate_connected
from .similarity import (
    BlockSimilarity,
    SimilarityProblem,
    SimilarityWitness,
    check_similarity,
    extend_similarity,
)


@dataclass
class CospectralVerdict:
    kind: MatrixKind
    equal: bool
    charpoly_1: Polynomial
    charpoly_2: Polynomial

    def __bool__(self) -> bool:
        return self.equal

    def to_json(self) -> dict:
        return {
            "kind": self.kind.label,
            "equal": self.equal,
            "charpoly_1": self.charpoly_1.to_json(),
            "charpoly_2": self.charpoly_2.to_json(),
        }


def cospectral(g1: Graph, g2: Graph, kind: MatrixKind = DISTANCE) -> CospectralVerdict:
    """Compare the characteristic polynomials of the chosen matrices exactly."""
    p1 = charpoly(build_matrix(g1, kind))
    p2 = charpoly(build_matrix(g2, kind))
    return CospectralVerdict(kind, p1 == p2, p1, p2)


def verify_coalesced_cospectral(
    g1: Graph,
    g2: Graph,
    partition: Partition,
    attachments: Sequence[RootedGraph],
    kind: MatrixKind = DISTANCE,
) -> CospectralVerdict:
    """Coalesce the same attachments onto both graphs and compare spectra."""
    spec = CoalescingSpec(g1, partition, tuple(attachments))
    return cospectral(coalesced_graph(spec), coalesced_graph(spec.with_base(g2)), kind)


def verify_extended_witness(
    s: BlockSimilarity,
    g1: Graph,
    g2: Graph,
    attachments: Sequence[RootedGraph],
    kind: MatrixKind,
    require_sjjs: bool = False,
) -> SimilarityWitness:
    """Check that the repeated-block extension of ``s`` is a similarity for
    the coalesced pair.  Raises ``ConstraintViolated`` if it is not."""
    spec = CoalescingSpec(g1, s.partition, tuple(attachments))
    ext = extend_similarity(s, spec)
    h1 = coalesced_graph(spec)
    h2 = coalesced_graph(spec.with_base(g2))
    prob = SimilarityProblem(h1, h2, ext.partition, kind, require_sjjs=require_sjjs)
    return check_similarity(ext, prob)


# rooted attachment enumeration ---------------------------------------------


def _rooted_code(g: Graph, root: int) -> str:
    others = [v for v in range(g.n) if v != root]
    best = None
    for order in itertools.permutations(others):
        perm = [0] * g.n
        for new, old in enumerate((root,) + order):
            perm[old] = new
        code = encode_graph6(g.relabel(perm))
        if best is None or code < best:
            best = code
    return best


@lru_cache(maxsize=None)
def _rooted_codes(n: int) -> tuple[str, ...]:
    codes = set()
    for g in enumerate_connected(n):
        for r in range(n):
            codes.add(_rooted_code(g, r))
    return tuple(sorted(codes, key=lambda c: (decode_graph6(c).num_edges, c)))


def rooted_connected_graphs(max_n: int = 4, min_n: int = 1) -> Iterator[RootedGraph]:
    """Connected rooted graphs up to rooted isomorphism, root at vertex 0.

    Ordered by vertex count, then edge count, then graph6 code.
    """
    for n in range(min_n, max_n + 1):
        for code in _rooted_codes(n):
            yield RootedGraph(decode_graph6(code), 0)


@dataclass
class CounterexampleReport:
    found: bool
    sites: tuple[int, ...]
    tested: int
    attachment: RootedGraph | None = None
    verdict: CospectralVerdict | None = None

    def to_json(self) -> dict:
        out = {
            "found": self.found,
            "sites": [v + 1 for v in self.sites],
            "tested": self.tested,
        }
        if self.attachment is not None:
            out["attachment"] = encode_graph6(self.attachment.normalized)
            out["root"] = 1
        return out


def find_breaking_attachment(
    g1: Graph,
    g2: Graph,
    sites: Iterable[int] | None = None,
    kind: MatrixKind = DISTANCE,
    max_h: int = 4,
    min_h: int = 2,
) -> CounterexampleReport:
    """First rooted connected H (in canonical order) whose coalescing onto
    every vertex of ``sites`` in both graphs breaks cospectrality."""
    sites = tuple(range(g1.n)) if sites is None else tuple(sorted(set(sites)))
    part = Partition.isolating(g1.n, sites)
    tested = 0
    for h in rooted_connected_graphs(max_h, min_h):
        tested += 1
        atts = (h,) if len(part) == 1 else (h, RootedGraph(Graph.empty(1), 0))
        v = verify_coalesced_cospectral(g1, g2, part, atts, kind)
        if not v.equal:
            return CounterexampleReport(True, sites, tested, h, v)
    return CounterexampleReport(False, sites, tested)


def conjecture_counterexample_check(g1: Graph, g2: Graph, max_h: int = 4) -> CounterexampleReport:
    """Look for a rooted H whose coalescing onto all vertices of two
    distance-cospectral graphs breaks distance cospectrality."""
    return find_breaking_attachment(g1, g2, None, DISTANCE, max_h)


def find_distinguishing_table(
    g1: Graph, g2: Graph, values: Sequence[int] = (0, 1, 2, 3)
) -> DistanceFunction | None:
    """First table f (product order over ``values``) with D^f spectra unequal."""
    length = max(diameter(g1), diameter(g2)) + 1
    for table in itertools.product(values, repeat=length):
        f = DistanceFunction.table(table)
        if not cospectral(g1, g2, GeneralizedDistance(f)).equal:
            return f
    return None


# Butler et al. polynomial condition -----------------------------------------------


def _subset_sums(g: Graph, v1: Sequence[int], v2: Sequence[int]) -> dict[tuple[int, int], Polynomial]:
    sums: dict[tuple[int, int], Polynomial] = {}
    a = adjacency_matrix(g)
    for k in range(len(v1) + 1):
        for s in itertools.combinations(v1, k):
            for l in range(len(v2) + 1):
                for t in itertools.combinations(v2, l):
                    verts = sorted(s + t)
                    p = charpoly(submatrix(a, verts, verts))
                    sums[(k, l)] = sums.get((k, l), Polynomial()) + p
    return sums


def butler_condition(g1: Graph, g2: Graph, v1: Iterable[int], v2: Iterable[int]) -> bool:
    """Subset charpoly-sum criterion for a two-class partition ``v1 | v2``.

    True iff for every ``(k, l)`` the sum of adjacency characteristic
    polynomials of induced subgraphs on ``S | T`` (``S`` a k-subset of v1,
    ``T`` an l-subset of v2) agrees between the two graphs.
    """
    v1, v2 = sorted(set(v1)), sorted(set(v2))
    if g1.n != g2.n:
        raise InvalidPartition("graphs have different vertex counts")
    if set(v1) & set(v2) or set(v1) | set(v2) != set(range(g1.n)):
        raise InvalidPartition("v1 and v2 must split the vertex set")
    return _subset_sums(g1, v1, v2) == _subset_sums(g2, v1, v2)


# distance shift oracle -----------------------------------------------------------


def shift_lemma_oracle(spec: CoalescingSpec) -> bool:
    """Compare BFS distances of the coalesced graph with the block shift
    formula ``M[i1:1, i2:1] + alpha J (+ (beta - alpha) I if i1 == i2)``."""
    if not spec.base.is_connected():
        raise NotConnected("base graph is disconnected")
    hs = [h.normalized for h in spec.attachments]
    for h in hs:
        if not h.is_connected():
            raise NotConnected("attachment is disconnected")
    big = all_pairs_distances(coalesced_graph(spec))
    base = all_pairs_distances(spec.base)
    hd = [all_pairs_distances(h) for h in hs]
    classes = spec.partition.classes
    for i1, c1 in enumerate(classes):
        for i2, c2 in enumerate(classes):
            m = submatrix(base, c1, c2)
            ones = ExactMatrix.ones(len(c1), len(c2))
            for j1 in range(hs[i1].n):
                for j2 in range(hs[i2].n):
                    alpha = hd[i1][0, j1] + hd[i2][0, j2]
                    expected = m + ones.scale(alpha)
                    if i1 == i2:
                        beta = hd[i1][j1, j2]
                        expected = expected + ExactMatrix.identity(len(c1)).scale(beta - alpha)
                    got = submatrix(big, spec.block(i1, j1), spec.block(i2, j2))
                    if got != expected:
                        return False
    return True
