"""Mining cospectral pairs from graph collections."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .codec import decode_graph6, encode_graph6
from .errors import UseExternalFile
from .exact import berkowitz
from .graphs import Graph, find_isomorphism, refinement_key
from .matrices import DISTANCE, MatrixKind, build_matrix

log = logging.getLogger(__name__)

MAX_ENUMERATION_N = 8


def _labeled_connected(n: int) -> Iterator[Graph]:
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        g = Graph(n, tuple(adj))
        if g.is_connected():
            yield g


@lru_cache(maxsize=None)
def _unlabeled_connected(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    # every connected graph has a non-cut vertex, so extending each smaller
    # connected graph by a vertex with a nonempty neighbourhood reaches all
    reps: list[Graph] = []
    buckets: dict[tuple, list[Graph]] = {}
    for g in _unlabeled_connected(n - 1):
        for nbrs in range(1, 1 << (n - 1)):
            adj = list(g.adj)
            for v in range(n - 1):
                if nbrs >> v & 1:
                    adj[v] |= 1 << (n - 1)
            adj.append(nbrs)
            h = Graph(n, tuple(adj))
            key = refinement_key(h)
            bucket = buckets.setdefault(key, [])
            if any(find_isomorphism(h, other) is not None for other in bucket):
                continue
            bucket.append(h)
            reps.append(h)
    return tuple(reps)


def enumerate_connected(n: int, labeled: bool = False) -> Iterator[Graph]:
    """Connected graphs on ``n`` vertices.

    By default one representative per isomorphism class (853 for n = 7).
    With ``labeled=True`` every connected labelled graph is produced
    (e.g. 4 for n = 3); this is only practical for n <= 6.
    """
    if n < 1:
        return iter(())
    if n > MAX_ENUMERATION_N:
        raise UseExternalFile(f"n = {n}: use an externally generated graph6 file")
    if labeled:
        return _labeled_connected(n)
    return iter(_unlabeled_connected(n))


def _charpoly_key(g: Graph, kind: MatrixKind) -> tuple | None:
    if kind.distance_based and not g.is_connected():
        return None
    return tuple(berkowitz(build_matrix(g, kind)._data))


def _keys_chunk(args: tuple[list[Graph], MatrixKind]) -> list[tuple | None]:
    graphs, kind = args
    return [_charpoly_key(g, kind) for g in graphs]


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    it = iter(it)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


@dataclass
class CensusReport:
    n: int | None
    kind: str
    pair_count: int
    pairs: list[tuple[str, str]]
    sjjs_negative: list[tuple[str, str]] = field(default_factory=list)
    skipped_disconnected: int = 0
    graphs_seen: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "kind": self.kind,
            "graphs_seen": self.graphs_seen,
            "skipped_disconnected": self.skipped_disconnected,
            "pair_count": self.pair_count,
            "pairs": [list(p) for p in self.pairs],
            "sjjs_negative": [list(p) for p in self.sjjs_negative],
        }


def _isomorphism_classes(members: Sequence[Graph]) -> list[list[Graph]]:
    classes: list[list[Graph]] = []
    keys: list[tuple] = []
    for g in members:
        key = refinement_key(g)
        for k, cls in zip(keys, classes):
            if k == key and find_isomorphism(g, cls[0]) is not None:
                cls.append(g)
                break
        else:
            classes.append([g])
            keys.append(key)
    return classes


def mine_cospectral(
    graphs: Iterable[Graph],
    kind: MatrixKind = DISTANCE,
    workers: int = 1,
    chunksize: int = 512,
) -> CensusReport:
    """All unordered non-isomorphic cospectral pairs among ``graphs``.

    Graphs are grouped by their exact characteristic polynomial; inside a
    group isomorphic duplicates are merged and every pair of distinct
    classes is reported, each class named by its smallest graph6 code.
    Disconnected graphs are skipped (and counted) for distance kinds.
    """
    groups: dict[tuple, list[Graph]] = {}
    skipped = 0
    seen = 0
    n_values: set[int] = set()

    def absorb(chunk: list[Graph], keys: list) -> None:
        nonlocal skipped, seen
        for g, key in zip(chunk, keys):
            seen += 1
            n_values.add(g.n)
            if key is None:
                skipped += 1
                continue
            groups.setdefault((g.n, key), []).append(g)

    if workers > 1:
        batches = list(_chunks(graphs, chunksize))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves submission order, so the merge is deterministic
            for chunk, keys in zip(batches, pool.map(_keys_chunk, [(c, kind) for c in batches])):
                absorb(chunk, keys)
    else:
        for chunk in _chunks(graphs, chunksize):
            absorb(chunk, _keys_chunk((chunk, kind)))

    pairs: list[tuple[str, str]] = []
    for members in groups.values():
        if len(members) < 2:
            continue
        classes = _isomorphism_classes(members)
        names = sorted(min(encode_graph6(g) for g in cls) for cls in classes)
        pairs.extend(itertools.combinations(names, 2))
    pairs.sort()
    n = n_values.pop() if len(n_values) == 1 else None
    log.info("mined %d graphs, %d pairs", seen, len(pairs))
    return CensusReport(n, kind.label, len(pairs), pairs, skipped_disconnected=skipped, graphs_seen=seen)


PairLike = Union[tuple[Graph, Graph], tuple[str, str]]


def _as_graph(g: Union[Graph, str]) -> Graph:
    return decode_graph6(g) if isinstance(g, str) else g


def _classify_one(args) -> tuple[bool, dict]:
    from .graphs import Partition
    from .similarity import SimilarityProblem, find_block_similarity

    g1, g2, seed, trials, bound = args
    prob = SimilarityProblem(g1, g2, Partition.whole(g1.n), DISTANCE, require_sjjs=True)
    result = find_block_similarity(prob, seed, trials, bound)
    return hasattr(result, "s"), result.to_json()


def classify_sjjs(
    pairs: Iterable[PairLike],
    seed: int = 0,
    trials: int = 64,
    coeff_bound: int = 10**6,
    workers: int = 1,
) -> CensusReport:
    """Split distance-cospectral pairs by whether a single-block similarity
    with ``SJ = JS`` exists."""
    graphs = [(_as_graph(a), _as_graph(b)) for a, b in pairs]
    jobs = [(a, b, seed, trials, coeff_bound) for a, b in graphs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_classify_one, jobs, chunksize=8))
    else:
        results = [_classify_one(j) for j in jobs]
    codes = [(encode_graph6(a), encode_graph6(b)) for a, b in graphs]
    negative = [c for c, (ok, _) in zip(codes, results) if not ok]
    ns = {a.n for a, _ in graphs}
    report = CensusReport(
        ns.pop() if len(ns) == 1 else None, DISTANCE.label, len(codes), codes, negative,
    )
    report.details["results"] = [r for _, r in results]
    return report
