"""Simple undirected graphs, BFS distances and coalescing.

A :class:`Graph` keeps one neighbour bitmask per vertex; vertices are
``0..n-1`` in construction (graph6) order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidPartition, NotConnected
from .exact import ExactMatrix

INF = math.inf


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for u, mask in enumerate(self.adj):
            if mask >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
            if mask & ~full:
                raise ValueError(f"vertex {u} has a neighbour out of range")
            for v in _bits(mask):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << u) for u in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, n: int) -> Graph:
        """Star on ``n`` vertices with centre 0."""
        return cls.from_edges(n, [(0, i) for i in range(1, n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(_bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return bin(self.adj[u]).count("1")

    def degrees(self) -> list[int]:
        return [bin(m).count("1") for m in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency_rows(self) -> list[list[int]]:
        return [[self.adj[u] >> v & 1 for v in range(self.n)] for u in range(self.n)]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with old vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for u in range(self.n):
            m = 0
            for v in _bits(self.adj[u]):
                m |= 1 << perm[v]
            adj[perm[u]] = m
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            [(index[u], index[v]) for u in vertices for v in _bits(self.adj[u]) if v in index and u < v],
        )

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~m & ~(1 << u) for u, m in enumerate(self.adj)))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    @cached_property
    def distance_rows(self) -> tuple[tuple, ...]:
        return tuple(tuple(r) for r in _bfs_all(self))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bfs_all(g: Graph) -> list[list]:
    n = g.n
    full = (1 << n) - 1
    out = []
    for s in range(n):
        row: list = [INF] * n
        row[s] = 0
        seen = 1 << s
        frontier = seen
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen & full
            seen |= frontier
            for v in _bits(frontier):
                row[v] = d
        out.append(row)
    return out


def all_pairs_distances(g: Graph) -> ExactMatrix:
    """Shortest-path distance matrix by BFS.

    Pairs in different components get ``INF`` (``math.inf``); callers that
    need a finite matrix check :meth:`Graph.is_connected` first.
    """
    return ExactMatrix._trusted(g.distance_rows, g.n)


def diameter(g: Graph) -> int:
    if not g.is_connected():
        raise NotConnected("diameter of a disconnected graph")
    return max((max(r) for r in g.distance_rows), default=0)


def distance_t_graph(g: Graph, t: int) -> Graph:
    """Graph on the same vertices joining pairs at distance exactly ``t``."""
    return union_distance_graphs(g, {t})


def union_distance_graphs(g: Graph, ts: Iterable[int]) -> Graph:
    """Graph joining pairs whose distance lies in ``ts``."""
    if not g.is_connected():
        raise NotConnected("distance graphs need a connected graph")
    ts = set(ts)
    adj = []
    for u, row in enumerate(g.distance_rows):
        m = 0
        for v, d in enumerate(row):
            if v != u and d in ts:
                m |= 1 << v
        adj.append(m)
    return Graph(g.n, tuple(adj))


@dataclass(frozen=True)
class RootedGraph:
    """A graph with a distinguished root; ``normalized`` puts the root at 0."""

    graph: Graph
    root: int = 0

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise ValueError(f"root {self.root} out of range for {self.graph.n} vertices")

    @cached_property
    def normalized(self) -> Graph:
        others = [v for v in range(self.graph.n) if v != self.root]
        perm = [0] * self.graph.n
        for new, old in enumerate([self.root] + others):
            perm[old] = new
        return self.graph.relabel(perm)

    @property
    def n(self) -> int:
        return self.graph.n


K1 = RootedGraph(Graph.empty(1), 0)


@dataclass(frozen=True)
class Partition:
    """Ordered vertex classes V_1..V_l; each class sorted increasingly."""

    n: int
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        classes = tuple(tuple(sorted(c)) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if not classes:
            raise InvalidPartition("a partition needs at least one class")
        seen: set[int] = set()
        for c in classes:
            if not c:
                raise InvalidPartition("empty class")
            for v in c:
                if not 0 <= v < self.n:
                    raise InvalidPartition(f"vertex {v} out of range for {self.n} vertices")
                if v in seen:
                    raise InvalidPartition(f"vertex {v} appears in two classes")
                seen.add(v)
        if len(seen) != self.n:
            missing = sorted(set(range(self.n)) - seen)
            raise InvalidPartition(f"classes do not cover vertices {missing}")

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]], n: int | None = None) -> Partition:
        classes = tuple(tuple(c) for c in classes)
        if n is None:
            n = sum(len(c) for c in classes)
        return cls(n, classes)

    @classmethod
    def whole(cls, n: int) -> Partition:
        return cls(n, (tuple(range(n)),))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, tuple((v,) for v in range(n)))

    @classmethod
    def isolating(cls, n: int, sites: Iterable[int]) -> Partition:
        """Two classes: ``sites`` and everything else (dropped when empty)."""
        sites = tuple(sorted(set(sites)))
        rest = tuple(v for v in range(n) if v not in sites)
        return cls(n, (sites, rest) if rest else (sites,))

    @classmethod
    def parse(cls, text: str, n: int) -> Partition:
        """Parse ``"1;2;3;4,5,6,7"``: classes split by ``;``, 1-based vertices
        split by ``,``, ranges like ``3-16`` allowed."""
        classes = []
        for chunk in text.split(";"):
            members: list[int] = []
            for item in chunk.split(","):
                item = item.strip()
                if not item:
                    continue
                if "-" in item:
                    lo, hi = item.split("-", 1)
                    members.extend(range(int(lo) - 1, int(hi)))
                else:
                    members.append(int(item) - 1)
            classes.append(members)
        return cls(n, tuple(tuple(c) for c in classes))

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def format(self) -> str:
        return ";".join(",".join(str(v + 1) for v in c) for c in self.classes)


class VertexLabel(NamedTuple):
    """1-based ``i:j:k`` label of a vertex in a coalesced graph."""

    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return f"{self.i}:{self.j}:{self.k}"


@dataclass(frozen=True)
class CoalescingSpec:
    base: Graph
    partition: Partition
    attachments: tuple[RootedGraph, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "attachments", tuple(self.attachments))
        if self.partition.n != self.base.n:
            raise InvalidPartition("partition and base graph disagree on vertex count")
        if len(self.attachments) != len(self.partition):
            raise InvalidPartition(
                f"{len(self.partition)} classes but {len(self.attachments)} attachments"
            )

    def with_base(self, base: Graph) -> CoalescingSpec:
        return CoalescingSpec(base, self.partition, self.attachments)

    @cached_property
    def block_offsets(self) -> tuple[int, ...]:
        """Index of vertex ``i:1:1`` for every class i (0-based i)."""
        offs = []
        acc = 0
        for c, h in zip(self.partition.classes, self.attachments):
            offs.append(acc)
            acc += len(c) * h.n
        return tuple(offs)

    @property
    def num_vertices(self) -> int:
        return sum(len(c) * h.n for c, h in zip(self.partition.classes, self.attachments))

    def index(self, i: int, j: int, k: int) -> int:
        """Row/column of the 0-based triple (i, j, k) in the coalesced graph."""
        return self.block_offsets[i] + j * len(self.partition.classes[i]) + k

    def block(self, i: int, j: int) -> list[int]:
        """Vertex indices of block ``i:j`` (0-based i, j) in k order."""
        size = len(self.partition.classes[i])
        start = self.index(i, j, 0)
        return list(range(start, start + size))


def single_site_spec(base: Graph, sites: Iterable[int], h: RootedGraph) -> CoalescingSpec:
    """Coalesce ``h`` onto every vertex of ``sites`` and nothing elsewhere."""
    part = Partition.isolating(base.n, sites)
    atts = (h, K1) if len(part) == 2 else (h,)
    return CoalescingSpec(base, part, atts)


def coalesce(spec: CoalescingSpec) -> tuple[Graph, list[VertexLabel]]:
    """Glue a copy of H_i onto each vertex of V_i.

    Vertices of the result are ordered lexicographically by ``(i, j, k)``.
    """
    n = spec.num_vertices
    labels: list[VertexLabel] = []
    for i, (cls, h) in enumerate(zip(spec.partition.classes, spec.attachments)):
        for j in range(h.n):
            for k in range(len(cls)):
                labels.append(VertexLabel(i + 1, j + 1, k + 1))

    where = {}
    for i, cls in enumerate(spec.partition.classes):
        for k, v in enumerate(cls):
            where[v] = (i, k)

    edges = []
    for u, v in spec.base.edges():
        (iu, ku), (iv, kv) = where[u], where[v]
        edges.append((spec.index(iu, 0, ku), spec.index(iv, 0, kv)))
    for i, (cls, h) in enumerate(zip(spec.partition.classes, spec.attachments)):
        hn = h.normalized
        for a, b in hn.edges():
            for k in range(len(cls)):
                edges.append((spec.index(i, a, k), spec.index(i, b, k)))
    return Graph.from_edges(n, edges), labels


def coalesced_graph(spec: CoalescingSpec) -> Graph:
    return coalesce(spec)[0]


def base_positions(spec: CoalescingSpec) -> list[int]:
    """For each base vertex v, its index (block i:1) in the coalesced graph."""
    pos = [0] * spec.base.n
    for i, cls in enumerate(spec.partition.classes):
        for k, v in enumerate(cls):
            pos[v] = spec.index(i, 0, k)
    return pos


# isomorphism -----------------------------------------------------------------


def _refine(graphs: Sequence[Graph]) -> list[list[int]]:
    """Colour refinement run jointly so colours are comparable across graphs."""
    colours = [g.degrees() for g in graphs]
    n_classes = len(set(itertools.chain.from_iterable(colours)))
    while True:
        sigs = [
            [(c[u], tuple(sorted(c[v] for v in _bits(g.adj[u])))) for u in range(g.n)]
            for g, c in zip(graphs, colours)
        ]
        palette = {s: idx for idx, s in enumerate(sorted(set(itertools.chain.from_iterable(sigs))))}
        colours = [[palette[s] for s in row] for row in sigs]
        if len(palette) == n_classes:
            return colours
        n_classes = len(palette)


def refinement_key(g: Graph) -> tuple:
    """Isomorphism invariant from colour refinement (stable across graphs)."""
    colour = [hash(d) for d in g.degrees()]
    count = len(set(colour))
    for _ in range(g.n):
        colour = [hash((colour[u], tuple(sorted(colour[v] for v in _bits(g.adj[u]))))) for u in range(g.n)]
        new_count = len(set(colour))
        if new_count == count:
            break
        count = new_count
    return (g.n, g.num_edges, tuple(sorted(colour)))


def find_isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """Return ``perm`` with ``g1.relabel(perm) == g2``, or None.

    Backtracking over vertex bijections restricted to equal refined colours.
    """
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    n = g1.n
    if n == 0:
        return []
    c1, c2 = _refine([g1, g2])
    if sorted(c1) != sorted(c2):
        return None
    by_colour: dict[int, list[int]] = {}
    for v, c in enumerate(c2):
        by_colour.setdefault(c, []).append(v)
    # rare colours first, then neighbours of already ordered vertices
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        placed = set(order)
        best = min(
            remaining,
            key=lambda v: (
                -bin(g1.adj[v] & sum(1 << p for p in placed)).count("1") if placed else 0,
                len(by_colour[c1[v]]),
                v,
            ),
        )
        order.append(best)
        remaining.discard(best)

    perm = [-1] * n
    used = 0

    def extend(pos: int) -> bool:
        nonlocal used
        if pos == n:
            return True
        u = order[pos]
        for w in by_colour[c1[u]]:
            if used >> w & 1:
                continue
            ok = True
            for p in order[:pos]:
                if g1.has_edge(u, p) != g2.has_edge(w, perm[p]):
                    ok = False
                    break
            if not ok:
                continue
            perm[u] = w
            used |= 1 << w
            if extend(pos + 1):
                return True
            used &= ~(1 << w)
            perm[u] = -1
        return False

    return list(perm) if extend(0) else None


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


# random generators ------------------------------------------------------------


def random_tree(n: int, rng) -> Graph:
    """Uniform labelled tree on ``n`` vertices via a Pruefer sequence."""
    if n <= 2:
        return Graph.path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, rng, p: float = 0.3) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``p``."""
    tree = random_tree(n, rng)
    edges = set(tree.edges())
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, edges)
