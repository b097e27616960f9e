"""Graph matrices: q-Laplacian, distance and generalized distance.

Also assembles the matrix of a coalesced graph directly from the base
graph's matrix and the attachments' internal distances, block by block,
without building the coalesced graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .errors import FUndefinedAtDistance, NotConnected
from .exact import ExactMatrix, Scalar, exact
from .graphs import CoalescingSpec, Graph, diameter, union_distance_graphs


@dataclass(frozen=True)
class DistanceFunction:
    """A function on distances 0, 1, 2, ...

    Either an explicit finite table ``values`` (``f(d) = values[d]``) or a
    named family that is defined at every distance.
    """

    values: tuple = ()
    family: str | None = None
    param: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(exact(v) for v in self.values))
        object.__setattr__(self, "param", tuple(self.param))
        if self.family not in (None, "identity", "square", "exp", "indicator"):
            raise ValueError(f"unknown distance function family {self.family!r}")

    @classmethod
    def table(cls, values: Iterable) -> DistanceFunction:
        return cls(tuple(values))

    @classmethod
    def identity(cls) -> DistanceFunction:
        return cls(family="identity")

    @classmethod
    def square(cls) -> DistanceFunction:
        return cls(family="square")

    @classmethod
    def exponential(cls, base) -> DistanceFunction:
        return cls(family="exp", param=(exact(base),))

    @classmethod
    def indicator(cls, distances: Iterable[int]) -> DistanceFunction:
        return cls(family="indicator", param=tuple(sorted(set(distances))))

    def __call__(self, d: int) -> Scalar:
        if d < len(self.values):
            return self.values[d]
        if self.family == "identity":
            return d
        if self.family == "square":
            return d * d
        if self.family == "exp":
            return exact(Fraction(self.param[0]) ** d)
        if self.family == "indicator":
            return int(d in self.param)
        raise FUndefinedAtDistance(d)

    def expanded(self, dmax: int) -> DistanceFunction:
        """Explicit table for distances 0..dmax."""
        return DistanceFunction(tuple(self(d) for d in range(dmax + 1)))

    @property
    def label(self) -> str:
        if self.family is None:
            return ",".join(str(v) for v in self.values)
        if self.family == "exp":
            return f"exp:{self.param[0]}"
        if self.family == "indicator":
            return "indicator:" + ",".join(str(t) for t in self.param)
        return self.family


@dataclass(frozen=True)
class QLaplacian:
    q: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "q", exact(self.q))

    distance_based = False

    @property
    def label(self) -> str:
        return f"qlap:{self.q}"


@dataclass(frozen=True)
class Distance:
    distance_based = True

    @property
    def label(self) -> str:
        return "dist"


@dataclass(frozen=True)
class GeneralizedDistance:
    f: DistanceFunction

    distance_based = True

    @property
    def label(self) -> str:
        return f"gendist:{self.f.label}"


MatrixKind = Union[QLaplacian, Distance, GeneralizedDistance]

ADJACENCY = QLaplacian(0)
SIGNLESS_LAPLACIAN = QLaplacian(1)
NEGATIVE_LAPLACIAN = QLaplacian(-1)
DISTANCE = Distance()


def parse_kind(text: str) -> MatrixKind:
    """Parse ``adj``, ``qlap:q``, ``dist`` or ``gendist:...``.

    Generalized distance accepts an explicit table ``gendist:0,1,4,9``
    (``f(0)=0, f(1)=1, ...``) or ``gendist:square``, ``gendist:identity``,
    ``gendist:exp:q`` and ``gendist:indicator:2,3``.
    """
    text = text.strip()
    head, _, rest = text.partition(":")
    if head in ("adj", "adjacency"):
        return ADJACENCY
    if head in ("lap", "laplacian"):
        return NEGATIVE_LAPLACIAN
    if head == "signless":
        return SIGNLESS_LAPLACIAN
    if head == "qlap":
        return QLaplacian(exact(rest or "0"))
    if head in ("dist", "distance"):
        return DISTANCE
    if head == "gendist":
        name, _, arg = rest.partition(":")
        if name in ("identity", "square"):
            return GeneralizedDistance(DistanceFunction(family=name))
        if name == "exp":
            return GeneralizedDistance(DistanceFunction.exponential(exact(arg)))
        if name == "indicator":
            return GeneralizedDistance(DistanceFunction.indicator(int(t) for t in arg.split(",") if t))
        return GeneralizedDistance(DistanceFunction.table(exact(v) for v in rest.split(",")))
    raise ValueError(f"unknown matrix kind {text!r}")


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise NotConnected("distance matrices need a connected graph")


def build_matrix(g: Graph, kind: MatrixKind) -> ExactMatrix:
    """Matrix of ``g`` for the given kind, rows in vertex order."""
    n = g.n
    if isinstance(kind, QLaplacian):
        q = kind.q
        rows = g.adjacency_rows()
        if q:
            for u, deg in enumerate(g.degrees()):
                rows[u][u] = exact(q * deg)
        return ExactMatrix._trusted(rows, n)
    _require_connected(g)
    if isinstance(kind, Distance):
        return ExactMatrix._trusted(g.distance_rows, n)
    if isinstance(kind, GeneralizedDistance):
        f = kind.f
        cache: dict[int, Scalar] = {}
        rows = []
        for r in g.distance_rows:
            out = []
            for d in r:
                if d not in cache:
                    cache[d] = f(d)
                out.append(cache[d])
            rows.append(out)
        return ExactMatrix._trusted(rows, n)
    raise TypeError(f"unknown matrix kind {kind!r}")


def adjacency_matrix(g: Graph) -> ExactMatrix:
    return build_matrix(g, ADJACENCY)


def distance_class_matrices(g: Graph) -> list[ExactMatrix]:
    """Adjacency matrices of the distance-t graphs for t = 0..diam(g)."""
    return [adjacency_matrix(union_distance_graphs(g, {t})) if t else ExactMatrix.identity(g.n)
            for t in range(diameter(g) + 1)]


def shifted_block_matrix(spec: CoalescingSpec, kind: MatrixKind) -> ExactMatrix:
    """Matrix of the coalesced graph assembled block by block.

    Block ``(i1:j1, i2:j2)`` is derived from the base-graph block
    ``(i1:1, i2:1)`` and the attachments alone:

    * q-Laplacian: base block plus ``q*deg_H(root) I`` on ``i:1`` diagonal
      blocks, ``q*deg_H(j) I`` on other diagonal blocks, ``I`` for edges of
      ``H_i``, zero elsewhere;
    * distance: base block ``+ alpha J``, plus ``(beta - alpha) I`` when
      ``i1 == i2``;
    * generalized distance: ``sum_t f(t + alpha) A^(t)`` over the base
      distance classes, with ``f(beta) I`` replacing the t = 0 term when
      ``i1 == i2``;

    where ``alpha = d_H1(root, j1) + d_H2(root, j2)`` and
    ``beta = d_H(j1, j2)``.
    """
    base = spec.base
    classes = spec.partition.classes
    hs = [h.normalized for h in spec.attachments]
    N = spec.num_vertices
    out = [[0] * N for _ in range(N)]

    if isinstance(kind, QLaplacian):
        q = kind.q
        m = build_matrix(base, kind)
        for i1, c1 in enumerate(classes):
            h = hs[i1]
            hdeg = h.degrees()
            for i2, c2 in enumerate(classes):
                blk = [[m[u, v] for v in c2] for u in c1]
                for r, row in enumerate(blk):
                    for c, x in enumerate(row):
                        out[spec.index(i1, 0, r)][spec.index(i2, 0, c)] = exact(
                            x + (q * hdeg[0] if i1 == i2 and r == c else 0)
                        )
            for j in range(1, h.n):
                for k in range(len(c1)):
                    a = spec.index(i1, j, k)
                    out[a][a] = exact(q * hdeg[j])
            for j1, j2 in h.edges():
                for k in range(len(c1)):
                    a, b = spec.index(i1, j1, k), spec.index(i1, j2, k)
                    out[a][b] = out[b][a] = 1
        return ExactMatrix._trusted(out, N)

    _require_connected(base)
    for h in hs:
        _require_connected(h)
    hdist = [h.distance_rows for h in hs]

    if isinstance(kind, Distance):
        m = base.distance_rows
        for i1, c1 in enumerate(classes):
            for i2, c2 in enumerate(classes):
                for j1 in range(hs[i1].n):
                    for j2 in range(hs[i2].n):
                        alpha = hdist[i1][0][j1] + hdist[i2][0][j2]
                        beta = hdist[i1][j1][j2] if i1 == i2 else None
                        for r, u in enumerate(c1):
                            a = spec.index(i1, j1, r)
                            for c, v in enumerate(c2):
                                x = m[u][v] + alpha
                                if beta is not None and r == c:
                                    x += beta - alpha
                                out[a][spec.index(i2, j2, c)] = x
        return ExactMatrix._trusted(out, N)

    if isinstance(kind, GeneralizedDistance):
        f = kind.f
        classes_t = distance_class_matrices(base)
        for i1, c1 in enumerate(classes):
            for i2, c2 in enumerate(classes):
                for j1 in range(hs[i1].n):
                    for j2 in range(hs[i2].n):
                        alpha = hdist[i1][0][j1] + hdist[i2][0][j2]
                        same = i1 == i2
                        for r, u in enumerate(c1):
                            a = spec.index(i1, j1, r)
                            for c, v in enumerate(c2):
                                x: Scalar = 0
                                for t, at in enumerate(classes_t):
                                    if same and t == 0:
                                        continue
                                    if at[u, v]:
                                        x += f(t + alpha) * at[u, v]
                                if same and r == c:
                                    x += f(hdist[i1][j1][j2])
                                out[a][spec.index(i2, j2, c)] = exact(x)
        return ExactMatrix._trusted(out, N)

    raise TypeError(f"unknown matrix kind {kind!r}")
