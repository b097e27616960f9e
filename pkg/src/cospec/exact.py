"""Exact dense linear algebra over the integers and rationals.

Entries are Python ``int`` or :class:`fractions.Fraction`; a Fraction with
denominator one is always stored as an ``int`` so integer matrices stay on
the fast path.  Nothing in here ever rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import ShapeError

Scalar = Union[int, Fraction]


def exact(x) -> Scalar:
    """Coerce ``x`` to an exact scalar (int or Fraction)."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return exact(Fraction(x.strip()))
    if isinstance(x, float) and math.isinf(x):
        # unreachable-pair marker of a distance matrix
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _denominator(x: Scalar) -> int:
    return x.denominator if isinstance(x, Fraction) else 1


class ExactMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("_data", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        data = tuple(tuple(exact(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ShapeError("ragged rows")
        self._data = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def _trusted(cls, data: Sequence[Sequence[Scalar]], ncols: int | None = None) -> ExactMatrix:
        m = object.__new__(cls)
        m._data = tuple(tuple(r) for r in data)
        m.nrows = len(m._data)
        m.ncols = ncols if ncols is not None else (len(m._data[0]) if m._data else 0)
        return m

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls._trusted([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> ExactMatrix:
        ncols = nrows if ncols is None else ncols
        return cls._trusted([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def ones(cls, nrows: int, ncols: int | None = None) -> ExactMatrix:
        ncols = nrows if ncols is None else ncols
        return cls._trusted([[1] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def column(cls, values: Iterable) -> ExactMatrix:
        return cls([[v] for v in values], 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def __iter__(self):
        return iter(self._data)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in r] for r in self._data]})"

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self._data]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def _check_same_shape(self, other: ExactMatrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix._trusted(
            [[exact(a + b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.ncols,
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix._trusted(
            [[exact(a - b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.ncols,
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._trusted([[-a for a in r] for r in self._data], self.ncols)

    def scale(self, c) -> ExactMatrix:
        c = exact(c)
        return ExactMatrix._trusted([[exact(c * a) for a in r] for r in self._data], self.ncols)

    def __mul__(self, c) -> ExactMatrix:
        if isinstance(c, ExactMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._data)) if other.nrows else [()] * other.ncols
        out = []
        for r in self._data:
            out.append([exact(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols])
        return ExactMatrix._trusted(out, other.ncols)

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix._trusted([[r[j] for r in self._data] for j in range(self.ncols)], self.nrows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._data for a in r)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self._data[i][j] == self._data[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for r in self._data for a in r)


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


class Polynomial:
    """Univariate polynomial with exact coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return exact(acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def to_json(self) -> list:
        return [c if isinstance(c, int) else str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _require_square(m: ExactMatrix) -> None:
    if not m.is_square:
        raise ShapeError(f"expected a square matrix, got {m.shape}")


def berkowitz(a: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Coefficients of det(xI - a), ascending, by Berkowitz's algorithm.

    Division free, so integer input gives integer output with no
    intermediate fractions.  ``a`` is a square list of rows.
    """
    n = len(a)
    poly: list[Scalar] = [1]  # descending, leading principal 0x0 block
    for k in range(n):
        row_k = a[k]
        t = [1, -row_k[k]]
        v = [a[i][k] for i in range(k)]
        for step in range(k):
            t.append(-sum(x * y for x, y in zip(row_k, v)))
            if step < k - 1:
                v = [sum(x * y for x, y in zip(a[i], v)) for i in range(k)]
        new = []
        for i in range(k + 2):
            lo = max(0, i - k - 1)
            hi = min(i, k)
            new.append(sum(t[i - j] * poly[j] for j in range(lo, hi + 1)))
        poly = new
    return poly[::-1]


def charpoly(m: ExactMatrix) -> Polynomial:
    """Characteristic polynomial det(xI - m)."""
    m = as_matrix(m)
    _require_square(m)
    return Polynomial(berkowitz(m._data))


def _integer_rows(data: Sequence[Sequence[Scalar]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns rows and the product of row scales."""
    rows = []
    scale = 1
    for r in data:
        d = reduce(_lcm, (_denominator(x) for x in r), 1)
        rows.append([int(x * d) for x in r])
        scale *= d
    return rows, scale


def bareiss_det(a: list[list[int]]) -> int:
    """Determinant of a square integer matrix (list of rows), fraction free."""
    n = len(a)
    if n == 0:
        return 1
    a = [r[:] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant(m: ExactMatrix) -> Scalar:
    """Exact determinant via Bareiss elimination."""
    m = as_matrix(m)
    _require_square(m)
    rows, scale = _integer_rows(m._data)
    return exact(Fraction(bareiss_det(rows), scale))


def rank(m: ExactMatrix) -> int:
    """Rank by fraction-free (Bareiss) row echelon reduction."""
    m = as_matrix(m)
    rows, _ = _integer_rows(m._data)
    nr, nc = m.nrows, m.ncols
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        pr = rows[r]
        for i in range(r + 1, nr):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, nc):
                ri[j] = (ri[j] * p - f * pr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def sparse_nullspace(rows: Iterable[dict[int, Scalar]], ncols: int) -> list[list[int]]:
    """Integer basis of the kernel of a sparse system.

    ``rows`` are ``{column: coefficient}`` dicts.  Elimination is fraction
    free with content removal after each step, so coefficients stay small.
    Each returned vector is primitive (gcd of entries is 1), nonzero at its
    own free column and zero at every other free column.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        d = reduce(_lcm, (_denominator(x) for x in raw.values()), 1)
        row = {k: int(v * d) for k, v in raw.items() if v != 0}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _primitive(row)
                break
            a, b = prow[c], row[c]
            merged = {k: v * a for k, v in row.items()}
            for k, v in prow.items():
                nv = merged.get(k, 0) - b * v
                if nv:
                    merged[k] = nv
                else:
                    merged.pop(k, None)
            row = _primitive(merged) if merged else merged

    # back substitution: clear every pivot column from the other pivot rows
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        a = prow[c]
        for c2, other in pivots.items():
            if c2 >= c or c not in other:
                continue
            b = other[c]
            merged = {k: v * a for k, v in other.items()}
            for k, v in prow.items():
                nv = merged.get(k, 0) - b * v
                if nv:
                    merged[k] = nv
                else:
                    merged.pop(k, None)
            pivots[c2] = _primitive(merged)

    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for c, prow in pivots.items():
            if f in prow:
                vec[c] = Fraction(-prow[f], prow[c])
        den = reduce(_lcm, (x.denominator for x in vec.values()), 1)
        ints = [0] * ncols
        for k, x in vec.items():
            ints[k] = int(x * den)
        g = reduce(math.gcd, ints, 0)
        basis.append([x // g for x in ints])
    return basis


def nullspace(m: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {x : m x = 0} as column vectors."""
    m = as_matrix(m)
    rows = ({j: x for j, x in enumerate(r) if x} for r in m._data)
    return [ExactMatrix.column(v) for v in sparse_nullspace(rows, m.ncols)]


def block_diag(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    """Assemble B1 (+) B2 (+) ... with zero off-diagonal blocks."""
    blocks = [as_matrix(b) for b in blocks]
    for b in blocks:
        _require_square(b)
    n = sum(b.nrows for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b._data):
            out[off + i][off : off + b.ncols] = r
        off += b.nrows
    return ExactMatrix._trusted(out, n)


def submatrix(m: ExactMatrix, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
    """M[rows, cols] with entries taken in the order given."""
    m = as_matrix(m)
    for i in rows:
        if not 0 <= i < m.nrows:
            raise IndexError(f"row index {i} out of range")
    for j in cols:
        if not 0 <= j < m.ncols:
            raise IndexError(f"column index {j} out of range")
    data = m._data
    return ExactMatrix._trusted([[data[i][j] for j in cols] for i in rows], len(cols))
