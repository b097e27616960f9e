"""graph6 reader and writer.

Format summary: a size prefix (``chr(n + 63)`` for ``n <= 62``, otherwise
``~`` plus 18 bits or ``~~`` plus 36 bits), followed by the upper triangle
of the adjacency matrix read column by column (``x(0,1), x(0,2), x(1,2),
x(0,3), ...``), packed six bits per character, most significant bit first,
each character offset by 63 and the last one zero padded.

Hand-copied codes sometimes carry stray characters.  For instance a
10-vertex code is exactly 9 characters, so ``ItNPaGCI_!`` is rejected here
and ``ItNPaGCI_`` is the intended graph.
"""

from __future__ import annotations

import io
import os
from typing import BinaryIO, Iterable, Iterator, TextIO, Union

from .errors import MalformedGraph6
from .graphs import Graph

HEADER = ">>graph6<<"
MAX_N = 68719476735


def _size_bytes(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63] + [(n >> s) & 63 for s in (12, 6, 0)]
    if n <= MAX_N:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise ValueError(f"graph6 cannot encode {n} vertices")


def encode_graph6(g: Graph) -> str:
    """Minimal-length graph6 code of ``g`` without header."""
    out = _size_bytes(g.n)
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        col = adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc)
                acc = 0
                nbits = 0
    if nbits:
        out.append(acc << (6 - nbits))
    return "".join(chr(b + 63) for b in out)


def decode_graph6(s: Union[str, bytes], strict: bool = True) -> Graph:
    """Parse one graph6 code.

    With ``strict`` (the default) nonzero padding bits are an error; with
    ``strict=False`` they are ignored.  A leading ``>>graph6<<`` header and
    surrounding whitespace are tolerated.
    """
    if isinstance(s, bytes):
        try:
            s = s.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedGraph6("non-ASCII byte in graph6 code") from exc
    s = s.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise MalformedGraph6("empty graph6 code")
    data = []
    for ch in s:
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise MalformedGraph6(f"character {ch!r} outside the graph6 range 63..126")
        data.append(v)

    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise MalformedGraph6("truncated 36-bit size field")
        n = 0
        for v in data[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(data) < 4:
            raise MalformedGraph6("truncated 18-bit size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4

    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        raise MalformedGraph6(
            f"{n} vertices need {expected} body characters, found {len(body)}"
        )
    pad = expected * 6 - nbits
    if pad and strict and body[-1] & ((1 << pad) - 1):
        raise MalformedGraph6("nonzero padding bits")

    adj = [0] * n
    bit = 0
    i, j = 0, 1
    for v in body:
        for shift in range(5, -1, -1):
            if bit == nbits:
                break
            if v >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, tuple(adj))


def _lines(source) -> Iterable[Union[str, bytes]]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            yield from fh
    else:
        yield from source


def stream_graph6(
    source: Union[str, os.PathLike, BinaryIO, TextIO, Iterable],
    strict: bool = True,
    skip_malformed: bool = False,
) -> Iterator[Graph]:
    """Yield graphs from newline-delimited graph6 input in file order.

    ``source`` may be a path, a binary or text stream, or any iterable of
    lines.  Blank lines are skipped.  A malformed line raises
    :class:`MalformedGraph6` carrying its 1-based line number unless
    ``skip_malformed`` is set.
    """
    for lineno, code, g in iter_graph6_lines(source, strict=strict, skip_malformed=skip_malformed):
        yield g


def iter_graph6_lines(source, strict: bool = True, skip_malformed: bool = False):
    """Like :func:`stream_graph6` but yields ``(line_number, code, graph)``."""
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.decode("ascii", "replace") if isinstance(raw, bytes) else raw
        line = line.strip()
        if line.startswith(HEADER):
            line = line[len(HEADER):]
        if not line:
            continue
        try:
            g = decode_graph6(line, strict=strict)
        except MalformedGraph6 as exc:
            if skip_malformed:
                continue
            raise MalformedGraph6(str(exc), line=lineno) from None
        yield lineno, line, g


def write_graph6(graphs: Iterable[Graph], sink: Union[TextIO, io.StringIO]) -> int:
    count = 0
    for g in graphs:
        sink.write(encode_graph6(g) + "\n")
        count += 1
    return count
