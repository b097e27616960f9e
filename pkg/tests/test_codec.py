from __future__ import annotations

import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cospec import catalog
from cospec.codec import decode_graph6, encode_graph6, iter_graph6_lines, stream_graph6, write_graph6
from cospec.errors import MalformedGraph6
from cospec.graphs import Graph


def reference_encode(n, edges):
    """Straight transcription of the format: size byte, then bits x(i,j) for
    i < j in column order, padded to a multiple of six."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    bits = [1 if (i, j) in es else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    if n <= 62:
        head = [n]
    else:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(63 + x) for x in head + body)


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_known_codes():
    assert decode_graph6("@") == Graph.empty(1)
    assert decode_graph6("A_") == Graph.complete(2)
    assert decode_graph6("Bw") == Graph.complete(3)
    assert encode_graph6(Graph.empty(0)) == "?"
    g = decode_graph6("DQc")
    assert sorted(g.edges()) == [(0, 2), (0, 4), (1, 3), (3, 4)]


def test_large_size_prefix():
    g = Graph.empty(63)
    code = encode_graph6(g)
    assert code.startswith("~??~")
    assert len(code) == 4 + (63 * 62 // 2 + 5) // 6
    assert decode_graph6(code) == g


def test_round_trip_1000_random_graphs():
    rng = random.Random(2024)
    for _ in range(1000):
        n = rng.randint(0, 20)
        g = random_graph(rng, n, rng.random())
        code = encode_graph6(g)
        assert code == reference_encode(n, g.edges())
        assert decode_graph6(code) == g


@pytest.mark.parametrize("n", [61, 62, 63, 64, 100, 300])
def test_round_trip_across_size_boundary(n):
    rng = random.Random(n)
    g = random_graph(rng, n, 0.05)
    assert decode_graph6(encode_graph6(g)) == g
    assert encode_graph6(g) == reference_encode(n, g.edges())


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
))
def test_round_trip_hypothesis(data):
    n, bits = data
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    g = Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])
    assert decode_graph6(encode_graph6(g)) == g


def test_stray_character_rejected():
    with pytest.raises(MalformedGraph6):
        decode_graph6(catalog.TEN_PRINTED_CODE)
    assert decode_graph6(catalog.TEN_PRINTED_CODE[:-1]).n == 10


@pytest.mark.parametrize("bad", ["", "A", "A__", "~?", "Bx", "\x7f"])
def test_malformed_codes(bad):
    with pytest.raises(MalformedGraph6):
        decode_graph6(bad)


def test_nonzero_padding():
    # K2 is "A_"; "A`" sets a padding bit
    with pytest.raises(MalformedGraph6):
        decode_graph6("A`")
    assert decode_graph6("A`", strict=False) == Graph.complete(2)


def test_header_and_whitespace_tolerated():
    assert decode_graph6(">>graph6<<Bw\n") == Graph.complete(3)
    assert decode_graph6(b"Bw") == Graph.complete(3)


def test_stream_seven_vertex_list():
    codes = [c for pair in catalog.SEVEN_PAIRS for c in pair]
    text = "\n".join(codes) + "\n\n"
    graphs = list(stream_graph6(io.StringIO(text)))
    assert len(graphs) == 22
    assert all(g.n == 7 and g.is_connected() for g in graphs)
    assert [encode_graph6(g) for g in graphs] == codes


def test_stream_reports_line_numbers(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("@\nBw\nItNPaGCI_!\nA_\n")
    with pytest.raises(MalformedGraph6) as info:
        list(stream_graph6(path))
    assert info.value.line == 3
    kept = list(iter_graph6_lines(str(path), skip_malformed=True))
    assert [ln for ln, _, _ in kept] == [1, 2, 4]


def test_write_then_stream(tmp_path):
    rng = random.Random(1)
    graphs = [random_graph(rng, rng.randint(1, 9), 0.5) for _ in range(50)]
    buf = io.StringIO()
    assert write_graph6(graphs, buf) == 50
    buf.seek(0)
    assert list(stream_graph6(buf)) == graphs
