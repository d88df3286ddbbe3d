from __future__ import annotations

import io
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearbip import graph6
from nearbip.errors import CapacityError, Graph6Error
from nearbip.graph import Graph, complete_bipartite, k_plus
from nearbip.oracle import EnumerationSpec, enumerate_graphs

from conftest import random_graph, to_nx


def nx_encode(g: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_known_strings():
    triangle = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert graph6.encode(triangle) == "Bw"
    assert graph6.encode(path) == "Bg"
    assert graph6.encode(complete_bipartite(1, 2)) == "Bo"
    assert graph6.encode(Graph.empty(0)) == "?"
    assert graph6.encode(Graph.empty(1)) == "@"


def test_matches_networkx_on_atlas(atlas):
    for g in atlas:
        assert graph6.encode(g) == nx_encode(g)


@pytest.mark.parametrize("n", [62, 63, 64])
def test_long_size_field_matches_networkx(n):
    g = random_graph(random.Random(n), n, 0.3)
    text = graph6.encode(g)
    assert text == nx_encode(g)
    assert graph6.decode(text) == g
    assert text.startswith("~") == (n >= 63)


def test_roundtrip_all_classes_up_to_nine():
    total = 0
    for n in range(10):
        for g in enumerate_graphs(EnumerationSpec(n)):
            assert graph6.decode(graph6.encode(g)) == g
            total += 1
    assert total == 1 + 1 + 2 + 4 + 11 + 34 + 156 + 1044 + 12346 + 274668


@pytest.mark.parametrize("e, count", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 11), (5, 26)])
def test_roundtrip_ten_vertex_slices(e, count):
    # graphs with e <= 5 edges on 10 vertices, and their complements
    for edges in (e, 45 - e):
        graphs = list(enumerate_graphs(EnumerationSpec(10, edge_filter=edges)))
        assert len(graphs) == count
        for g in graphs:
            assert graph6.decode(graph6.encode(g)) == g


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 64).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**32))))
def test_roundtrip_random(args):
    n, seed = args
    g = random_graph(random.Random(seed), n, 0.4)
    assert graph6.decode(graph6.encode(g)) == g


def test_header_and_stream():
    g = k_plus(3, 4)
    assert graph6.decode(graph6.HEADER + graph6.encode(g)) == g
    buf = io.StringIO()
    assert graph6.write_lines([g, complete_bipartite(2, 3)], buf) == 2
    back = list(graph6.read_lines(io.StringIO(buf.getvalue() + "\n")))
    assert back == [g, complete_bipartite(2, 3)]


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("B w", 1),
        ("Bw?", 2),
        ("D", 1),
        ("Bx", 1),
        (">>graph6<<B!", 11),
        ("~?", 2),
    ],
)
def test_errors_carry_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        graph6.decode(text)
    assert info.value.offset == offset


def test_oversized_is_capacity_error():
    with pytest.raises(CapacityError):
        graph6.decode("~?@@" + "?" * 347)
