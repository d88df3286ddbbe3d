from __future__ import annotations

import random

import networkx as nx
import pytest

from nearbip.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(h.nodes())}
    return Graph.from_edges(h.number_of_nodes(), ((index[u], index[v]) for u, v in h.edges()))


def random_graph(rng: random.Random, n: int, density: float = 0.5) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density))


@pytest.fixture(scope="session")
def atlas() -> list[Graph]:
    """All 1253 graphs on 0..7 vertices, from networkx's independent atlas."""
    return [from_nx(h) for h in nx.graph_atlas_g()]
