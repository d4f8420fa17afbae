"""Shared fixtures: seeded graphs and a networkx reference for exact distances."""

from typing import Iterable, Tuple

import networkx as nx
import numpy as np
import pytest

from apsp_approx.config import reset_config
from apsp_approx.graph import INF, Graph, gen_gnp


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test starts from the default environment"""
    for name in (
        "APSP_THREADS",
        "APSP_LOG_LEVEL",
        "APSP_BUNCH_CONST",
        "APSP_PIVOT_CONST",
        "APSP_HIT_CONST",
        "APSP_MAX_RETRIES",
    ):
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_weighted_edges_from(g.edges)
    return h


def reference_apsp(g: Graph) -> np.ndarray:
    """Exact distances from networkx, INF where unreachable"""
    out = np.full((g.n, g.n), INF, dtype=np.int64)
    for u, lengths in nx.all_pairs_dijkstra_path_length(to_networkx(g)):
        for v, d in lengths.items():
            out[u, v] = d
    return out


def path_graph(n: int, w: int = 1) -> Graph:
    return Graph.from_edges(n, [(i, i + 1, w) for i in range(n - 1)])


def edges_of(h: nx.Graph, weight: int = 1) -> Iterable[Tuple[int, int, int]]:
    return [(u, v, weight) for u, v in h.edges()]


@pytest.fixture
def small_weighted() -> Graph:
    return gen_gnp(60, 0.1, 20, seed=3)


@pytest.fixture
def small_unweighted() -> Graph:
    return gen_gnp(80, 0.08, 1, seed=5)


@pytest.fixture
def grid() -> Graph:
    h = nx.convert_node_labels_to_integers(nx.grid_2d_graph(8, 8), ordering="sorted")
    return Graph.from_edges(h.number_of_nodes(), edges_of(h))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n, 1) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v, 1) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i, 1) for i in range(1, leaves + 1)])


def with_zero_weights(g: Graph, every: int = 3) -> Graph:
    """Same edges, every `every`-th one reweighted to 0"""
    return Graph.from_edges(g.n, [(u, v, 0 if i % every == 0 else w) for i, (u, v, w) in enumerate(g.edges)])


def assert_contract(g: Graph, estimate, mult, add=0):
    """Every pair satisfies d <= estimate <= mult * d + add"""
    from apsp_approx.graph import exact_apsp
    from apsp_approx.verify import audit_stretch

    audit = audit_stretch(exact_apsp(g), estimate, mult, add)
    assert audit.violations == 0, audit.first_violation
    return audit
