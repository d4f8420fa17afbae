import networkx as nx
import numpy as np
import pytest

from apsp_approx.errors import BlobFormatError, ContractError, GraphFormatError
from apsp_approx.graph import (
    INF,
    Contract,
    EstimateMatrix,
    Graph,
    bfs,
    degree_filtered_subgraph,
    dijkstra,
    exact_apsp,
    format_graph,
    gen_gnp,
    load_graph,
    nearest_pivots,
    read_matrix,
    saturating_add,
    write_graph,
    write_matrix,
)

from .conftest import complete_graph, cycle_graph, path_graph, reference_apsp, star_graph, to_networkx


def test_duplicate_edges_collapse_to_min_weight():
    g = Graph.from_edges(3, [(0, 1, 5), (1, 0, 2), (1, 2, 4), (2, 2, 9)])
    assert g.m == 2
    assert g.weight(0, 1) == 2
    assert g.weight(1, 0) == 2
    assert g.weight(0, 2) is None


def test_adjacency_rows_sorted_by_neighbor():
    g = Graph.from_edges(4, [(3, 0, 2), (0, 2, 5), (1, 0, 1), (2, 3, 0)])
    assert g.adjacency[0] == ((1, 1), (2, 5), (3, 2))
    assert g.neighbors(2) == ((0, 5), (3, 0))
    assert g.weight(0, 3) == 2
    assert g.weight(1, 2) is None


def test_negative_weight_rejected():
    with pytest.raises(ContractError):
        Graph.from_edges(2, [(0, 1, -1)])


def test_load_graph_defaults_weight_and_skips_blank_lines(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("4 3\n0 1\n\n1 2 7\n2 3\n")
    g = load_graph(path)
    assert (g.n, g.m) == (4, 3)
    assert g.weight(1, 2) == 7
    assert g.weight(2, 3) == 1


def test_load_graph_reports_line_of_negative_weight(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1 1\n1 2 -3\n")
    with pytest.raises(GraphFormatError, match="line 3: negative weight"):
        load_graph(path)


def test_load_graph_edge_count_mismatch(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("3 2\n0 1 1\n")
    with pytest.raises(GraphFormatError):
        load_graph(path)


def test_write_then_load_keeps_edges(tmp_path):
    g = gen_gnp(30, 0.2, 9, seed=11)
    path = tmp_path / "g.txt"
    write_graph(g, path)
    assert load_graph(path).edges == g.edges


def test_gen_is_deterministic():
    assert format_graph(gen_gnp(50, 0.2, 100, seed=7)) == format_graph(gen_gnp(50, 0.2, 100, seed=7))
    assert format_graph(gen_gnp(50, 0.2, 100, seed=7)) != format_graph(gen_gnp(50, 0.2, 100, seed=8))


def test_gen_empty_graph():
    g = gen_gnp(10, 0.0, 1, seed=1)
    assert format_graph(g) == "10 0\n"


def test_gen_weights_in_range():
    g = gen_gnp(40, 0.3, 5, seed=2)
    assert all(1 <= w <= 5 for _, _, w in g.edges)


def test_dijkstra_path():
    g = path_graph(5, w=3)
    assert dijkstra(g, 0).dist == (0, 3, 6, 9, 12)


def test_dijkstra_unreachable_is_inf():
    g = Graph.from_edges(3, [(0, 1, 1)])
    assert dijkstra(g, 0)[2] == INF


def test_bfs_matches_dijkstra_on_unweighted(small_unweighted):
    for s in (0, 17, 42):
        assert bfs(small_unweighted, s).dist == dijkstra(small_unweighted, s).dist


def test_bfs_rejects_weighted():
    with pytest.raises(ContractError):
        bfs(Graph.from_edges(2, [(0, 1, 2)]), 0)


def test_exact_apsp_matches_networkx(small_weighted):
    exact = exact_apsp(small_weighted)
    assert np.array_equal(exact.entries, reference_apsp(small_weighted))
    assert exact.is_symmetric()


def test_nearest_pivots_prefers_smallest_id():
    # 0 -- 1 -- 2: vertex 1 is equidistant from pivots 0 and 2
    g = path_graph(3)
    dist, pivot = nearest_pivots(g, [2, 0])
    assert dist == [0, 1, 0]
    assert pivot == [0, 0, 2]


def test_nearest_pivots_keeps_members_across_zero_weight_edges():
    g = Graph.from_edges(4, [(0, 1, 0), (1, 2, 0), (2, 3, 5)])
    dist, pivot = nearest_pivots(g, [0, 1])
    assert dist == [0, 0, 0, 5]
    assert pivot == [0, 1, 1, 1]


def test_degree_filter_keeps_edges_with_light_endpoint():
    star = Graph.from_edges(5, [(0, i, 1) for i in range(1, 5)] + [(1, 2, 1)])
    h = degree_filtered_subgraph(star, 1)
    assert {(u, v) for u, v, _ in h.edges} == {(0, 3), (0, 4)}


def test_saturating_add_absorbs_inf():
    out = saturating_add(np.array([1, INF, 5]), np.array([2, 3, INF]))
    assert out.tolist() == [3, INF, INF]


def test_contract_bound():
    c = Contract.of("3/2", 2)
    assert c.bound(4) == 8
    assert str(c) == "(3/2, 2)"


@pytest.mark.parametrize("fmt", ["bin", "text"])
def test_matrix_codecs(tmp_path, fmt):
    entries = np.array([[0, 4, INF], [4, 0, 2], [INF, 2, 0]], dtype=np.int64)
    path = tmp_path / f"m.{fmt}"
    write_matrix(EstimateMatrix(entries), path, fmt)
    assert np.array_equal(read_matrix(path).entries, entries)


def test_binary_matrix_header(tmp_path):
    path = tmp_path / "m.bin"
    write_matrix(EstimateMatrix.unreachable(2), path)
    data = path.read_bytes()
    assert data[:8] == b"APSPESTM"
    assert len(data) == 16 + 4 * 8


def test_truncated_binary_matrix(tmp_path):
    path = tmp_path / "m.bin"
    write_matrix(EstimateMatrix.unreachable(3), path)
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(BlobFormatError):
        read_matrix(path)


def test_load_path_and_duplicate_examples(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("3 2\n0 1 5\n1 2 7\n")
    assert dijkstra(load_graph(path), 0).dist == (0, 5, 12)
    path.write_text("2 2\n0 1 3\n0 1 9\n")
    assert load_graph(path).edges == ((0, 1, 3),)


def test_gen_complete_graph():
    g = gen_gnp(4, 1.0, 1, seed=123)
    assert g.m == 6
    assert g.is_unweighted


def test_gen_edge_count_in_binomial_range():
    assert 150 <= gen_gnp(50, 0.2, 100, seed=7).m <= 340


def test_dijkstra_matches_bellman_ford():
    g = gen_gnp(30, 0.2, 50, seed=3)
    expected = nx.single_source_bellman_ford_path_length(to_networkx(g), 0)
    dist = dijkstra(g, 0)
    for v in range(g.n):
        assert dist[v] == expected.get(v, INF)


def test_bfs_cycle_and_star():
    assert bfs(cycle_graph(5), 0).dist == (0, 1, 2, 2, 1)
    assert bfs(star_graph(4), 0).dist == (0, 1, 1, 1, 1)


def test_exact_apsp_small_cases():
    assert exact_apsp(Graph.from_edges(2, [(0, 1, 3)])).entries.tolist() == [[0, 3], [3, 0]]
    triangle = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)])
    assert exact_apsp(triangle)[0, 2] == 2


def test_exact_apsp_matches_floyd_warshall():
    g = gen_gnp(100, 0.1, 100, seed=11)
    fw = nx.floyd_warshall_numpy(to_networkx(g), nodelist=range(g.n))
    exact = exact_apsp(g)
    for u, v in [(0, 1), (3, 97), (10, 20), (42, 7), (55, 56), (99, 0), (13, 31), (64, 8), (77, 77), (2, 50)]:
        assert exact[u, v] == int(fw[u, v])


def test_degree_filter_examples():
    assert degree_filtered_subgraph(star_graph(4), 1).m == 4
    assert degree_filtered_subgraph(complete_graph(4), 2).m == 0
    g = gen_gnp(30, 0.5, 1, seed=9)
    h = degree_filtered_subgraph(g, 10)
    kept = {(u, v) for u, v, _ in h.edges}
    for u, v, _ in g.edges:
        light = g.degrees[u] <= 10 or g.degrees[v] <= 10
        assert ((u, v) in kept) == light
