import numpy as np
import pytest

from apsp_approx.cli import build_parser, main
from apsp_approx.graph import exact_apsp, load_graph, read_matrix, write_graph, write_matrix
from apsp_approx.harness import ApspHarness
from apsp_approx.models import RunReport


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def unweighted_file(tmp_path, small_unweighted):
    path = tmp_path / "g.txt"
    write_graph(small_unweighted, path)
    return path


@pytest.fixture
def weighted_file(tmp_path, small_weighted):
    path = tmp_path / "w.txt"
    write_graph(small_weighted, path)
    return path


def test_every_command_has_a_subcommand():
    harness = ApspHarness()
    parser = build_parser(harness.get_commands())
    names = {c.name for c in harness.get_commands()}
    assert names == {"gen_graph", "apsp_run", "oracle_build", "oracle_query", "verify_stretch", "bench_oracles"}
    assert parser.parse_args(["oracle", "query", "o.bin", "1", "2"]).command_name == "oracle_query"


def test_gen_writes_header(tmp_path, capsys):
    path = tmp_path / "g.txt"
    code, out = run(capsys, "gen", "-n", 100, "-p", 0.2, "-w", 50, "-s", 7, "-o", path)
    assert code == 0
    assert path.read_text().splitlines()[0].split()[0] == "100"
    assert "status=success" in out.splitlines()


def test_gen_empty_graph(tmp_path, capsys):
    path = tmp_path / "e.txt"
    run(capsys, "gen", "-n", 10, "-p", 0, "-w", 1, "-s", 1, "-o", path)
    assert path.read_text() == "10 0\n"


def test_gen_is_byte_identical(tmp_path, capsys):
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "gen", "-n", 50, "-p", 0.2, "-w", 100, "-s", 7, "-o", first)
    run(capsys, "gen", "-n", 50, "-p", 0.2, "-w", 100, "-s", 7, "-o", second)
    assert first.read_bytes() == second.read_bytes()


def test_gen_to_stdout(capsys):
    code, out = run(capsys, "gen", "-n", 3, "-p", 1, "-s", 0)
    assert code == 0
    assert out.splitlines()[0] == "3 3"


def test_bad_flag_is_usage_error(capsys):
    assert main(["gen", "-n", "many", "-p", "0.1"]) == 2
    assert main(["gen", "-n", "0", "-p", "0.1"]) == 2
    assert main(["apsp", "--algo", "nope", "g.txt"]) == 2


def test_missing_graph_file_fails(tmp_path, capsys):
    assert main(["apsp", "--algo", "exact", str(tmp_path / "missing.txt")]) == 1


def test_apsp_exact(tmp_path, capsys, weighted_file):
    out_path = tmp_path / "d.bin"
    code, out = run(capsys, "apsp", "--algo", "exact", weighted_file, "-o", out_path)
    assert code == 0
    assert np.array_equal(read_matrix(out_path).entries, exact_apsp(load_graph(weighted_file)).entries)
    report = RunReport.from_record(out)
    assert report.algorithm == "exact"
    assert report.output == str(out_path)


def test_combinatorial_run_then_verify(tmp_path, capsys, unweighted_file):
    exact_path, estimate_path = tmp_path / "d.bin", tmp_path / "e.bin"
    run(capsys, "apsp", "--algo", "exact", unweighted_file, "-o", exact_path)
    code, _ = run(capsys, "apsp", "--algo", "two-approx-comb", unweighted_file, "-o", estimate_path)
    assert code == 0
    code, out = run(capsys, "verify", exact_path, estimate_path, "--mult", 2)
    assert code == 0
    assert "audit.violations=0" in out.splitlines()


def test_bk_audit_passes(capsys, weighted_file):
    code, out = run(capsys, "apsp", "--algo", "bk", "--r", 0.5, "--eps", 0, "--audit", weighted_file)
    assert code == 0
    report = RunReport.from_record(out)
    assert report.contract == "(2, 0)"
    assert report.audit.passed


@pytest.mark.parametrize(
    "algo,extra",
    [
        ("two-approx", []),
        ("near-additive", ["--k", "2", "--eps", "1/10"]),
        ("additive", ["--k", "4"]),
    ],
)
def test_unweighted_algorithms_audit(capsys, unweighted_file, algo, extra):
    code, out = run(capsys, "apsp", "--algo", algo, *extra, "--audit", unweighted_file)
    assert code == 0, out
    assert "audit.violations=0" in out.splitlines()


def test_dense_weighted_text_output(tmp_path, capsys, weighted_file):
    out_path = tmp_path / "e.txt"
    code, _ = run(capsys, "apsp", "--algo", "dense-weighted", "--eps", "0.25", weighted_file, "-o", out_path, "--format", "text")
    assert code == 0
    assert read_matrix(out_path).n == load_graph(weighted_file).n


def test_odd_k_is_usage_error(capsys, unweighted_file):
    assert main(["apsp", "--algo", "additive", "--k", "3", str(unweighted_file)]) == 2


def test_verify_fault_injection(tmp_path, capsys, small_weighted):
    exact = exact_apsp(small_weighted)
    faulty = exact.entries.copy()
    faulty[0, 5] -= 1
    exact_path, faulty_path = tmp_path / "d.bin", tmp_path / "f.bin"
    write_matrix(exact, exact_path)
    from apsp_approx.graph import EstimateMatrix

    write_matrix(EstimateMatrix(faulty), faulty_path)
    code, out = run(capsys, "verify", exact_path, faulty_path)
    assert code == 1
    assert "audit.violations=1" in out.splitlines()
    assert "status=violation" in out.splitlines()


def test_verify_size_mismatch(tmp_path, capsys):
    from apsp_approx.graph import EstimateMatrix

    a, b = tmp_path / "a.bin", tmp_path / "b.bin"
    write_matrix(EstimateMatrix.unreachable(3), a)
    write_matrix(EstimateMatrix.unreachable(4), b)
    assert main(["verify", str(a), str(b)]) == 1


def test_oracle_build_and_query(tmp_path, capsys, weighted_file):
    blob = tmp_path / "o.orc"
    code, out = run(capsys, "oracle", "build", weighted_file, "-o", blob, "--kind", "two", "--seed", 4)
    assert code == 0
    assert RunReport.from_record(out).sizes["blob_bytes"] == blob.stat().st_size

    code, out = run(capsys, "oracle", "query", blob, 3, 3)
    assert code == 0
    assert out.splitlines()[0] == "0"

    g = load_graph(weighted_file)
    exact = exact_apsp(g)
    u, v = g.edges[0][:2]
    code, out = run(capsys, "oracle", "query", blob, u, v)
    lines = out.splitlines()
    assert exact[u, v] <= int(lines[0]) <= 2 * exact[u, v]
    assert "probes=7" in lines
    assert any(line.startswith("candidates.adjacent=") for line in lines)


def test_oracle_build_two_w_reports_edge_term(tmp_path, capsys, weighted_file):
    code, out = run(capsys, "oracle", "build", weighted_file, "-o", tmp_path / "o.orc", "--kind", "two-w")
    assert code == 0
    assert RunReport.from_record(out).contract == "(2, W_uv)"


def test_oracle_query_out_of_range(tmp_path, capsys, weighted_file):
    blob = tmp_path / "o.orc"
    run(capsys, "oracle", "build", weighted_file, "-o", blob, "--kind", "two-w")
    assert main(["oracle", "query", str(blob), "0", "100000"]) == 2


def test_bench_reports_sizes(capsys):
    code, out = run(capsys, "bench", "--sizes", "40,60", "--wmax", 10)
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("sizes.oracle2.n40.words=") for line in lines)
    assert any(line.startswith("phases.oracle2w.n60=") for line in lines)
