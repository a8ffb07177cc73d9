import io
import subprocess
import sys

import pytest

from ogtc.cli import main

PATH_GRAPH = "p edge 3 2\ne 1 2\ne 2 3\nw 1 1\nw 2 5\nw 3 1\n"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def path_graph(tmp_path):
    p = tmp_path / "path.gr"
    p.write_text(PATH_GRAPH)
    return str(p)


class TestCrossover:
    def test_identical_parents(self, path_graph):
        code, out = run("crossover", "--in", path_graph, "--p1", "101", "--p2", "101")
        assert code == 0 and out.splitlines()[0] == "offspring: 101"

    @pytest.mark.parametrize("method", ["flow", "oracle", "hypergraph"])
    def test_methods_agree(self, path_graph, method):
        code, out = run("crossover", "--in", path_graph, "--p1", "101", "--p2", "010", "--method", method)
        assert code == 0
        assert "offspring: 010" in out and "value: 5" in out

    def test_trace_printed(self, path_graph):
        _, out = run("crossover", "--in", path_graph, "--p1", "101", "--p2", "010")
        assert out.splitlines()[2] == "trace: graph:mwis > flow:bipartite_mwis"

    def test_infeasible_parent_exit_code(self, path_graph, capsys):
        code, _ = run("crossover", "--in", path_graph, "--p1", "110", "--p2", "010")
        assert code == 2 and "infeasible" in capsys.readouterr().err

    def test_wrong_length(self, path_graph, capsys):
        code, _ = run("crossover", "--in", path_graph, "--p1", "10", "--p2", "010")
        assert code == 1 and "length" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"c": [1], "rows": [{"coeffs": [[0, 1]], "b": 1, "sense": "lt"}]}')
        code, _ = run("crossover", "--in", str(bad), "--p1", "0", "--p2", "1")
        assert code == 1 and '"lt"' in capsys.readouterr().err

    def test_missing_file(self, capsys):
        code, _ = run("verify", "--in", "/nonexistent/x.json", "--x", "1")
        assert code == 1 and "cannot read" in capsys.readouterr().err

    def test_orlib_cover(self, tmp_path):
        f = tmp_path / "scp.txt"
        f.write_text("2 2\n3 2\n2\n1 2\n1\n2\n")
        code, out = run("crossover", "--problem", "set-cover", "--in", str(f), "--p1", "11", "--p2", "01")
        assert code == 0 and "offspring: 01" in out and "value: 2" in out


class TestVerify:
    def test_report(self, path_graph):
        code, out = run("verify", "--in", path_graph, "--x", "010")
        assert code == 0 and out == "feasible: yes\nvalue: 5\n"

    def test_violations_listed(self, tmp_path):
        f = tmp_path / "i.json"
        f.write_text('{"sense": "max", "c": [1, 1], "rows": [{"coeffs": [[0, 1], [1, 1]], "b": 1, "sense": "le"}]}')
        _, out = run("verify", "--in", str(f), "--x", "11")
        assert "feasible: no" in out and "violated rows: 0" in out


class TestGa:
    def test_zero_generations(self, path_graph):
        code, out = run("ga", "--in", path_graph, "--gens", "0", "--pop", "4", "--seed", "1")
        rows = out.splitlines()
        assert code == 0 and rows[0] == "generation,best,mean" and len(rows) == 2
        assert rows[1].startswith("0,5,")

    def test_csv_file(self, path_graph, tmp_path):
        csv_path = tmp_path / "run.csv"
        code, out = run("ga", "--in", path_graph, "--gens", "3", "--pop", "4", "--csv", str(csv_path))
        assert code == 0 and "best: 5" in out
        assert len(csv_path.read_text().splitlines()) == 5

    def test_bad_population(self, path_graph):
        assert run("ga", "--in", path_graph, "--pop", "1")[0] == 1


class TestGen:
    def test_writes_instance_and_parents(self, tmp_path):
        target = tmp_path / "g.gr"
        code, out = run("gen", "--family", "random-graph", "--params", "n=12", "p=0.3", "--seed", "4", "--out", str(target))
        lines = out.splitlines()
        assert code == 0 and lines[0] == "problem: mwis"
        p1, p2 = lines[1].split()[1], lines[2].split()[1]
        code, _ = run("crossover", "--in", str(target), "--p1", p1, "--p2", p2)
        assert code == 0

    def test_bad_params(self, tmp_path, capsys):
        code, _ = run("gen", "--family", "random-graph", "--params", "n", "--out", str(tmp_path / "g.gr"))
        assert code == 1


def test_selftest_small():
    code, out = run("selftest", "--scale", "small")
    assert code == 0 and out.splitlines()[-1].endswith(" 0 failed")


def test_ga_compare_report():
    code, out = run("ga-compare", "--instances", "3", "--gens", "3", "--pop", "6")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "instance,seed,optimized_best,uniform_best,evaluations"
    assert len(rows) == 4 and all(r.split(",")[4] == "24" for r in rows[1:])


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["crossover"])
    assert err.value.code == 1


def test_help_documents_csv(capsys):
    with pytest.raises(SystemExit):
        main(["ga", "--help"])
    assert "generation,best,mean" in capsys.readouterr().out


class TestDeterminism:
    def _twice(self, *argv):
        return [subprocess.run([sys.executable, "-m", "ogtc.cli", *argv], capture_output=True, check=True).stdout
                for _ in range(2)]

    def test_gen_and_ga(self, tmp_path):
        out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
        run("gen", "--family", "random-packing", "--seed", "3", "--out", str(out_a))
        run("gen", "--family", "random-packing", "--seed", "3", "--out", str(out_b))
        assert out_a.read_bytes() == out_b.read_bytes()
        a, b = self._twice("ga", "--problem", "packing", "--in", str(out_a), "--crossover", "uniform",
                           "--mutation", "0.05", "--seed", "2", "--gens", "4")
        assert a == b and a

    def test_ga_compare_and_selftest(self):
        a, b = self._twice("ga-compare", "--instances", "2", "--gens", "2")
        assert a == b
        a, b = self._twice("selftest")
        assert a == b
