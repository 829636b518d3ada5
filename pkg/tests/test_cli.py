import io
import json

import pytest

from mdim.cli import CliError, format_edge_list, parse_edge_list, run
from mdim.graph import build_graph

from helpers import bowtie, cycle_graph, path_graph


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="graph.txt"):
        p = tmp_path / name
        p.write_text(format_edge_list(g))
        return str(p)

    return write


def test_parse_edge_list_roundtrip():
    g = bowtie()
    assert list(parse_edge_list(format_edge_list(g)).edges()) == list(g.edges())


def test_parse_edge_list_accepts_comments_and_blanks():
    g = parse_edge_list("# hello\nn 3\n\n0 1  # inline\n1 2\n")
    assert g.n == 3 and g.edge_count == 2


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("0 1\n", ":1: expected header"),
        ("n x\n", "not an integer"),
        ("n 3\n0 1 2\n", ":2: expected 'u v'"),
        ("n 3\n0 q\n", "bad vertex token 'q'"),
        ("", "missing 'n <count>' header"),
        ("n 2\n0 5\n", "outside 0..1"),
    ],
)
def test_parse_edge_list_errors(text, fragment):
    with pytest.raises(CliError, match=fragment):
        parse_edge_list(text)


def test_solve_command_plain(graph_file, capsys):
    rc = run(["solve", graph_file(bowtie())])
    out = capsys.readouterr().out
    assert rc == 0
    assert "metric dimension: 2" in out
    assert "resolving set: 0 3" in out
    assert "mode: exact" in out


def test_solve_command_json(graph_file, capsys):
    path = graph_file(bowtie())
    rc = run(["solve", "--json", path])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n"] == 5
    assert report["m"] == 6
    assert report["dimension"] == 2
    assert report["resolving_set"] == [0, 3]
    assert report["mode"] == "exact"
    assert report["bound"] is None
    assert report["per_ebc_counts"] == {"0": 1, "1": 1}
    assert isinstance(report["duration_ms"], float)

    # determinism, apart from the timer
    run(["solve", "--json", path])
    second = json.loads(capsys.readouterr().out)
    report.pop("duration_ms"), second.pop("duration_ms")
    assert report == second


def test_solve_command_bounded_and_infeasible(graph_file, capsys):
    clique_with_tail = build_graph(
        6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (3, 5)]
    )
    path = graph_file(clique_with_tail)
    rc = run(["solve", "--k", "2", path])
    captured = capsys.readouterr()
    assert rc == 0
    assert "per-component cap: 2" in captured.out

    rc = run(["solve", "--k", "1", path])
    captured = capsys.readouterr()
    assert rc == 2
    assert "infeasible" in captured.err


def test_solve_command_brute(graph_file, capsys):
    rc = run(["solve", "--brute", graph_file(cycle_graph(6))])
    out = capsys.readouterr().out
    assert rc == 0
    assert "metric dimension: 2" in out
    assert "mode: brute_fallback" in out


def test_solve_command_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(format_edge_list(path_graph(5))))
    rc = run(["solve", "-"])
    assert rc == 0
    assert "metric dimension: 1" in capsys.readouterr().out


def test_check_command(graph_file, capsys):
    path = graph_file(cycle_graph(6))
    rc = run(["check", path, "--set", "0,1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "resolving: 2 landmarks" in out
    assert "gate at 0" in out and "gate at 1" in out

    rc = run(["check", path, "--set", "0 3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "not resolving: vertices 1 and 5 are indistinguishable" in out

    rc = run(["check", path, "--set", "0,99"])
    assert rc == 1
    assert "out of range" in capsys.readouterr().err


def test_decompose_command_json(graph_file, capsys):
    rc = run(["decompose", graph_file(bowtie())])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert [c["kind"] for c in payload["components"]] == ["ebc", "ebc"]
    assert payload["amalgamation_vertices"] == [2]


def test_decompose_command_dot(graph_file, capsys, tmp_path):
    path = graph_file(bowtie())
    rc = run(["decompose", "--format", "dot", path])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("graph ")

    target = tmp_path / "tree.dot"
    rc = run(["decompose", "--format", "dot", "--rooted", "-o", str(target), path])
    assert rc == 0
    assert target.read_text().startswith("digraph ")

    # a cycle has no cut structure to root
    rc = run(["decompose", "--format", "dot", "--rooted", graph_file(cycle_graph(5), "c5.txt")])
    assert rc == 1
    assert "no rooted tree" in capsys.readouterr().err


def test_bound_command(graph_file, capsys):
    rc = run(["bound", graph_file(cycle_graph(6))])
    out = capsys.readouterr().out
    assert rc == 0
    assert "smallest per-component cap: 2" in out

    rc = run(["bound", "--json", graph_file(bowtie())])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["smallest_bound"] == 1


def test_gen_gadget_command(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 1\n1 -2 3 0\n")
    out_graph = tmp_path / "g.txt"
    labels = tmp_path / "labels.json"
    rc = run(["gen-gadget", str(cnf), "-o", str(out_graph), "--labels", str(labels)])
    assert rc == 0
    g = parse_edge_list(out_graph.read_text())
    assert g.n == 35 and g.edge_count == 43
    mapping = json.loads(labels.read_text())
    assert len(mapping) == 35
    assert "T1" in mapping and "c1^5" in mapping

    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 1\n1 2 0\n")
    rc = run(["gen-gadget", str(bad)])
    assert rc == 1
    assert "three distinct variables" in capsys.readouterr().err


def test_gen_random_command(tmp_path, capsys):
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    rc = run(["gen-random", "--n", "8", "--m", "10", "--seed", "5", "-o", str(out1)])
    assert rc == 0
    rc = run(["gen-random", "--n", "8", "--m", "10", "--seed", "5", "-o", str(out2)])
    assert rc == 0
    assert out1.read_text() == out2.read_text()
    g = parse_edge_list(out1.read_text())
    assert g.n == 8 and g.edge_count == 10

    rc = run(["gen-random", "--n", "4", "--m", "2"])
    assert rc == 1
    assert "cannot connect" in capsys.readouterr().err

    rc = run(["gen-random", "--n", "4", "--m", "9"])
    assert rc == 1
    assert "exceed" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    assert run(["solve"]) == 1  # missing positional
    capsys.readouterr()
    assert run(["no-such-command"]) == 1
    capsys.readouterr()
    assert run(["solve", "/nonexistent/file.txt"]) == 1
    assert "cannot read" in capsys.readouterr().err
