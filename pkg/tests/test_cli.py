import json

import pytest

from dcg.cli import main
from dcg.formats import parse_graph, serialize_graph
from graphs import G, G_CHAIN, G_COLLIDER, G_ME, G_VIRT, COMPLETE_DAG


@pytest.fixture
def write(tmp_path):
    def _write(g, name):
        path = tmp_path / name
        path.write_text(serialize_graph(g) if not isinstance(g, str) else g)
        return str(path)

    return _write


def test_check_equivalent(write, capsys):
    assert main(["check", write(G_VIRT, "a"), write(COMPLETE_DAG, "b")]) == 0
    assert capsys.readouterr().out == "equivalent\n"


def test_check_not_equivalent(write, capsys):
    assert main(["check", write(G_CHAIN, "a"), write(G_COLLIDER, "b")]) == 1
    out = capsys.readouterr().out
    assert "condition 2" in out
    assert "only in first: <A, B, C>" in out


def test_check_json(write, capsys):
    assert main(["check", "--json", write(G_CHAIN, "a"), write(G_COLLIDER, "b")]) == 1
    d = json.loads(capsys.readouterr().out)
    assert d["failing_condition"] == 2 and d["only_in_first"] == [["A", "B", "C"]]


def test_input_errors(write, tmp_path, capsys):
    bad = write("vertices: A\nedge: A -> A\n", "bad")
    assert main(["check", bad, write(G_CHAIN, "a")]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "nope"), bad]) == 2
    assert main(["check"]) == 2
    assert main(["bogus"]) == 2


def test_features(write, capsys):
    assert main(["features", write(G_VIRT, "g")]) == 0
    out = capsys.readouterr().out
    assert "  A - C  (virtual)" in out
    assert main(["features", "--json", write(G_ME, "g")]) == 0
    d = json.loads(capsys.readouterr().out)
    assert ["A", "B", "C", "B", "C", "D"] in d["me_conductors"]


def test_dsep(write, capsys):
    path = write(G_CHAIN, "g")
    assert main(["dsep", path, "--x", "A", "--y", "C", "--given", "B"]) == 0
    assert capsys.readouterr().out == "d-separated\n"
    assert main(["dsep", path, "--x", "A", "--y", "C", "--witness"]) == 0
    assert capsys.readouterr().out == "d-connected\nwitness: A -> B -> C\n"
    assert main(["dsep", path, "--x", "A", "--y", "A"]) == 2
    assert main(["dsep", path, "--x", "A", "--y", "Z"]) == 2


def test_dsep_all(write, capsys):
    assert main(["dsep-all", write(G_COLLIDER, "g")]) == 0
    assert capsys.readouterr().out == "A _||_ C | {}\n"
    big = G(" ".join("ABCDE"))
    assert main(["dsep-all", write(big, "big"), "--max-n", "4"]) == 2


def test_oracle_check(write, capsys):
    assert main(["oracle-check", write(G_VIRT, "a"), write(COMPLETE_DAG, "b")]) == 0
    assert main(["oracle-check", write(G_CHAIN, "a"), write(G_COLLIDER, "b")]) == 1
    assert main(["oracle-check", write(G_CHAIN, "a"), write(G("A B"), "b")]) == 1
    assert "vertex sets differ" in capsys.readouterr().out


def test_oracle_cap_env(write, monkeypatch):
    monkeypatch.setenv("DCG_MAX_ORACLE_N", "2")
    assert main(["oracle-check", write(G_CHAIN, "a"), write(G_CHAIN, "b")]) == 2


def test_acyclic_equiv(write, capsys):
    assert main(["acyclic-equiv", write(G_VIRT, "g")]) == 0
    assert main(["acyclic-equiv", write(G_ME, "g")]) == 1
    out = capsys.readouterr().out
    assert out == "acyclic equivalent exists\nno acyclic equivalent\n"


def test_gen(tmp_path, capsys):
    assert main(["gen", "--n", "5", "--p", "0.3", "--seed", "42"]) == 0
    first = capsys.readouterr().out
    out = tmp_path / "g.txt"
    assert main(["gen", "--n", "5", "--p", "0.3", "--seed", "42", "-o", str(out)]) == 0
    assert out.read_text() == first
    parse_graph(first)
    assert main(["gen", "--n", "4", "--p", "1", "--seed", "0", "--no-two-cycles"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert len(g.edges) == 6
    assert main(["gen", "--n", "0", "--p", "0.5", "--seed", "1"]) == 2


def test_corpus(capsys):
    assert main(["corpus", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "graphs=4 classes=2" in out and "partitions match: yes" in out
    assert main(["corpus", "--n", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["class_sizes"] == [3, 1]
    assert main(["corpus", "--n", "5"]) == 2


def test_export_dot(write, capsys):
    assert main(["export-dot", write(G_CHAIN, "g")]) == 0
    assert capsys.readouterr().out.splitlines()[-3:] == ['  "A" -> "B";', '  "B" -> "C";', "}"]
