import pytest

from synchro.automaton import format_automaton, parse_automaton
from synchro.cli import main
from synchro.families import cerny, nontransitive_example, random_agw_ham
from synchro.graphs import format_graph, parse_graph


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.aut"
    path.write_text(format_automaton(cerny(4)))
    return str(path)


@pytest.fixture
def ex1_file(tmp_path):
    path = tmp_path / "ex1.aut"
    path.write_text(format_automaton(nontransitive_example()))
    return str(path)


def test_reset_command(c4_file, capsys):
    assert main(["reset", c4_file]) == 0
    out = capsys.readouterr().out
    assert "kind=reset" in out and "verified=true" in out
    assert "len=9" in out


def test_reset_with_explicit_words(c4_file, capsys):
    assert main(["reset", c4_file, "--words", "aaa,aa,a,ε"]) == 0
    assert "verified=true" in capsys.readouterr().out


def test_reset_not_synchronizing(ex1_file, capsys):
    assert main(["reset", ex1_file]) == 2
    assert "not synchronizing" in capsys.readouterr().err


def test_analyze_command(ex1_file, capsys):
    assert main(["analyze", ex1_file]) == 0
    out = capsys.readouterr().out
    assert "letter a: cycles=1 k=2 W=aaa,aa" in out
    assert "letter b: cycles=2 (not 1-cluster)" in out


def test_stable_command(ex1_file, capsys):
    assert main(["stable", ex1_file]) == 0
    out = capsys.readouterr().out
    assert "classes=4" in out


def test_reducible_command(ex1_file, c4_file, capsys):
    assert main(["reducible", ex1_file, "--set", "0,1"]) == 0
    assert "irreducible" in capsys.readouterr().out
    assert main(["reducible", c4_file, "--set", "0,1"]) == 0
    assert "collapsing word" in capsys.readouterr().out


def test_minrank_command(ex1_file, capsys):
    assert main(["minrank", ex1_file, "--words", "a,aa"]) == 0
    out = capsys.readouterr().out
    assert "minimal_rank=2" in out and "verified=true" in out


def test_collapse_command(c4_file, capsys):
    assert main(["collapse", c4_file, "--set", "0,1"]) == 0
    assert "kind=collapse" in capsys.readouterr().out


def test_oracle_command(c4_file, capsys):
    assert main(["oracle", c4_file, "--reset", "--rank"]) == 0
    out = capsys.readouterr().out
    assert "shortest_reset: len=9" in out and "minimal_rank: 1" in out


def test_oracle_m_query(ex1_file, capsys):
    assert main(["oracle", ex1_file, "--m", "a,aa"]) == 0
    assert "max_reducible_in_range: 1" in capsys.readouterr().out


def test_road_color_command(tmp_path, capsys):
    import random
    graph = random_agw_ham(random.Random(1), 5, 2)
    path = tmp_path / "g.graph"
    path.write_text(format_graph(graph))
    dot_path = tmp_path / "g.dot"
    assert main(["road-color", str(path), "--emit-dot", str(dot_path)]) == 0
    out = capsys.readouterr().out
    assert "verified=true" in out and "reset_word=" in out
    coloring = parse_automaton(
        "".join(line + "\n" for line in out.splitlines()
                if not line.startswith(("reset_word", "kind"))))
    assert coloring.n == 5
    assert dot_path.read_text().startswith("digraph")


def test_road_color_rejects_periodic(tmp_path, capsys):
    path = tmp_path / "bad.graph"
    path.write_text("2 1\n1\n0\n")
    assert main(["road-color", str(path)]) == 2
    assert "aperiodicity: period 2" in capsys.readouterr().err


def test_bench_cerny(capsys):
    assert main(["bench", "--family", "cerny", "--n", "4..6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id,n,k,M,t,cert_len,bound,oracle_len,margin"
    assert len(lines) == 4
    # oracle column carries the exact (n-1)^2 values
    assert [row.split(",")[7] for row in lines[1:]] == ["9", "16", "25"]


def test_bench_deterministic(capsys):
    assert main(["bench", "--family", "rand-1cluster", "--count", "5",
                 "--seed", "11", "--n", "4..8"]) == 0
    first = capsys.readouterr().out
    assert main(["bench", "--family", "rand-1cluster", "--count", "5",
                 "--seed", "11", "--n", "4..8"]) == 0
    assert capsys.readouterr().out == first
    assert main(["bench", "--family", "rand-1cluster", "--count", "5",
                 "--seed", "12", "--n", "4..8"]) == 0
    assert capsys.readouterr().out != first


def test_bench_agw(capsys):
    assert main(["bench", "--family", "rand-agw", "--count", "3",
                 "--seed", "5", "--n", "4..6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    for row in lines[1:]:
        fields = row.split(",")
        assert float(fields[8]) >= 0    # margin = bound - cert_len


def test_export_dot(tmp_path, c4_file, capsys):
    assert main(["export-dot", c4_file]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    gpath = tmp_path / "g.graph"
    gpath.write_text("2 2\n0 1\n0 1\n")
    out_path = tmp_path / "g.dot"
    assert main(["export-dot", str(gpath), "--kind", "graph",
                 "--out", str(out_path)]) == 0
    assert "->" in out_path.read_text()


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.aut"
    path.write_text("2 2\n0 x\n0 1\n")
    assert main(["reset", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_round_trip_formats(tmp_path):
    aut = cerny(5)
    assert parse_automaton(format_automaton(aut)) == aut
    import random
    graph = random_agw_ham(random.Random(2), 6, 3)
    assert parse_graph(format_graph(graph)) == graph
