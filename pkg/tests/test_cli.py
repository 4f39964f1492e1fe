import json

import pytest

from bipweight.cli import main
from bipweight.graph import gen_complete_bipartite, gen_gamma_pair, parse_graph


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_weight_then_verify_round_trip(files, tmp_path, capsys):
    src = files("k35.txt", gen_complete_bipartite(3, 5).to_edge_list())
    out = str(tmp_path / "w.txt")
    assert main(["weight", src, "--set", "01", "--output", out]) == 0
    assert main(["verify", src, out]) == 0
    assert main(["weight", src, "--set", "12", "--format", "json", "-o", out]) == 0
    doc = json.loads(open(out).read())
    assert doc["weight_set"] == [1, 2]
    assert main(["verify", src, out]) == 0


def test_weight_gamma_pair(files, capsys):
    src = files("gp.txt", gen_gamma_pair().to_edge_list())
    assert main(["weight", src, "--set", "01", "--fallback-search"]) == 1
    assert main(["weight", src, "--set", "01"]) == 2
    assert main(["--json", "weight", src, "--set", "12", "--fallback-search"]) == 0


def test_weight_odd_cycle(files, capsys):
    src = files("c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n")
    assert main(["weight", src]) == 2
    assert "odd cycle" in capsys.readouterr().err


def test_parse_error_exit_code(files, capsys):
    src = files("bad.txt", "0 1\n0 1\n")
    assert main(["weight", src]) == 3
    err = capsys.readouterr().err
    assert "duplicate edge" in err and ":2:" in err
    assert main(["weight", "/nonexistent/file"]) == 3
    assert main(["no-such-command"]) == 3


def test_verify_reports_violations(files, capsys):
    src = files("p3.txt", "0 1\n1 2\n")
    bad = files("w.txt", "0 1 1\n1 2 1\n")
    assert main(["verify", src, bad]) == 0
    src = files("c4.txt", "0 1\n1 2\n2 3\n3 0\n")
    bad = files("w4.txt", "0 1 1\n1 2 1\n2 3 1\n0 3 1\n")
    assert main(["--json", "verify", src, bad]) == 4
    payload = json.loads(capsys.readouterr().out)["payload"]
    assert len(payload["violations"]) == 4


def test_factor_and_certificate(files, capsys):
    src = files("p3.txt", "0 1\n1 2\n")
    infeasible = files("bad.spec", "0 1 1\n1 0 0\n2 1 1\n")
    forced = files("ok.spec", "0 1 1\n1 2 2\n2 1 1\n")
    assert main(["factor", src, infeasible]) == 1
    assert main(["factor", src, forced]) == 0
    assert capsys.readouterr().out == "0 1\n1 2\n"
    assert main(["--json", "certificate", src, infeasible]) == 1
    payload = json.loads(capsys.readouterr().out)["payload"]
    assert payload == {"S": [1], "T": [], "eta": -2, "tau": 2}
    assert main(["certificate", src, forced]) == 0


def test_gen_families(tmp_path, capsys):
    out = str(tmp_path / "theta.txt")
    assert main(["gen", "theta", "3", "3", "3", "-o", out]) == 0
    assert parse_graph(open(out).read()).n == 8
    assert main(["gen", "gamma-pair"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert (g.n, g.m) == (14, 15)
    assert main(["gen", "regular-bipartite", "3", "4", "--seed", "5"]) == 0
    text = capsys.readouterr().out
    assert "seed 5" in text
    assert parse_graph(text).m == 12
    assert main(["gen", "theta", "2", "3"]) == 3
    assert main(["gen", "complete-bipartite", "3"]) == 3


def test_oracle_command(files, capsys):
    src = files("gp.txt", gen_gamma_pair().to_edge_list())
    assert main(["oracle", src, "--set", "12"]) == 0
    assert main(["oracle", src, "--set", "01"]) == 1
    assert main(["oracle", src, "--budget", "10"]) == 3
