import json
import subprocess
import sys

import pytest

from oppflag import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    cli.validate(doc)
    return doc


def test_bound_symplectic_generators(capsys):
    code, out, _ = run(capsys, "bound", "--family", "B", "--rank", "3", "--q", "2", "--e", "1", "--type", "3")
    assert code == 0
    assert "bound        15" in out
    assert "construction point-pencil: 15" in out
    assert "cotype {1,2}" in out


def test_bound_projective_lines(capsys):
    doc = run_json(capsys, "bound", "--family", "A", "--rank", "3", "--q", "2", "--type", "2")
    assert doc["bound"] == "7" and doc["v"] == 35
    assert doc["type"] == ["2"] and doc["cotype"] == ["1", "3"]


def test_bound_far_from_sharp(capsys):
    doc = run_json(capsys, "bound", "--family", "A", "--rank", "4", "--q", "2", "--type", "1,4")
    assert doc["bound"] == "-15 + 60*sqrt(2)"
    assert any("far below" in w for w in doc["warnings"])


def test_bound_cotype_equals_type(capsys):
    a = run_json(capsys, "bound", "--family", "D", "--rank", "4", "--q", "2", "--type", "4")
    b = run_json(capsys, "bound", "--family", "D", "--rank", "4", "--q", "2", "--cotype", "{1,2,4'}")
    assert a == b


def test_spectrum_symplectic_points(capsys):
    doc = run_json(capsys, "spectrum", "--family", "B", "--rank", "3", "--q", "2", "--e", "1", "--type", "1")
    assert len(doc["rows"]) == 3
    assert sorted(int(r["value"]) for r in doc["rows"]) == [-4, 4, 32]


def test_spectrum_pg22_maximal(capsys):
    doc = run_json(capsys, "spectrum", "--family", "A", "--rank", "2", "--q", "2")
    values = {(r["sign"], r["value"]) for r in doc["rows"]}
    assert values == {("+", "8"), ("±", "2*sqrt(2) or -2*sqrt(2)"), ("-", "-1")}


def test_spectrum_full_cotype(capsys):
    doc = run_json(capsys, "spectrum", "--family", "B", "--rank", "3", "--q", "3", "--e", "1", "--type", "")
    assert doc["rows"] == [{"label": "([3],[])", "multiplicity": 1, "sign": "+", "exp": "0+0*e", "value": "1"}]


def test_spectrum_tsv(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "B", "--rank", "3", "--q", "2", "--e", "1", "--type", "1", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "label\tmultiplicity\tsign\texp\tvalue"
    assert len(lines) == 4 and all(len(x.split("\t")) == 5 for x in lines)


def test_decompose(capsys):
    doc = run_json(capsys, "decompose", "--family", "B", "--rank", "3", "--cotype", "1,2")
    assert doc["index"] == 8
    assert [r["label"] for r in doc["rows"]] == ["([3],[])", "([2],[1])", "([1],[2])", "([],[3])"]
    # decompose accepts any type, self-opposite or not
    code, _, _ = run(capsys, "decompose", "--family", "A", "--rank", "3", "--type", "1")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--family", "A", "--rank", "3", "--q", "2", "--type", "1"],
        ["bound", "--family", "D", "--rank", "5", "--q", "2", "--type", "5"],
        ["bound", "--family", "B", "--rank", "3", "--q", "2", "--type", "1"],
        ["bound", "--family", "A", "--rank", "3", "--q", "6", "--type", "2"],
        ["bound", "--family", "A", "--rank", "3", "--q", "2", "--e", "1", "--type", "2"],
        ["bound", "--family", "B", "--rank", "3", "--q", "2", "--e", "1/2", "--type", "1"],
        ["bound", "--family", "A", "--rank", "3", "--q", "2", "--type", "7"],
        ["bound", "--family", "A", "--rank", "3", "--q", "2", "--type", "2", "--cotype", "1,3"],
        ["--budget", "nodes=3", "selftest"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("oppflag")


def test_not_self_opposite_message(capsys):
    code, _, err = run(capsys, "bound", "--family", "D", "--rank", "5", "--q", "2", "--type", "5")
    assert code == 2
    assert "type {5} is not self-opposite" in err and "{5'}" in err


@pytest.mark.parametrize("extra", [["--colour", "red"], ["--family", "C"]])
def test_argparse_rejections(capsys, extra):
    with pytest.raises(SystemExit) as info:
        cli.main(["bound", "--family", "A", "--rank", "3", "--q", "2"] + extra)
    assert info.value.code == 2


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "--budget", "vertices=10", "verify", "--suite", "pg32")
    assert code == 3
    assert "vertices budget exceeded" in err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("OPPG_BUDGET", "vertices=10")
    code, _, _ = run(capsys, "verify", "--suite", "pg22")
    assert code == 3


def test_verify_failure_exit_1(capsys, monkeypatch):
    import oppflag.geometry as geo

    real = geo.verify_spectrum

    def broken(graph, predicted, q, e=0):
        return real(graph, predicted[:1], q, e)

    monkeypatch.setattr(geo, "verify_spectrum", broken)
    code, out, _ = run(capsys, "verify", "--suite", "pg22")
    assert code == 1
    assert "FAIL  spectrum PG(2,2)" in out


def test_verify_hecke(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hecke-a2")
    assert code == 0
    assert "PASS  Hecke relations on PG(2,2)" in out and "PASS  Hecke relations on PG(2,3)" in out


@pytest.mark.parametrize("suite", ["pg22", "pg32", "sp62"])
def test_verify_suites_pass(capsys, suite):
    doc = run_json(capsys, "verify", "--suite", suite)
    assert doc["passed"]
    for inst in doc["instances"]:
        assert inst["spectrum_verified"]
        assert inst["max_coclique"] is None or inst["max_coclique"] <= inst["bound_floor"]


def test_verify_o8plus_instances(capsys):
    doc = run_json(capsys, "verify", "--suite", "o8plus")
    assert doc["passed"]
    (inst,) = [d for d in doc["instances"] if d["type"] == ["4'"]]
    assert inst["v"] == 135 and inst["bound"] == "15" and inst["max_coclique"] == 15


def test_json_is_deterministic(capsys):
    argv = ["verify", "--suite", "pg32", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.count("PASS") == len(out.splitlines()) >= 8


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "oppflag.cli", "bound", "--family", "A", "--rank", "3", "--q", "2", "--type", "2", "--format", "tsv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "bound\t7" in proc.stdout
