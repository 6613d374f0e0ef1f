import json

import pytest

from rootqca.cli import main

A2 = {"l": 5, "N": 2, "ex": [0, 1], "inv": [], "lambda": [[0, 1], [-1, 0]], "B": [[0, 1], [-1, 0]], "frame": "standard"}
NON_COPRIME = dict(A2, l=9, B=[[0, 1], [-3, 0]])
SL3 = {"A": [[2, -1], [-1, 2]], "d": [1, 1]}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, data in (("a2", A2), ("c", NON_COPRIME), ("sl3", SL3)):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data))
        out[name] = str(path)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    out["bad"] = str(bad)
    return out


def test_compat(files, capsys):
    assert main(["--json", "compat", files["a2"]]) == 0
    assert main(["compat", files["c"]]) == 0
    captured = capsys.readouterr()
    assert "D = diag(3, 1)" in captured.out
    assert "coprime hypothesis" in captured.err


def test_compat_json_reports_d(files, capsys):
    main(["--json", "compat", files["c"]])
    report = json.loads(capsys.readouterr().out)
    assert report["d"] == [3, 1]


def test_mutate(files, capsys):
    assert main(["--json", "mutate", files["a2"], "--word", "0,1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["B"] == [[0, 1], [-1, 0]]
    # (1 + x_0 + x_1) / (x_0 x_1)
    assert sorted(tuple(t["exp"]) for t in report["frame"][1]) == [(-1, -1), (-1, 0), (0, -1)]


def test_explore(files, capsys):
    assert main(["--json", "explore", files["a2"]]) == 0
    assert json.loads(capsys.readouterr().out)["nodes"] == 5
    assert main(["explore", files["a2"], "--max-nodes", "3"]) == 3


def test_usage_errors(files):
    assert main(["explore", files["bad"]]) == 2
    assert main(["mutate", files["a2"], "--word", "x"]) == 2
    assert main(["explore", files["a2"] + ".missing"]) == 2


def test_frobenius(files):
    assert main(["frobenius", files["a2"], "--max-length", "3"]) == 0


def test_disc_torus():
    assert main(["disc", "--preset", "torus", "--n", "1", "--l", "3"]) == 0


def test_weyl_discriminant_mismatch():
    assert main(["weyl", "--n", "1", "--l", "3"]) == 1
    assert main(["weyl", "--n", "1", "--l", "3", "--no-disc"]) == 0


def test_unip(files):
    assert main(["unip", "--cartan", files["sl3"], "--word", "1,2", "--l", "3"]) == 0
    assert main(["unip", "--cartan", files["sl3"], "--word", "1,1"]) == 2


def test_selftest_exit_code_reflects_failures(capsys):
    assert main(["selftest"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8
    assert sum(line.startswith("[FAIL]") for line in lines) == 2
