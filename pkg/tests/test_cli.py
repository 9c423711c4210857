from __future__ import annotations

import json

import pytest

from dessin_toda.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dessins_json(capsys):
    code, out, _ = run(capsys, "dessins", "--mu", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == SCHEMA
    entries = {(e["k"], e["l"], e["g"], e["value"]) for e in data["entries"]}
    assert entries == {(2, 1, 0, "1/2"), (1, 2, 0, "1/2")}


def test_dessins_pair(capsys):
    code, out, _ = run(capsys, "dessins", "--mu", "1,1", "--format", "json")
    assert code == 0
    assert [(e["k"], e["l"], e["g"], e["value"]) for e in json.loads(out)["entries"]] == [(1, 1, 0, "1")]


def test_dessins_csv(capsys):
    code, out, _ = run(capsys, "dessins", "--mu", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k,l,g,value", "1,1,0,1"]


def test_lue(capsys):
    code, out, _ = run(capsys, "lue", "--mu", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["factored"] == "n*(a+n)"


def test_hurwitz(capsys):
    code, out, _ = run(capsys, "hurwitz", "--g", "0", "--mu", "1,1", "--nu", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["entries"] == [{"g": 0, "nu": [2], "value": "1"}]


def test_correlator(capsys):
    code, out, _ = run(capsys, "correlator", "--mu", "2,1", "--format", "json")
    assert code == 0
    assert json.loads(out)["schema"] == SCHEMA


@pytest.mark.parametrize(
    "argv",
    [
        ("dessins", "--mu", "0"),
        ("dessins", "--mu", "x"),
        ("dessins", "--bogus"),
        ("hurwitz", "--g", "0", "--mu", "1,1,1,1,1,1,1,1,1", "--nu", "9"),
        ("verify", "nosuch"),
        ("dessins", "--mu", "1", "--format", "xml"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "barnes", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "suite,name,identity,passed,detail"
    assert all(",PASS," in line for line in lines[1:])


def test_verify_deterministic(capsys):
    first = run(capsys, "verify", "lue", "--format", "json", "--lambda-order", "6")
    second = run(capsys, "verify", "lue", "--format", "json", "--lambda-order", "6", "--threads", "2")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_pretty_has_timing(capsys):
    code, out, _ = run(capsys, "verify", "oracles", "--weight", "4")
    assert code == 0
    assert out.splitlines()[-1].startswith("PASS") and "s " in out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nformat = csv\nmu = 1\n")
    code, out, _ = run(capsys, "dessins", "--config", str(cfg))
    assert code == 0
    assert out.splitlines() == ["k,l,g,value", "1,1,0,1"]
    code, out, _ = run(capsys, "dessins", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["schema"] == SCHEMA


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = red\n")
    code, _, err = run(capsys, "dessins", "--mu", "1", "--config", str(cfg))
    assert code == 2 and "unknown config keys" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.json"
    code, out, _ = run(capsys, "dessins", "--mu", "2", "--format", "json", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["schema"] == SCHEMA
