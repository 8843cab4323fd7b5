import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from bidigraph.cli import main
from bidigraph.core import parse_text, to_text
from bidigraph.fixtures import corpus

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fx(name):
    return str(FIXTURES / f"{name}.bg")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--edge-clean", fx("F3"))
    assert code == 0 and "edge-clean: true" in out
    code, data = run_json(capsys, "check", fx("F1"), "--edge-clean", "--clean", "--plain")
    assert data["edge-clean"] is False and data["clean"] is False and data["plain"] == []


def test_classify(capsys):
    code, data = run_json(capsys, "classify", fx("F3"), "--regime", "almost-path")
    status = {row["edge"]: row["status"] for row in data["edges"]}
    assert status == {"f": "directable", "g": "undirectable", "h": "undirectable"}


def test_skeleton(capsys):
    code, out, _ = run(capsys, "skeleton", fx("F0"))
    assert code == 0 and '"r" -> "v"' in out
    code, data = run_json(capsys, "skeleton", fx("Fig5"), "--kind", "vertex")
    assert sorted(data["skeleton"]["vertices"]) == ["a", "c", "d", "f", "h", "j", "r"]


def test_menger(capsys):
    code, data = run_json(capsys, "menger", fx("F3"), "--target", "w", "--kind", "trail")
    assert data["value"] == 1 and data["cut"]["boundary"] == ["f"]
    code, data = run_json(capsys, "menger", fx("F2"), "--target", "b", "--kind", "vertex")
    assert data["value"] == 2
    code, data = run_json(capsys, "menger", fx("F3"), "--sources", "r", "--sinks", "w")
    assert data["value"] == 1 and data["kind"] == "set"
    code, data = run_json(capsys, "menger", fx("F3"), "--signed")
    assert {(row["vertex"], row["sign"]): row["path"] for row in data["signed"]}[("c", "-")] == 0


def test_flame(capsys, tmp_path):
    out_file = tmp_path / "flame.bg"
    code, data = run_json(capsys, "flame", fx("Fig2a"), "--out", str(out_file))
    assert code == 0 and data["edge_count"] == 5 and data["budget"] == 5
    assert parse_text(out_file.read_text()) == corpus()["Fig2a"].graph
    code, out, err = run(capsys, "flame", fx("Fig3"))
    assert code == 1 and json.loads(err)["error"] == "NotEdgeClean"
    fam = tmp_path / "fam.json"
    fam.write_text("not json")
    code, _, err = run(capsys, "pym", fx("F2"), "--families", str(fam), "--target", "b")
    assert code == 1 and json.loads(err)["error"] == "FormatError"


def test_pym(capsys, tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"P": [["r", "ra", "a", "ab", "b"]], "Q": [["r", "rb", "b"]]}))
    code, data = run_json(capsys, "pym", fx("F2"), "--families", str(fam), "--target", "b")
    assert code == 0 and sorted(data["R"]) == [["r", "ra", "a", "ab", "b"], ["r", "rb", "b"]]
    code, data = run_json(capsys, "pym", fx("F2"), "--families", str(fam), "--target", "b", "--vertex")
    assert len(data["R"]) == 2


def test_translate_round_trips(capsys, tmp_path):
    for fmt in ("json", "matched"):
        code, out, _ = run(capsys, "translate", fx("F3"), "--to", fmt)
        p = tmp_path / f"g.{fmt}"
        p.write_text(out)
        code, back, _ = run(capsys, "translate", str(p), "--to", "text")
        assert parse_text(back) == corpus()["F3"].graph
    code, out, _ = run(capsys, "translate", fx("F3"), "--to", "dot")
    assert out.startswith("graph")


def test_oracle(capsys, tmp_path):
    code, data = run_json(capsys, "oracle", "query", fx("F3"), "--target", "w")
    assert data == {"graph": fx("F3"), "lambda_trail": 1, "lambda_path": 1, "kappa": 1}
    code, data = run_json(capsys, "oracle", "query", fx("F3"))
    assert data["plain"] == ["c"] and data["classes"]["trail"]["g"] == "undirectable"
    code, out, _ = run(capsys, "oracle", "verify", str(FIXTURES))
    assert code == 0 and "stale" not in out
    code, _, _ = run(capsys, "oracle", "reconstruct", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "Fig3.bg").exists()
    (tmp_path / "F0.bg").write_text(to_text(corpus()["F1"].graph))
    code, out, _ = run(capsys, "oracle", "verify", str(tmp_path))
    assert code == 1 and "F0: stale" in out


def test_campaign(capsys):
    code, data = run_json(capsys, "campaign", "--seeds", "3", "--sections", "reachability,matching")
    assert code == 0 and data["discrepancies"] == 0
    assert set(data["sections"]) == {"reachability", "matching"}


def test_errors(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "missing.bg"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.bg"
    bad.write_text("bidigraph v1\nedge e r v + ?\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1 and json.loads(err)["error"] == "FormatError"
    code, _, err = run(capsys, "menger", fx("F3"))
    assert code == 2
    code, _, err = run(capsys, "menger", fx("F1"), "--target", "v")
    assert code == 1 and json.loads(err)["error"] == "NotEdgeClean"


def test_stdin_and_module_entry():
    text = (FIXTURES / "F3.bg").read_text()
    res = subprocess.run(
        [sys.executable, "-m", "bidigraph", "check", "-", "--clean"],
        input=text,
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "clean: true" in res.stdout
