import json
import subprocess
import sys

import pytest

from permop.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_counts_per_k(capsys):
    code, out, _ = run(capsys, "counts", "--space", "cact", "-n", "5", "--per-k")
    assert code == 0
    for line in ["k=1: 15", "k=2: 30", "k=3: 36", "k=4: 24", "total: 105"]:
        assert line in out


def test_counts_milgram(capsys):
    code, out, _ = run(capsys, "counts", "--space", "milgram", "-n", "3")
    assert code == 0 and "milgram: 6 / 12 / 6" in out
    code, out, _ = run(capsys, "counts", "-n", "1")
    assert "cact: 1  (total 1)" in out


def test_verify_homology(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "homology", "-n", "3")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    betti = rep["suites"][0]["checks"][0]["value"]
    assert betti["got"] == betti["want"] == [1, 3, 2]


def test_verify_operad(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "operad", "-n", "4")
    rep = json.loads(out)
    right = next(c for c in rep["suites"][0]["checks"] if c["name"].startswith("right"))
    assert code == 0 and right["value"] == {"support": 15, "multiplicities": [1]}


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "-n", "2")
    assert code == 0 and json.loads(out)["pass"]


def test_usage_errors(capsys):
    assert run(capsys, "counts", "-n", "9")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "export", "--subdivision", "54321", "--format", "off")[0] == 2


def test_export_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--space", "cact", "-n", "3", "--format", "json")
    assert code == 0 and json.loads(out)["f_vector"] == [6, 18, 12]
    path = tmp_path / "p4.json"
    code, _, _ = run(capsys, "export", "--subdivision", "4321", "--format", "json", "--out", str(path))
    assert code == 0 and json.loads(path.read_text())["top_cells"] == 15
    code, out, _ = run(capsys, "export", "--space", "milgram", "-n", "2", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 5
    code, _, err = run(capsys, "export", "-n", "3", "--format", "off", "--out", str(tmp_path / "no" / "x.off"))
    assert code == 2 and "no" in err


def test_byte_identical(capsys):
    a = run(capsys, "export", "--subdivision", "4321", "--format", "off")[1]
    b = run(capsys, "export", "--subdivision", "4321", "--format", "off")[1]
    assert a == b and a.startswith("OFF\n")
    c = run(capsys, "verify", "--suite", "operad", "-n", "3", "--seed", "5")[1]
    d = run(capsys, "verify", "--suite", "operad", "-n", "3", "--seed", "5")[1]
    assert c == d


def test_compose_and_iterate(capsys):
    code, out, _ = run(capsys, "compose", "121", "1", "121")
    assert out.splitlines() == ["1 × 12131", "1 × 12321", "1 × 13121"]
    code, out, _ = run(capsys, "iterate", "-n", "4", "--side", "left")
    assert code == 0 and out.startswith("1 × 1234321")


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("PERMOP_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--suite", "all", "-n", "3")
    assert code == 0 and [s["suite"] for s in json.loads(out)["suites"]][0] == "poset"


def test_console_entry():
    r = subprocess.run([sys.executable, "-m", "permop.cli", "counts", "-n", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and "cact: 2 / 2" in r.stdout
