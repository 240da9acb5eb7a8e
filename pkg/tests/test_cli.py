import json
import subprocess
import sys

import pytest

from gallai import build_odd_extremal, load_coloring
from gallai.cli import main


@pytest.fixture
def odd32(tmp_path):
    path = tmp_path / "odd32.txt"
    assert main(["construct", "odd", "--n", "3", "--k", "2", "-o", str(path)]) == 0
    return path


def test_construct_writes_file(odd32):
    assert load_coloring(odd32.read_text()) == build_odd_extremal(3, 2)


def test_construct_to_stdout(capsys):
    assert main(["construct", "even", "--n", "3", "--k", "1"]) == 0
    assert capsys.readouterr().out.startswith("5 1\n")


def test_check(odd32, tmp_path, capsys):
    assert main(["check", str(odd32)]) == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("3 3\n0 1 1\n0 2 2\n1 2 3\n")
    assert main(["check", str(bad)]) == 1
    assert "rainbow triangle 0 1 2" in capsys.readouterr().out


def test_decompose(odd32, capsys):
    assert main(["decompose", str(odd32)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1:] == ["V0: 0 1 2 3 4 5", "V1: 6 7 8 9 10 11", "R 0 1 2"]
    assert main(["decompose", "--full", str(odd32)]) == 0
    assert capsys.readouterr().out.startswith("(2 | (1 1 1 1 1/")
    assert main(["decompose", "--connected", str(odd32)]) == 0


def test_find_cycle_exit_codes(odd32, capsys):
    assert main(["find-cycle", str(odd32), "--length", "7"]) == 1
    assert main(["find-cycle", str(odd32), "--length", "6"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith("color ")
    assert main(["find-cycle", str(odd32), "--length", "7", "--budget", "1"]) == 2


def test_certify(odd32, tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["certify", str(odd32), "--length", "7", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["colors"]["1"]["variant"] == "ComponentBound"
    assert doc["colors"]["2"]["variant"] == "Bipartite"
    assert main(["certify", str(odd32), "--length", "6"]) == 1


def test_verify_and_outputs(tmp_path, capsys):
    out = tmp_path / "r"
    assert main(["verify", "gr-odd-lower", "--n", "3", "--k", "1", "2", "--out", str(out), "--plot"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert [x["parameters"]["k"] for x in lines] == [1, 2]
    assert any(p.suffix == ".png" for p in out.iterdir())
    assert any(p.suffix == ".tsv" for p in out.iterdir())


def test_verify_exact_small_fail_exit(capsys):
    assert main(["verify", "gr-exact-small", "--n", "3", "--k", "1", "--N", "6"]) == 1


def test_suite_command(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text(f"claims = gr-even-lower\ngr-even-lower.n = 3\ngr-even-lower.k = 1,2\nout = {tmp_path / 'out'}\n")
    assert main(["suite", "--config", str(cfg)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["verdict"] == "pass" and len(summary["reports"]) == 2


def test_bad_input_file(tmp_path, capsys):
    bad = tmp_path / "dup.txt"
    bad.write_text("2 1\n0 1 1\n0 1 1\n")
    assert main(["check", str(bad)]) == 3
    assert "duplicate" in capsys.readouterr().err


def test_module_entry_point(odd32):
    res = subprocess.run(
        [sys.executable, "-m", "gallai", "find-cycle", str(odd32), "--length", "6", "--color", "1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.startswith("color 1:")
