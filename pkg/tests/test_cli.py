"""Command-line interface: outputs, exit codes, machine format."""

import json
import subprocess
import sys

import pytest

from chowcalc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_slice_outputs(capsys):
    code, out = run_cli(capsys, "slice", "--space", "bM11", "--degree", "3")
    assert code == 0 and out.strip() == "Z/24"
    code, out = run_cli(capsys, "slice", "--space", "M11", "--degree", "0")
    assert code == 0 and out.strip() == "Z"
    code, out = run_cli(capsys, "slice", "--space", "dM13", "--degree", "1", "--json")
    data = json.loads(out)
    assert data["type"] == "Z^5 + Z/2 + Z/2 + Z/4"
    assert "th1" in data["basis"]


def test_slice_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["slice", "--space", "NOPE", "--degree", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["slice", "--space", "bM11", "--degree", "99"])
    assert exc.value.code == 2


def test_graphs_and_intersect(capsys):
    code, out = run_cli(capsys, "graphs", "--genus", "1", "--n", "2")
    assert code == 0 and "-- 5 graphs" in out
    code, out = run_cli(capsys, "intersect", "--a", "D_1", "--b", "D_empty", "--n", "3")
    assert code == 0 and out.strip() == "Delta_{empty|1}"
    code, out = run_cli(capsys, "intersect", "--a", "D_1", "--b", "D_2", "--n", "3")
    assert code == 0 and out.strip() == "(empty)"
    with pytest.raises(SystemExit) as exc:
        main(["graphs", "--genus", "2", "--n", "1"])
    assert exc.value.code == 2


def test_pullback_and_psi(capsys):
    code, out = run_cli(capsys, "pullback", "--class", "de", "--from", "2", "--to", "3")
    assert code == 0 and out.strip() == "de + d3"
    code, out = run_cli(capsys, "psi", "--genus", "0", "--n", "4", "--i", "1")
    assert code == 0 and out.strip() in ("D12", "D13", "D14")


def test_verify_exit_codes(capsys):
    code, out = run_cli(capsys, "verify", "--check", "noop")
    assert code == 0 and "PASS" in out
    code, out = run_cli(capsys, "verify", "--check", "m13.snf", "--json")
    reports = json.loads(out)
    assert code == 1
    assert reports[0]["status"] == "fail"
    assert set(reports[0]) == {"check", "status", "expected", "computed", "paper_ref", "ms"}
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--check", "no.such.check"])
    assert exc.value.code == 2


def test_verify_idempotent(capsys):
    code1, out1 = run_cli(capsys, "verify", "--filter", "strata.", "--json")
    code2, out2 = run_cli(capsys, "verify", "--filter", "strata.", "--json")
    v1 = {(r["check"], r["status"]) for r in json.loads(out1)}
    v2 = {(r["check"], r["status"]) for r in json.loads(out2)}
    assert v1 == v2 and code1 == code2 == 0


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("max_degree=4\nrng_seed=7\n")
    code, out = run_cli(capsys, "--config", str(cfg), "slice", "--space", "bM11", "--degree", "3")
    assert code == 0 and out.strip() == "Z/24"
    with pytest.raises(SystemExit) as exc:
        main(["--config", str(cfg), "slice", "--space", "bM11", "--degree", "5"])
    assert exc.value.code == 2
    bad = tmp_path / "bad"
    bad.write_text("nonsense=1\n")
    with pytest.raises(SystemExit) as exc:
        main(["--config", str(bad), "verify", "--check", "noop"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "chowcalc", "slice", "--space", "M11", "--degree", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "Z/12"
    proc = subprocess.run(
        [sys.executable, "-m", "chowcalc", "frobnicate"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_witness_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["witness", "--name", "no.prefix."])
    assert exc.value.code == 2
