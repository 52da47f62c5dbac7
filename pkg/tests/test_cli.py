from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from bcinterp.arith import parse, parse_poly
from bcinterp.cli import main, parse_timeout, UsageError


def run(*args, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "bcinterp", *args], capture_output=True, text=True, env=full)


def test_compute_pstar_closed_form(capsys):
    assert main(["compute", "pstar", "--mu", "1", "--n", "1", "--method", "comb"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "x1 - 1 - s^(-2) + s^(-2)*x1^(-1)"
    assert parse(out) == parse("(x1 - 1)*(1 - 1/(s^2*x1))")


def test_compute_macdonald(capsys):
    assert main(["compute", "macdonald", "--mu", "2", "--n", "2", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert "x1" in obj["alphabet"]


def test_compute_integral_method(capsys):
    assert main(["compute", "pstar", "--mu", "1", "--n", "2", "--method", "integral(0)", "--spec", "qh=1/2,s=3"]) == 0
    integral = parse(capsys.readouterr().out)
    assert main(["compute", "pstar", "--mu", "1", "--n", "2", "--spec", "qh=1/2,th=1/2,s=3"]) == 0
    assert parse(capsys.readouterr().out) == integral


@pytest.mark.parametrize("argv", [
    ["compute", "pstar", "--mu", "1,1", "--n", "1"],
    ["compute", "pstar", "--mu", "1", "--n", "1", "--method", "magic"],
    ["compute", "pstar", "--mu", "1,2", "--n", "2"],
    ["compute", "pstar", "--mu", "1", "--n", "1", "--spec", "q=1/2"],
    ["refute", "qde", "--d", "0", "--deg", "3"],
    ["refute", "qde", "--d", "1", "--deg", "3", "--probes", "2"],
    ["verify", "routes", "--max-weight", "9", "--n", "1", "--timeout", "1x"],
    ["verify", "routes", "--n", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    assert run("verify", "nosuchsuite").returncode == 2
    assert run("compute").returncode == 2


def test_timeout_parsing():
    assert parse_timeout("90") == 90 and parse_timeout("2m") == 120 and parse_timeout("1s") == 1
    with pytest.raises(UsageError):
        parse_timeout("soon")


def test_verify_cauchy_passes(capsys):
    assert main(["verify", "cauchy", "--n", "2", "--m", "2", "--workers", "1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_integral_passes(capsys):
    assert main(["verify", "integral", "--n", "2", "--k", "0", "--max-weight", "2", "--workers", "1"]) == 0


def test_refute_outputs():
    r = run("refute", "qde", "--d", "1", "--deg", "3")
    assert r.returncode == 0 and "VALID" in r.stdout
    r = run("refute", "qde", "--d", "2", "--deg", "5", "--json")
    assert r.returncode == 0 and json.loads(r.stdout)["valid"]


def test_output_independent_of_worker_count():
    args = ["verify", "shifts", "--n", "1,2", "--max-weight", "2"]
    one = run(*args, "--workers", "1")
    two = run(*args, "--workers", "2")
    env = run(*args, env={"BCINTERP_WORKERS": "3"})
    assert one.returncode == two.returncode == env.returncode == 0
    assert one.stdout == two.stdout == env.stdout


def test_seeded_runs_are_byte_identical():
    args = ["verify", "routes", "--n", "3", "--max-weight", "2", "--points", "2", "--seed", "7", "--workers", "1"]
    assert run(*args).stdout == run(*args).stdout


def test_timeout_reports_and_fails():
    r = run("verify", "pieri", "--n", "3", "--max-weight", "3", "--timeout", "0.5s", "--workers", "2")
    assert r.returncode == 1 and "TIMEOUT" in r.stdout


def test_golden_files_match():
    from pathlib import Path

    golden = Path(__file__).parent / "golden"
    r = run("golden", "check", "--dir", str(golden))
    assert r.returncode == 0, r.stdout


def test_golden_detects_tampering(tmp_path):
    assert run("golden", "write", "--dir", str(tmp_path), "--max-weight", "1", "--max-n", "1").returncode == 0
    target = tmp_path / "pstar_n1_mu1.json"
    obj = json.loads(target.read_text())
    obj["num"]["terms"][0]["coef"] = "12345"
    target.write_text(json.dumps(obj))
    r = run("golden", "check", "--dir", str(tmp_path), "--max-weight", "1", "--max-n", "1")
    assert r.returncode == 1 and "FAIL" in r.stdout
