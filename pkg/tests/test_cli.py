"""CLI surface: determinism, schemas, exit codes, and the verify suites."""

import json
import subprocess
import sys

import numpy as np
import pytest

from rsprod.cli import main
from rsprod.degrees import degree_profile
from rsprod.verify import check_field_axioms
from rsprod.field import field_new


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bounds_csv_schema_and_determinism(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "bounds", "--n", "32", "--r", "8", "--k", "1..64")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == (
        "k,partial_k,rs_degree_lower,lower_opt,lrc_upper,grid_upper,"
        "gridv2_upper,exact,witness_a,witness_b,witness_nr,witness_nc"
    )
    assert len(lines) == 65
    # k = 1 has no alternative upper bound: blank cell
    first = lines[1].split(",")
    assert first[0] == "1" and first[6] == ""
    code2, out2, _ = run_cli(capsys, "bounds", "--n", "32", "--r", "8", "--k", "1..64")
    assert out2 == out
    # rows respect the ordering invariant
    for line in lines[1:]:
        vals = line.split(",")
        rs, lo = int(vals[2]), int(vals[3])
        uppers = [int(vals[4]), int(vals[5])] + ([int(vals[6])] if vals[6] else [])
        assert rs <= lo <= min(uppers)


def test_bounds_reference_value(capsys):
    code, out, _ = run_cli(
        capsys, "bounds", "--n", "128", "--r", "64", "--k", "4032", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["lower_opt"] == 4940


def test_bounds_exact_column_small_code(capsys):
    code, out, _ = run_cli(
        capsys, "bounds", "--n", "4", "--r", "2", "--k", "1..4", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)
    assert [row["exact"] for row in rows] == [16, 15, 12, 9]


def test_profile_json_matches_library(capsys):
    code, out, _ = run_cli(capsys, "profile", "--n", "4", "--r", "3")
    assert code == 0
    payload = json.loads(out)
    prof = degree_profile(4, 3)
    assert payload["D"] == list(prof.D)
    assert [bp["k"] for bp in payload["breakpoints"]] == [3, 5, 7, 8, 9]
    assert payload["max_degree_exceeds_length"] is True  # 16 >= 16 at r = 3
    code, out, _ = run_cli(capsys, "profile", "--n", "4", "--r", "2")
    assert json.loads(out)["max_degree_exceeds_length"] is False


def test_build_and_encode_roundtrip(capsys, tmp_path):
    path = tmp_path / "gen.csv"
    code, _, _ = run_cli(
        capsys, "build", "--q-log", "2", "--r", "2", "--k", "3", "--out", str(path)
    )
    assert code == 0
    text = path.read_text()
    header = json.loads(text.split("\n", 1)[0][2:])
    assert header["q"] == 4 and header["k"] == 3
    rows = [
        [int(x, 16) for x in line.split(",")]
        for line in text.strip().split("\n")[1:]
    ]
    code, out, _ = run_cli(
        capsys, "encode", "--q-log", "2", "--r", "2", "--k", "3", "--msg", "1,0,0"
    )
    assert code == 0
    assert [int(x, 16) for x in out.strip().split(",")] == rows[0]


def test_distance_exhaustive_json(capsys):
    code, out, _ = run_cli(
        capsys, "distance", "--q-log", "2", "--r", "2", "--k", "4", "--spectrum"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "exhaustive"
    assert payload["distance"] == 9
    assert payload["equals_lower_bound"] is True
    assert payload["spectrum"]["0"] == 1
    assert sum(payload["spectrum"].values()) == 16**4


def test_distance_sampled_fallback(capsys):
    code, out, _ = run_cli(
        capsys,
        "distance",
        "--q-log",
        "2",
        "--r",
        "3",
        "--k",
        "9",
        "--budget",
        "65536",
        "--trials",
        "2000",
        "--seed",
        "7",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "sampled"
    assert payload["conclusive"] is False
    assert payload["upper_estimate"] >= payload["lower_bound"]


def test_erasure_sim_models(capsys):
    code, out, _ = run_cli(
        capsys,
        "erasure-sim",
        "--q-log",
        "2",
        "--r",
        "2",
        "--k",
        "4",
        "--model",
        "random-t-cells",
        "--t",
        "0",
        "--trials",
        "10",
        "--seed",
        "3",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rate"] == 1.0  # no erasures: always recoverable
    # canonical block pattern with a*b >= r^2 - k + 1: never recoverable
    code, out, _ = run_cli(
        capsys,
        "erasure-sim",
        "--q-log",
        "2",
        "--r",
        "2",
        "--k",
        "4",
        "--model",
        "fig1",
        "--a",
        "1",
        "--b",
        "1",
    )
    payload = json.loads(out)
    assert payload["trials"] == 1 and payload["recoverable"] == 0


def test_erasure_sim_subcode_dominates(capsys):
    # same seed, same masks: the one-heavy-parity subcode recovers at
    # least as often as the full product code, across the whole p sweep
    for p in ("0.15", "0.25", "0.35", "0.45"):
        rates = {}
        for k in (9, 8):
            code, out, _ = run_cli(
                capsys,
                "erasure-sim",
                "--q-log", "3", "--r", "3", "--k", str(k),
                "--model", "uniform-p", "--p", p,
                "--trials", "40", "--seed", "11",
            )
            assert code == 0
            rates[k] = json.loads(out)["rate"]
        assert rates[8] >= rates[9]


def test_erasure_sim_determinism(capsys):
    argv = [
        "erasure-sim", "--q-log", "2", "--r", "2", "--k", "3",
        "--model", "uniform-p", "--p", "0.3", "--trials", "50", "--seed", "5",
    ]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_figure_output(capsys):
    code, out, _ = run_cli(capsys, "figure", "--name", "eg1")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "k,value,series"
    series = {line.split(",")[2] for line in lines[1:]}
    assert series == {"lower_opt", "grid_upper", "gridv2_upper"}
    # 64 points for two curves, 63 for the k >= 2 one
    assert len(lines) == 1 + 64 + 64 + 63


def test_usage_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "bounds", "--n", "4", "--r", "2", "--k", "1..9")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "profile", "--n", "4", "--r", "9")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--n", "4"])  # missing required flags
    assert exc.value.code == 2


def test_verify_fast_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--level", "fast")
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from rsprod import cli as cli_mod
    from rsprod.verify import CheckResult

    monkeypatch.setattr(
        cli_mod.verify,
        "run_checks",
        lambda *a, **k: [CheckResult("injected", False, "expected 1 got 2")],
    )
    code, out, _ = run_cli(capsys, "verify")
    assert code == 1
    assert "FAIL" in out and "expected 1 got 2" in out


def test_verify_detects_corrupted_field():
    ctx = field_new(4)
    ctx.reduction_poly = 0b10101  # reducible: breaks inverse roundtrip
    msg = check_field_axioms(ctx, np.random.default_rng(0))
    assert msg is not None and "field axiom" in msg


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rsprod.cli", "profile", "--n", "4", "--r", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["D"] == [0, 1, 4, 8]
