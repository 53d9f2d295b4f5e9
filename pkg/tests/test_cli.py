"""CLI contract tests: exit codes, schema headers, determinism, formats."""

import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from lattice_forge.cli import main
from lattice_forge.metrics import lattice_min_distance
from lattice_forge.lattice import subgroup_generating_vector
from lattice_forge.sphere import mutual_coherence, sphere_frame


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _parse_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_exit_zero_on_success(capsys):
    code, out, _ = _run(capsys, "construct", "--d", "2", "--n", "5", "--deterministic")
    assert code == 0
    assert out.startswith("# lattice-forge v1\n")


def test_exit_two_on_usage_errors(capsys):
    assert _run(capsys, "nonsense")[0] == 2
    assert _run(capsys, "construct", "--d", "2")[0] == 2  # missing --n
    assert _run(capsys, "construct", "--d", "2", "--n", "5", "--format", "xml")[0] == 2


def test_exit_three_on_admissibility(capsys):
    code, _, err = _run(capsys, "construct", "--d", "3", "--n", "12")
    assert code == 3
    assert "2d does not divide n-1" in err
    assert _run(capsys, "sphere", "--d", "7", "--n", "29")[0] == 3


def test_exit_four_on_domain_errors(capsys):
    code, _, err = _run(capsys, "construct", "--d", "2", "--n", "9")
    assert code == 4
    assert "prime" in err


def test_help_exits_zero(capsys):
    assert _run(capsys, "--help")[0] == 0


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def test_construct_values_match_library(capsys):
    code, out, _ = _run(capsys, "construct", "--d", "3", "--n", "13", "--deterministic")
    assert code == 0
    rows = _parse_csv(out)
    assert [r["norm"] for r in rows] == ["l1", "l2"]
    assert rows[0]["z"] == "1 4 3"
    rep = lattice_min_distance(subgroup_generating_vector(3, 13), "l1")
    assert float(rows[0]["min_distance"]) == rep.min_distance
    assert int(rows[0]["distinct_distances"]) == 2
    assert int(rows[0]["uniform_multiplicity"]) == 6
    assert rows[0]["bound_holds"] == "true"


def test_construct_korobov_reports_multiplier(capsys):
    code, out, _ = _run(
        capsys, "construct", "--d", "2", "--n", "5", "--method", "korobov", "--deterministic"
    )
    assert code == 0
    rows = _parse_csv(out)
    assert rows[0]["method"] == "korobov"
    assert rows[0]["multiplier"] == "2"
    assert float(rows[0]["min_distance"]) == pytest.approx(0.6, abs=1e-15)


def test_construct_points_out(capsys, tmp_path):
    path = tmp_path / "pts.csv"
    code, _, _ = _run(
        capsys, "construct", "--d", "2", "--n", "5", "--points-out", str(path),
        "--deterministic",
    )
    assert code == 0
    pts = np.loadtxt(path, delimiter=",")
    assert pts.shape == (5, 2)
    np.testing.assert_allclose(pts[1], [0.2, 0.4], atol=0)


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------


def test_deterministic_flag_suppresses_timestamp(capsys):
    _, out1, _ = _run(capsys, "admissible", "--d", "50", "--count", "3", "--deterministic")
    _, out2, _ = _run(capsys, "admissible", "--d", "50", "--count", "3", "--deterministic")
    assert out1 == out2
    assert "generated" not in out1
    _, out3, _ = _run(capsys, "admissible", "--d", "50", "--count", "3")
    assert "# generated" in out3


def test_json_mirrors_csv(capsys):
    _, out_csv, _ = _run(capsys, "admissible", "--d", "50", "--count", "3", "--deterministic")
    _, out_json, _ = _run(
        capsys, "admissible", "--d", "50", "--count", "3", "--deterministic",
        "--format", "json",
    )
    payload = json.loads(out_json)
    assert payload["schema"] == "lattice-forge v1"
    assert payload["columns"] == ["d", "index", "n"]
    assert [r["n"] for r in payload["rows"]] == [101, 401, 601]
    csv_rows = _parse_csv(out_csv)
    assert [int(r["n"]) for r in csv_rows] == [101, 401, 601]


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = _run(
        capsys, "admissible", "--d", "3", "--count", "2", "--deterministic",
        "--output", str(path),
    )
    assert code == 0
    assert out == ""
    text = path.read_text()
    assert text.startswith("# lattice-forge v1\n")
    assert [int(r["n"]) for r in _parse_csv(text)] == [7, 13]


# ---------------------------------------------------------------------------
# benchmarks
# ---------------------------------------------------------------------------


def test_integrate_no_shift_known_value(capsys):
    code, out, _ = _run(
        capsys, "integrate", "--d", "1", "--n", "3", "--method", "subgroup",
        "--runs", "1", "--no-shift", "--deterministic",
    )
    assert code == 0
    rows = _parse_csv(out)
    # {0, 1/3, 2/3} left sum of e^x
    expect = (1 + np.exp(1 / 3) + np.exp(2 / 3)) / 3
    assert float(rows[0]["estimate"]) == pytest.approx(expect, rel=1e-15)
    assert rows[-2]["run"] == "mean"
    assert rows[-1]["run"] == "std"


def test_integrate_deterministic_output_stable(capsys):
    args = (
        "integrate", "--d", "2", "--n", "13", "--runs", "3", "--seed", "7",
        "--deterministic",
    )
    _, out1, _ = _run(capsys, *args)
    _, out2, _ = _run(capsys, *args)
    assert out1 == out2
    rows = _parse_csv(out1)
    assert len(rows) == 3 * 2 + 4  # runs x methods + mean/std per method


def test_boltzmann_cli_small(capsys):
    code, out, _ = _run(
        capsys, "boltzmann", "--d", "3", "--n", "7", "--runs", "2",
        "--gt-samples", "5000", "--deterministic",
    )
    assert code == 0
    rows = _parse_csv(out)
    assert {r["method"] for r in rows} == {"subgroup", "mc"}
    assert all(float(r["exact"]) > 0 for r in rows)


def test_kernel_cli_small(capsys):
    code, out, _ = _run(
        capsys, "kernel", "--samples", "30", "--data-dim", "2", "--n", "13",
        "--runs", "2", "--deterministic",
    )
    assert code == 0
    rows = _parse_csv(out)
    assert set(rows[0].keys()) == {
        "method", "d", "n", "seed", "run", "rel_frobenius", "rel_max"
    }
    assert all(float(r["rel_frobenius"]) >= 0 for r in rows)


def test_sphere_cli_matches_library(capsys):
    code, out, _ = _run(capsys, "sphere", "--d", "50", "--n", "101", "--deterministic")
    assert code == 0
    row = _parse_csv(out)[0]
    rep = mutual_coherence(sphere_frame(25, 101))
    assert float(row["mu"]) == rep.mu
    assert row["bound_holds"] == "true"
    assert row["growth_bound_applicable"] == "false"
    assert int(row["n_vectors"]) == 202


def test_bench_timing_rows(capsys):
    code, out, _ = _run(capsys, "bench-timing", "--d", "2", "--n", "13", "--deterministic")
    assert code == 0
    rows = _parse_csv(out)
    assert [r["method"] for r in rows] == ["subgroup", "korobov"]
    assert all(float(r["seconds"]) >= 0 for r in rows)


def test_threads_env_does_not_change_results(capsys, monkeypatch):
    args = ("construct", "--d", "3", "--n", "13", "--method", "korobov", "--deterministic")
    monkeypatch.setenv("LATTICE_FORGE_THREADS", "1")
    _, out1, _ = _run(capsys, *args)
    monkeypatch.setenv("LATTICE_FORGE_THREADS", "4")
    _, out2, _ = _run(capsys, *args)
    assert out1 == out2
    monkeypatch.setenv("LATTICE_FORGE_THREADS", "zero")
    assert _run(capsys, *args)[0] == 4


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "lattice_forge.cli", "admissible", "--d", "2",
         "--count", "2", "--deterministic"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("# lattice-forge v1\n")
