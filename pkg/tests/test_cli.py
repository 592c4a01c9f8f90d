import json
import os
import subprocess
import sys

import numpy as np
import pytest

from blochx.bloch import pure_state_from_direction
from blochx.cli import main, parse_args
from blochx.serialize import dumps, matrix_from_json, matrix_to_json


def run_cli(args, cwd, env_extra=None):
    env = os.environ.copy()
    env.pop("BLOCHX_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "blochx", *args],
                          capture_output=True, text=True, cwd=cwd, env=env)


def write_state(path, matrix):
    path.write_text(dumps({"blochx_schema": 1, "kind": "state",
                           "n": matrix.shape[0],
                           "matrix": matrix_to_json(matrix)}) + "\n")


@pytest.fixture
def psi_file(tmp_path):
    path = tmp_path / "psi.json"
    write_state(path, pure_state_from_direction(np.pi / 3, 0.0).matrix)
    return path


class TestParseArgs:
    def test_measure_config(self):
        cfg = parse_args(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", "psi.json", "--samples", "1000"])
        assert cfg.command == "measure"
        assert cfg.seed == 0
        assert cfg.params.samples == 1000

    def test_verify_composite_config(self):
        cfg = parse_args(["verify", "--prop", "2bis", "--s1", "0.5", "--s2", "0.5"])
        assert cfg.command == "verify"
        assert cfg.params.s1 == 0.5

    def test_seed_env_fallback(self, monkeypatch):
        monkeypatch.setenv("BLOCHX_SEED", "99")
        cfg = parse_args(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", "psi.json", "--samples", "10"])
        assert cfg.seed == 99

    def test_explicit_seed_beats_env(self, monkeypatch):
        monkeypatch.setenv("BLOCHX_SEED", "99")
        cfg = parse_args(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", "psi.json", "--samples", "10", "--seed", "3"])
        assert cfg.seed == 3


class TestGenerators:
    def test_pauli_matrices_in_report(self, tmp_path):
        out = tmp_path / "gen.json"
        result = run_cli(["generators", "--n", "2", "--json", str(out)], tmp_path)
        assert result.returncode == 0
        report = json.loads(out.read_text())
        assert report["blochx_schema"] == 1
        assert report["count"] == 3
        mats = [matrix_from_json(m) for m in report["generators"]]
        assert np.array_equal(mats[0], np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.array_equal(mats[1], np.array([[0, -1j], [1j, 0]], dtype=complex))
        assert np.array_equal(mats[2], np.array([[1, 0], [0, -1]], dtype=complex))

    def test_stdout_default(self, tmp_path):
        result = run_cli(["generators", "--n", "3"], tmp_path)
        assert result.returncode == 0
        assert json.loads(result.stdout)["count"] == 8


class TestBloch:
    def test_state_round_trip(self, tmp_path, psi_file):
        first = run_cli(["bloch", "--state", str(psi_file), "--to-vector"], tmp_path)
        assert first.returncode == 0
        vec_report = json.loads(first.stdout)
        assert vec_report["kind"] == "bloch_vector"
        vec_file = tmp_path / "vec.json"
        vec_file.write_text(first.stdout)
        second = run_cli(["bloch", "--state", str(vec_file), "--to-matrix"], tmp_path)
        assert second.returncode == 0
        back = matrix_from_json(json.loads(second.stdout)["matrix"])
        original = pure_state_from_direction(np.pi / 3, 0.0).matrix
        assert np.max(np.abs(back - original)) < 1e-10

    def test_purity_reported(self, tmp_path, psi_file):
        result = run_cli(["bloch", "--state", str(psi_file)], tmp_path)
        report = json.loads(result.stdout)
        assert abs(report["purity"] - 1.0) < 1e-10
        assert abs(report["norm"] - 1.0) < 1e-10


class TestSpin:
    def test_emit_observable(self, tmp_path):
        out = tmp_path / "obs.json"
        result = run_cli(["spin", "--s", "1", "--direction", "0,0,1",
                          "--emit", str(out)], tmp_path)
        assert result.returncode == 0
        report = json.loads(out.read_text())
        assert report["eigenvalues"] == [-1, 0, 1]
        assert len(report["eigenstates"]) == 3

    def test_direction_normalization_warning(self, tmp_path):
        result = run_cli(["spin", "--s", "0.5", "--direction", "0,0,2"], tmp_path)
        assert result.returncode == 0
        assert "normaliz" in result.stderr


class TestMeasure:
    def test_report_schema_and_determinism_fields(self, tmp_path, psi_file):
        out = tmp_path / "rep.json"
        result = run_cli(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", str(psi_file), "--samples", "20000",
                          "--seed", "42", "--out", str(out)], tmp_path)
        assert result.returncode == 0
        report = json.loads(out.read_text())
        for field in ("born", "empirical", "max_dev", "records_sample",
                      "std_errors", "counts", "outcome_eigenvalues"):
            assert field in report
        assert sum(report["counts"]) == 20000
        assert report["seed"] == 42
        assert len(report["records_sample"]) == 10
        # theta = pi/3 against the +z axis: outcome probabilities 1/4, 3/4
        assert abs(report["born"][0] - 0.25) < 1e-12
        assert abs(report["born"][1] - 0.75) < 1e-12
        assert report["max_dev"] < 0.02

    def test_trajectory_csv(self, tmp_path, psi_file):
        out = tmp_path / "rep.json"
        result = run_cli(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", str(psi_file), "--samples", "100",
                          "--seed", "1", "--trajectory-steps", "5",
                          "--out", str(out)], tmp_path)
        assert result.returncode == 0
        csv_path = tmp_path / "rep.trajectory.csv"
        assert csv_path.exists()
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "tau,coord_0,coord_1,coord_2"
        assert len(lines) == 6
        assert json.loads(out.read_text())["trajectory_csv"] == str(csv_path)

    def test_env_seed_fallback_matches_flag(self, tmp_path, psi_file):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        base = ["measure", "--s", "0.5", "--direction", "0,0,1",
                "--state", str(psi_file), "--samples", "500"]
        run_cli([*base, "--seed", "7", "--out", str(out_a)], tmp_path)
        run_cli([*base, "--out", str(out_b)], tmp_path, env_extra={"BLOCHX_SEED": "7"})
        a = json.loads(out_a.read_text())
        b = json.loads(out_b.read_text())
        assert a["empirical"] == b["empirical"]
        assert b["seed"] == 7


class TestCompose:
    def test_coupled_basis_report(self, tmp_path):
        result = run_cli(["compose", "--s1", "0.5", "--s2", "0.5",
                          "--direction", "0,0,1", "--basis", "coupled"], tmp_path)
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["n"] == 4
        labels = [(e["s"], e["mu_s"]) for e in report["entries"]]
        assert labels == [(0, 0), (1, -1), (1, 0), (1, 1)]

    def test_product_basis_report(self, tmp_path):
        result = run_cli(["compose", "--s1", "0.5", "--s2", "1",
                          "--direction", "1,0,0", "--basis", "product"], tmp_path)
        report = json.loads(result.stdout)
        assert len(report["entries"]) == 6
        assert {"mu1", "mu2", "amplitudes"} <= set(report["entries"][0])


class TestVerify:
    def test_prop1_passes(self, tmp_path):
        out = tmp_path / "v.json"
        result = run_cli(["verify", "--prop", "1", "--s", "1", "--trials", "10",
                          "--seed", "7", "--out", str(out)], tmp_path)
        assert result.returncode == 0
        report = json.loads(out.read_text())
        for field in ("max_deviation", "trials", "pass"):
            assert field in report
        assert report["pass"] is True

    def test_prop2bis_passes(self, tmp_path):
        result = run_cli(["verify", "--prop", "2bis", "--s1", "0.5", "--s2", "0.5",
                          "--trials", "5", "--seed", "3"], tmp_path)
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["checks"]["basis_agreement_deviation"] < 1e-10

    def test_impossible_tolerance_exits_2(self, tmp_path):
        result = run_cli(["verify", "--prop", "1", "--s", "0.5", "--trials", "5",
                          "--seed", "1", "--tolerance", "0"], tmp_path)
        assert result.returncode == 2
        assert json.loads(result.stdout)["pass"] is False


class TestErrors:
    def test_invalid_spin_names_flag(self, tmp_path):
        result = run_cli(["measure", "--s", "0.4", "--direction", "0,0,1",
                          "--state", "x.json", "--samples", "10"], tmp_path)
        assert result.returncode == 1
        assert "--s" in result.stderr and "invalid spin" in result.stderr
        assert len(result.stderr.strip().splitlines()) == 1

    def test_unknown_flag(self, tmp_path):
        result = run_cli(["generators", "--n", "2", "--bogus"], tmp_path)
        assert result.returncode == 1
        assert "--bogus" in result.stderr

    def test_unreadable_state_file(self, tmp_path):
        result = run_cli(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", "missing.json", "--samples", "10"], tmp_path)
        assert result.returncode == 1
        assert "--state" in result.stderr

    def test_malformed_direction(self, tmp_path):
        result = run_cli(["spin", "--s", "0.5", "--direction", "0,0"], tmp_path)
        assert result.returncode == 1
        assert "--direction" in result.stderr

    def test_trajectory_requires_out(self, tmp_path, psi_file):
        result = run_cli(["measure", "--s", "0.5", "--direction", "0,0,1",
                          "--state", str(psi_file), "--samples", "10",
                          "--trajectory-steps", "5"], tmp_path)
        assert result.returncode == 1
        assert "--out" in result.stderr

    def test_verify_prop1_needs_spin(self, tmp_path):
        result = run_cli(["verify", "--prop", "1"], tmp_path)
        assert result.returncode == 1
        assert "--s" in result.stderr

    def test_state_dimension_mismatch(self, tmp_path, psi_file):
        result = run_cli(["measure", "--s", "1", "--direction", "0,0,1",
                          "--state", str(psi_file), "--samples", "10"], tmp_path)
        assert result.returncode == 1
        assert "does not match" in result.stderr

    def test_help_exits_zero(self, tmp_path):
        result = run_cli(["--help"], tmp_path)
        assert result.returncode == 0
        assert "generators" in result.stdout

    def test_in_process_main_usage_error(self, capsys):
        code = main(["measure", "--s", "0.5"])
        assert code == 1
        assert "error:" in capsys.readouterr().err
