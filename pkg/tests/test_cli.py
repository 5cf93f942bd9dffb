import json
import subprocess
import sys

import numpy as np
import pytest

from shsqrt.cli import main
from shsqrt.mmio import read_matrix, write_matrix


def run(*argv):
    return main([str(a) for a in argv])


def test_generate_sqrt_check(tmp_path, capsys):
    w = tmp_path / "w.mtx"
    assert run("generate", "--example", "1", "-o", w) == 0
    assert read_matrix(w).shape == (10, 10)
    for alg in ("schur", "skewham", "ham"):
        r, rep = tmp_path / f"{alg}.mtx", tmp_path / f"{alg}.json"
        assert run("sqrt", "--alg", alg, "-i", w, "-o", r, "--report", rep) == 0
        report = json.loads(rep.read_text())
        assert report["relative_residual"] <= 1e-13
        assert set(report) == {"algorithm", "order", "relative_residual", "alpha", "hamiltonian_defect",
                               "skew_hamiltonian_defect", "flops", "wall_time"}
        capsys.readouterr()
        assert run("check", "-i", r, "--against", w) == 0
        assert json.loads(capsys.readouterr().out)["ok"] is True


def test_sqrt_report_to_stdout(tmp_path, capsys):
    w = tmp_path / "w.mtx"
    run("generate", "--example", "2", "-o", w)
    capsys.readouterr()
    assert run("sqrt", "--alg", "skewham", "-i", w, "-o", tmp_path / "r.mtx") == 0
    assert json.loads(capsys.readouterr().out)["algorithm"] == "SkewHamiltonianSchur"


def test_check_fails_on_bad_root(tmp_path, capsys):
    write_matrix(tmp_path / "x.mtx", np.eye(2))
    write_matrix(tmp_path / "w.mtx", 4 * np.eye(2))
    assert run("check", "-i", tmp_path / "x.mtx", "--against", tmp_path / "w.mtx") == 1


@pytest.mark.parametrize("matrix,alg,code", [
    (np.block([[np.eye(2), np.eye(2)], [np.eye(2), -np.eye(2)]]), "skewham", 4),
    (np.diag([1.0, -1.0, 1.0, -1.0]), "skewham", 5),
    (np.diag([1.0, -1.0, 1.0, -1.0]), "schur", 5),
    (np.diag([1.0, 0.0, 1.0, 0.0]), "ham", 6),
    (np.eye(3), "skewham", 2),
])
def test_error_exit_codes(tmp_path, matrix, alg, code, capsys):
    write_matrix(tmp_path / "w.mtx", matrix)
    assert run("sqrt", "--alg", alg, "-i", tmp_path / "w.mtx", "-o", tmp_path / "r.mtx") == code
    assert "shsqrt:" in capsys.readouterr().err
    assert not (tmp_path / "r.mtx").exists()


def test_parse_and_file_errors(tmp_path):
    bad = tmp_path / "bad.mtx"
    bad.write_text("not a matrix\n")
    assert run("sqrt", "--alg", "schur", "-i", bad, "-o", tmp_path / "r.mtx") == 3
    assert run("sqrt", "--alg", "schur", "-i", tmp_path / "none.mtx", "-o", tmp_path / "r.mtx") == 8


def test_config_errors(tmp_path, monkeypatch):
    assert run("generate", "--example", "3", "--size", "5", "-o", tmp_path / "w.mtx") == 2
    assert run("generate", "--example", "3", "--seed", "-1", "-o", tmp_path / "w.mtx") == 2
    assert run("bench", "--sizes", "") == 2
    write_matrix(tmp_path / "w.mtx", np.eye(4))
    monkeypatch.setenv("SHSQRT_TOL", "abc")
    assert run("sqrt", "--alg", "skewham", "-i", tmp_path / "w.mtx", "-o", tmp_path / "r.mtx") == 2


def test_env_tolerance_controls_validation(tmp_path, monkeypatch):
    M = np.eye(4)
    M[0, 3] = 1e-6  # G block loses skew symmetry at the 1e-6 level
    write_matrix(tmp_path / "w.mtx", M)
    args = ("sqrt", "--alg", "skewham", "-i", tmp_path / "w.mtx", "-o", tmp_path / "r.mtx")
    assert run(*args) == 4
    monkeypatch.setenv("SHSQRT_TOL", "1e-5")
    assert run(*args) == 0


def test_bench_small(capsys):
    assert run("bench", "--sizes", "4", "--json") == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 1 and rows[0]["size"] == 4
    assert rows[0]["residual_schur"] <= 1e-12 and rows[0]["residual_skewham"] <= 1e-12
    assert run("bench", "--sizes", "4,6") == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 3


def test_bench_example3(capsys):
    assert run("bench", "--sizes", "10", "--example", "3", "--cases", "2", "--json") == 0
    row = json.loads(capsys.readouterr().out)[0]
    assert row["cases"] == 2


def test_generate_records_seed(tmp_path):
    w = tmp_path / "w.mtx"
    run("generate", "--example", "3", "--size", "6", "--seed", "9", "-o", w)
    assert "seed=9 rng=PCG64" in w.read_text()


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "shsqrt.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("shsqrt ")
