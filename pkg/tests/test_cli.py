import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from jacobi_muntz import __version__
from jacobi_muntz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    return rows[0], np.array(rows[1:], dtype=float)


def test_quad_nodes_reference_set(capsys, tmp_path):
    argv = ["quad-nodes", "--alpha", "0.5", "--beta", "1.5", "--eta", "2", "--mu", "0.5",
            "--n", "50", "--b", "10", "--sigma", "0.5"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith(f"# jacobi_muntz {__version__}") and "alpha=0.5" in first
    header, data = table(out)
    assert header == ["j", "node", "w_base", "w_gjmqr1", "w_gjmqr2"]
    assert data.shape == (51, 5)
    assert np.all(np.diff(data[:, 1]) > 0) and np.all(data[:, 1] < 10)
    # determinism, and file output matches stdout byte for byte
    path = tmp_path / "q.csv"
    assert main(argv + ["--output", str(path)]) == 0
    assert main(argv + ["--output", str(path) + "2"]) == 0
    assert path.read_bytes() == (tmp_path / "q.csv2").read_bytes()
    assert path.read_text() == out
    assert b"\r\n" not in path.read_bytes()


def test_ortho_and_eigen(capsys):
    code, out, _ = run(capsys, "ortho-check")
    assert code == 0
    header, data = table(out)
    assert header == ["n", "m", "gram", "expected", "abs_dev"] and data.shape == (169, 5)
    assert np.all(data[:, 4] <= 1e-9 * np.maximum(1, data[:, 3].max()))
    code, out, _ = run(capsys, "eigen-check", "--n-max", "5")
    header, data = table(out)
    assert header == ["n", "eigenvalue", "ratio_n2mu"] and data.shape == (5, 3)


def test_project(capsys):
    code, out, _ = run(capsys, "project", "--n", "20")
    assert code == 0
    assert any(l.startswith("# l2_error=") for l in out.splitlines())
    code, out, _ = run(capsys, "project", "--func", "abs", "--gamma", "1.5", "--b", "1")
    assert code == 0


def test_ode_commands(capsys):
    code, out, err = run(capsys, "ode", "--n", "8")
    assert code == 0 and "warning" in err  # the steady set sits on a constraint boundary
    header, data = table(out)
    assert header == ["j", "node", "numeric", "exact", "abs_err"]
    assert data[:, 4].max() < 1e-9
    code, out, _ = run(capsys, "ode-sweep", "--n-max", "6")
    header, data = table(out)
    assert header == ["n", "err_inf", "cond_jmf", "cond_muntz"] and data.shape == (6, 4)


def test_pde(capsys):
    code, out, _ = run(capsys, "pde", "--n", "10", "--t-final", "0.5")
    assert code == 0
    _, data = table(out)
    assert data[:, 4].max() < 1e-8


def test_burgers_zero_case(capsys):
    code, out, _ = run(capsys, "burgers", "--case", "0", "--n", "6", "--t-final", "0.5")
    assert code == 0
    _, data = table(out)
    assert np.all(data[:, 2] == 0.0)


def test_burgers_short(capsys):
    code, out, _ = run(capsys, "burgers", "--case", "1", "--n", "6", "--t-final", "0.5")
    assert code == 0
    _, data = table(out)
    assert data[:, 4].max() < 1e-6


def test_exit_codes(capsys):
    code, _, err = run(capsys, "quad-nodes", "--alpha", "-2")
    assert code == 2 and "alpha > -1" in err
    code, _, err = run(capsys, "burgers-sweep", "--case", "0")
    assert code == 2
    code, _, err = run(capsys, "burgers", "--kind", "1", "--n", "4")
    assert code == 2
    code, _, err = run(capsys, "pde", "--rtol", "1e-20", "--n", "4")
    assert code == 2
    # GJMQR weight multiplier overflows: numerical failure
    code, _, err = run(capsys, "quad-nodes", "--sigma", "0.1", "--eta", "-3000", "--n", "100")
    assert code == 1 and "numerical failure" in err


def test_entry_point():
    out = subprocess.run([sys.executable, "-m", "jacobi_muntz.cli", "--help"],
                         capture_output=True, text=True, check=True).stdout
    assert "burgers-sweep  n,E2,Einf" in out
    out = subprocess.run([sys.executable, "-m", "jacobi_muntz.cli", "--version"],
                         capture_output=True, text=True, check=True).stdout
    assert out.strip() == __version__
