import csv
import io
import json
import subprocess
import sys

import pytest

from cryptoherm.cli import EXIT_CONFIG, EXIT_NUMERIC, main
from cryptoherm.reference_data import SPECTRA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--N", "2", "--a", "2")
    assert code == 0
    assert json.loads(out) == {"N": 2, "a": 2.0, "energies": [2.0, 6.0]}


def test_spectrum_csv_reference_grid(capsys):
    code, out, _ = run(capsys, "spectrum", "--N", "6", "9", "--a", "1", "2", "3", "--format", "csv")
    assert code == 0
    assert "\r\n" in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    for row in rows:
        N, a = int(row["N"]), float(row["a"])
        reference = SPECTRA[(N, a)]
        got = [float(row[f"E_{i}"]) for i in (0, 1, N - 2, N - 1)]
        assert got == pytest.approx(reference, rel=1e-8)
        assert row.get(f"E_{N}", "") in ("", None)


def test_spectrum_deterministic(capsys):
    first = run(capsys, "spectrum", "--N", "7", "--a", "5/2")[1]
    assert run(capsys, "spectrum", "--N", "7", "--a", "5/2")[1] == first


def test_metric_exact_with_verify(capsys):
    code, out, err = run(capsys, "metric", "--N", "4", "--a", "1", "--k", "3", "--verify")
    assert code == 0
    data = json.loads(out)
    assert data["P"][3]["bands"][0][3] == "-16/3"
    assert "residual: 0 (exact)" in err
    assert data["verification"]["oracle_equal"] is True


def test_metric_oracle_exceptional_element(capsys):
    code, out, _ = run(capsys, "metric", "--N", "9", "--a", "1", "--k", "2", "--source", "oracle")
    assert code == 0
    # 141120 * 42 / 9!
    assert json.loads(out)["P"][2]["bands"][0][8] == "49/3"


def test_metric_theta_float(capsys):
    code, out, _ = run(capsys, "metric", "--N", "5", "--a", "1", "--k", "1", "--alpha", "0.1", "--backend", "float")
    assert code == 0
    theta = json.loads(out)["theta"]
    assert theta[0][:2] == pytest.approx([1.0, 0.4])
    assert theta[1][0] == pytest.approx(0.1)


def test_analyze_report(capsys):
    code, out, _ = run(capsys, "analyze", "--N", "6", "--a", "1", "--k", "1", "--alpha", "0.02", "--ray", "1")
    assert code == 0
    data = json.loads(out)
    assert data["alpha_max"][0] == pytest.approx(0.0639, abs=1e-4)


def test_analyze_evolve_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--N", "4", "--a", "1", "--evolve", "--steps", "5", "--tmax", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert set(rows[0]) == {"t", "s", "re_psi", "im_psi", "rho"}
    by_t = {}
    for r in rows:
        by_t.setdefault(r["t"], 0.0)
        by_t[r["t"]] += float(r["rho"])
    assert len(by_t) == 6
    assert all(abs(v - 1) < 1e-9 for v in by_t.values())


@pytest.mark.parametrize(
    "argv",
    [
        ["metric", "--N", "3", "--a", "-2", "--k", "1"],
        ["metric", "--N", "0", "--a", "1"],
        ["metric", "--N", "4", "--a", "1", "--k", "2", "--alpha", "0.1"],
        ["spectrum", "--N", "4", "--a", "abc"],
        ["nonsense"],
    ],
)
def test_config_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_CONFIG


def test_numeric_errors(capsys):
    assert run(capsys, "spectrum", "--N", "4", "--a", "-1.5")[0] == EXIT_NUMERIC
    assert run(capsys, "analyze", "--N", "4", "--a", "1", "--k", "1", "--alpha", "10", "--evolve")[0] == EXIT_NUMERIC


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify-paper", "--Nmax", "6")
    assert code == 0
    assert out.strip().endswith("checks passed")


def test_out_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    assert run(capsys, "spectrum", "--N", "3", "--a", "1", "--out", str(path))[0] == 0
    assert json.loads(path.read_text())["N"] == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cryptoherm.cli", "spectrum", "--N", "2", "--a", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["energies"] == pytest.approx([2 - 2**0.5, 2 + 2**0.5])
