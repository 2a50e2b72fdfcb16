import json
import subprocess
import sys

import pytest

from kummerstokes import exactseries
from kummerstokes.cli import run_command

REF_B_COL1 = ["0.33333333333", "0.15246913580", "0.15301905742", "0.35298391333",
               "1.1713369417", "4.9744012755", "26.026392853"]


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_reference_values(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "1/3", "--b", "1", "--alpha", "1/3", "--jmax", "6")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:]]
    assert len(rows) == 7
    assert [r[1] for r in rows] == REF_B_COL1


def test_coeffs_from_x(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "0.75", "--b", "0.5", "--x", "20",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["alpha"] == "0" and doc["B"][0] == "2/3"


def test_residual_reference_values(capsys):
    code, out, _ = run(capsys, "residual", "--a", "0.75", "--b", "0.5", "--x", "20", "--M", "6")
    assert code == 0
    assert "0.012964445718" in out.splitlines()[-1]
    assert "m0 = 21" in out


def test_residual_csv(capsys):
    code, out, _ = run(capsys, "residual", "--a", "0.5", "--b", "1.25", "--x", "20",
                       "--m0", "19", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "M,H_M,first_omitted_A,first_omitted_B"
    assert len(lines) == 9 and lines[-1].startswith("F,0.0468912031")


def test_ghat(capsys):
    code, out, _ = run(capsys, "ghat")
    assert code == 0 and out == "k=0..4 verified\n"


def test_ghat_failure_exit_code(capsys, monkeypatch):
    bad = dict(exactseries.PRINTED_GHAT)
    bad[3] = bad[3] + 1
    monkeypatch.setattr(exactseries, "PRINTED_GHAT", bad)
    code, out, err = run(capsys, "ghat")
    assert code == 2
    assert "k=3 mismatch at gamma^0" in out


def test_terminant(capsys):
    code, out, _ = run(capsys, "terminant", "--a", "0.75", "--b", "0.5", "--x", "20",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["T_re"] == "0.5" and doc["nu"] == "20"


def test_wright(capsys):
    code, out, _ = run(capsys, "wright", "--alpha", "1", "--a", "1/3", "--b", "1", "--x", "30",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["conjecture_value"] == "0.5" and doc["j_star"] == 31


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ["residual", "--a", "zz", "--b", "1", "--x", "20"],
    ["bogus"],
    ["residual", "--a", "0.5", "--b", "0", "--x", "20"],
    ["coeffs", "--a", "1/3", "--b", "1"],
    ["residual", "--a", "0.5", "--b", "1.25", "--x", "20", "--m0", "25"],
    ["residual", "--a", "0.5", "--b", "1.25", "--x", "20", "--precision", "0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == "" and err.startswith("error:")


def test_offending_flag_named(capsys):
    _, _, err = run(capsys, "residual", "--a", "zz", "--b", "1", "--x", "20")
    assert "--a" in err


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("KUMMERSTOKES_PRECISION", "45")
    _, out, _ = run(capsys, "residual", "--a", "0.75", "--b", "0.5", "--x", "20", "--M", "1",
                    "--format", "json")
    assert json.loads(out)["precision"]["target_digits"] == 45


def test_json_deterministic(capsys):
    argv = ["residual", "--a", "-0.75", "--b", "1.25", "--x", "20", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_cache_warm_equals_cold(capsys, tmp_path):
    cache = tmp_path / "g.json"
    argv = ["residual", "--a", "0.75", "--b", "0.5", "--x", "20", "--format", "json"]
    cold = run(capsys, *argv)[1]
    first = run(capsys, *argv, "--cache", str(cache))[1]
    assert cache.exists()
    warm = run(capsys, *argv, "--cache", str(cache))[1]
    assert cold == first == warm


def test_corrupted_cache_rebuilt(capsys, tmp_path):
    cache = tmp_path / "g.json"
    gp = list(exactseries.g_polys(24))
    gp[6] = gp[6] * 2
    exactseries.save_gpolys(cache, gp)
    code, _, err = run(capsys, "ghat", "--cache", str(cache))
    assert code == 0 and "rebuilding cache" in err
    assert exactseries.load_gpolys(cache) == exactseries.g_polys(24)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kummerstokes", "ghat"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "k=0..4 verified\n"
