"""Command-line surface: exit codes, formats, determinism."""

import json
import math
import subprocess
import sys

import pytest

from conevol.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_volume_record(capsys):
    code, out, err = run_cli(
        "volume", "--family", "c2n2", "--n", "1", "--alpha", "0.5",
        "--cross-check", capsys=capsys,
    )
    assert code == 0
    record = json.loads(out)
    assert record["regime"] == "hyperbolic"
    assert record["volume"] == pytest.approx(record["schlafli_volume"], abs=1e-6)
    assert record["alpha_K"] == pytest.approx(2 * math.pi / 3, abs=1e-6)


def test_volume_out_of_range_exit_2(capsys):
    code, out, err = run_cli(
        "volume", "--family", "c2n2", "--n", "1", "--alpha", "6.28", capsys=capsys
    )
    assert code == 2
    assert "beyond the spherical band" in err


def test_volume_bad_n_exit_1(capsys):
    code, out, err = run_cli(
        "volume", "--family", "c2n2", "--n", "0", "--alpha", "1.0", capsys=capsys
    )
    assert code == 1
    assert "nonzero" in err


def test_volume_bad_family_exit_1(capsys):
    code, out, err = run_cli(
        "volume", "--family", "bogus", "--n", "1", "--alpha", "1.0", capsys=capsys
    )
    assert code == 1
    assert "unknown family" in err


def test_degrees_flag(capsys):
    code, out, _ = run_cli(
        "volume", "--family", "c2n2", "--n", "1", "--alpha", "60", "--degrees",
        capsys=capsys,
    )
    assert code == 0
    record = json.loads(out)
    assert record["alpha"] == pytest.approx(math.radians(60), rel=1e-10)
    assert record["input_degrees"] is True


def test_critical_angle_output(capsys):
    code, out, _ = run_cli(
        "critical-angle", "--family", "c2n2", "--n", "1", capsys=capsys
    )
    assert code == 0
    assert out.startswith("alpha_K=2.0943951024")


def test_critical_angle_torus_member_exit_1(capsys):
    code, _, err = run_cli(
        "critical-angle", "--family", "c2nm2n", "--n", "1", capsys=capsys
    )
    assert code == 1
    assert "no" in err


def test_sweep_csv_contract(tmp_path, capsys):
    out_file = tmp_path / "sweep.csv"
    argv = [
        "sweep", "--family", "c2n2", "--n", "1", "--alpha-start", "0.4",
        "--alpha-stop", "3.8", "--count", "6", "--out", str(out_file),
    ]
    assert main(argv) == 0
    text = out_file.read_text(encoding="utf-8")
    lines = text.splitlines()
    assert lines[0] == "alpha,regime,volume,error_estimate,l_alpha,alpha_K,status"
    assert len(lines) == 7
    assert all(line.endswith("ok") for line in lines[1:])
    # determinism: a second run is bitwise identical, threads or not
    out2 = tmp_path / "sweep2.csv"
    assert main(argv[:-1] + [str(out2), "--jobs", "3"]) == 0
    assert out2.read_text(encoding="utf-8") == text


def test_sweep_monotone_hyperbolic_rows(tmp_path):
    out_file = tmp_path / "hyp.csv"
    assert main([
        "sweep", "--family", "c2n2", "--n", "1", "--alpha-start", "0.1",
        "--alpha-stop", "2.0", "--count", "20", "--out", str(out_file),
    ]) == 0
    rows = out_file.read_text().splitlines()[1:]
    vols = [float(r.split(",")[2]) for r in rows if r.split(",")[1] == "hyperbolic"]
    assert all(a > b for a, b in zip(vols, vols[1:]))


def test_sweep_json_metadata(tmp_path):
    out_file = tmp_path / "sweep.json"
    assert main([
        "sweep", "--family", "c2n3", "--n", "1", "--alpha-start", "1.0",
        "--alpha-stop", "1.2", "--count", "2", "--format", "json",
        "--out", str(out_file),
    ]) == 0
    data = json.loads(out_file.read_text())
    assert data["metadata"]["family"] == "c2n3"
    assert data["metadata"]["count"] == 2
    assert len(data["rows"]) == 2
    assert data["rows"][0]["status"] == "ok"


def test_sweep_out_of_range_rows_kept(tmp_path):
    out_file = tmp_path / "band.csv"
    assert main([
        "sweep", "--family", "c2n2", "--n", "1", "--alpha-start", "4.0",
        "--alpha-stop", "6.0", "--count", "3", "--out", str(out_file),
    ]) == 0
    rows = [r.split(",") for r in out_file.read_text().splitlines()[1:]]
    assert rows[-1][-1] == "out_of_range"
    assert any(r[-1] == "ok" for r in rows)


def test_sweep_validation(capsys):
    code, _, err = run_cli(
        "sweep", "--family", "c2n2", "--n", "1", "--alpha-start", "2.0",
        "--alpha-stop", "1.0", "--count", "5", capsys=capsys,
    )
    assert code == 1


def test_roots_listing(capsys):
    code, out, _ = run_cli(
        "roots", "--family", "c2n2", "--n", "1", "--alpha", repr(math.pi),
        capsys=capsys,
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "re,im,f_re,f_im,residual,spurious_flag,selected_flag"
    values = sorted(float(line.split(",")[0]) for line in lines[1:])
    assert values[0] == pytest.approx(-1.618033988749895, abs=1e-9)
    assert values[1] == pytest.approx(0.618033988749895, abs=1e-9)
    assert all(line.split(",")[6] == "true" for line in lines[1:])


def test_roots_conjugate_pairing_visible(capsys):
    code, out, _ = run_cli(
        "roots", "--family", "c2n3", "--n", "2", "--alpha", "1.0", capsys=capsys
    )
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    ims = sorted(float(r[1]) for r in rows)
    for v in ims:
        assert any(abs(v + w) < 1e-9 for w in ims)


def test_verify_subset_and_failure_injection(capsys):
    code, out, _ = run_cli(
        "verify", "--suite", "pell-identity", "--suite", "w12-closed-form",
        capsys=capsys,
    )
    assert code == 0
    assert "pell-identity" in out and "PASS" in out
    code, out, _ = run_cli(
        "verify", "--suite", "pell-identity", "--tol", "1e-20", capsys=capsys
    )
    assert code == 3
    assert "FAIL" in out


def test_entry_point_exists():
    proc = subprocess.run(
        [sys.executable, "-m", "conevol.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
