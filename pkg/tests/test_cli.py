import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from interfacemodes.cli import main

import ref_values as ref
from conftest import CONFIG_DICT


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def write_config(tmp_path, obj, name="m.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj), encoding="utf-8")
    return p


def test_validate_ok(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["validate", str(config_path), "--out-dir", str(out)]) == 0
    payload = json.loads((out / "validation.json").read_text())
    assert payload["ok"] is True
    assert payload["cell_A"]["failures"] == []
    assert "config ok" in capsys.readouterr().out


def test_validate_reports_all_failures(tmp_path, capsys):
    bad = json.loads(json.dumps(CONFIG_DICT))
    bad["cell_A"]["layers"][0]["width"] = 0.3  # breaks both sum and symmetry
    p = write_config(tmp_path, bad)
    out = tmp_path / "out"
    assert main(["validate", str(p), "--out-dir", str(out)]) == 1
    payload = json.loads((out / "validation.json").read_text())
    assert payload["ok"] is False
    assert len(payload["cell_A"]["failures"]) == 2


def test_validate_malformed_config(tmp_path, capsys):
    bad = json.loads(json.dumps(CONFIG_DICT))
    bad["typo"] = 1
    p = write_config(tmp_path, bad)
    assert main(["validate", str(p), "--out-dir", str(tmp_path / "out")]) == 1
    assert "unknown keys" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["gaps", str(tmp_path / "nope.json")]) == 1
    assert "error:" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["gaps", "--definitely-not-a-flag"])
    assert exc.value.code == 2


def test_gaps_csv(config_path, tmp_path):
    out = tmp_path / "out"
    assert main(["gaps", str(config_path), "--out-dir", str(out)]) == 0
    rows = read_csv(out / "gaps.csv")
    common = [r for r in rows if r["cell"] == "common"]
    assert len(common) == len(ref.GAPS)
    for row, (lo, hi) in zip(common, ref.GAPS):
        assert abs(float(row["lo"]) - lo) < 1e-8
        assert abs(float(row["hi"]) - hi) < 1e-8
    assert (out / "manifest.json").exists()


def test_gaps_json(config_path, tmp_path):
    out = tmp_path / "out"
    assert main(["gaps", str(config_path), "--out-dir", str(out), "--format", "json"]) == 0
    payload = json.loads((out / "gaps.json").read_text())
    assert payload["manifest"]["tool"] == "interface-modes"
    assert payload["manifest"]["schema_version"] == "1"
    assert abs(payload["common"][0][0] - ref.GAP1[0]) < 1e-8


def test_bands_csv(config_path, tmp_path):
    out = tmp_path / "out"
    assert main([
        "bands", str(config_path), "--out-dir", str(out),
        "--kappa-points", "11", "--omega-max", "4",
    ]) == 0
    rows = read_csv(out / "bands.csv")
    cells = {r["cell"] for r in rows}
    assert cells == {"A", "B"}
    a1 = [r for r in rows if r["cell"] == "A" and r["band_index"] == "1"]
    assert len(a1) == 11
    assert all(float(r["residual"]) < 1e-10 for r in rows)
    assert all(abs(float(r["omega_im"])) < 1e-9 for r in rows)


def test_impedance_scan_csv(config_path, tmp_path):
    out = tmp_path / "out"
    assert main([
        "impedance-scan", str(config_path), "--out-dir", str(out), "--points", "51",
    ]) == 0
    rows = read_csv(out / "impedance.csv")
    assert len(rows) == 51
    for r in rows[1:-1]:
        z = complex(float(r["z_re"]), float(r["z_im"]))
        assert abs(float(r["abs_z"]) - abs(z)) < 1e-9 * max(1.0, abs(z))


def test_find_mode_undamped(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["find-mode", str(config_path), "--out-dir", str(out)]) == 0
    payload = json.loads((out / "mode.json").read_text())
    assert payload["prediction"]["predicted"] is True
    root = payload["root"]
    assert abs(root["omega"]["re"] - ref.OMEGA_U) < 1e-9
    assert root["winding"] == 1
    assert root["delta"] == 0.0
    trace = read_csv(out / "trace.csv")
    assert all(r["accepted"] == "1" for r in trace)
    assert "interface mode at omega" in capsys.readouterr().out


def test_find_mode_damped(config_path, tmp_path):
    out = tmp_path / "out"
    assert main(["find-mode", str(config_path), "--out-dir", str(out), "--delta", "0.5"]) == 0
    payload = json.loads((out / "mode.json").read_text())
    root = payload["root"]
    omega = complex(root["omega"]["re"], root["omega"]["im"])
    assert abs(omega - ref.ROOT_HALF) < 1e-8
    assert root["winding"] == 1


def test_find_mode_none_predicted(tmp_path, capsys):
    same = json.loads(json.dumps(CONFIG_DICT))
    same["cell_B"] = same["cell_A"]
    p = write_config(tmp_path, same)
    out = tmp_path / "out"
    assert main(["find-mode", str(p), "--out-dir", str(out)]) == 0
    payload = json.loads((out / "mode.json").read_text())
    assert payload["prediction"]["predicted"] is False
    assert payload["root"] is None
    assert "no interface mode predicted" in capsys.readouterr().out


def test_mode_profile_with_known_root(config_path, tmp_path):
    out = tmp_path / "out"
    assert main([
        "mode-profile", str(config_path), "--out-dir", str(out),
        "--delta", "0.5",
        "--omega-re", repr(ref.ROOT_HALF.real), "--omega-im", repr(ref.ROOT_HALF.imag),
        "--cells", "6", "--samples", "16",
    ]) == 0
    payload = json.loads((out / "mode_profile.json").read_text())
    assert payload["decay"]["ok"] is True
    assert abs(payload["rate_right"] - ref.RATE_HALF) < 1e-9
    lattice = read_csv(out / "lattice.csv")
    assert len(lattice) == 13
    profile = read_csv(out / "profile.csv")
    assert len(profile) == 12 * 16 + 1


def test_rouche_map_cli(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main([
        "rouche-map", str(config_path), "--out-dir", str(out),
        "--delta2", "5e-5", "--resolution", "40",
    ]) == 0
    payload = json.loads((out / "rouche.json").read_text())
    assert payload["root_1"]["region"] == "w"
    assert payload["root_2"]["region"] == "w"
    assert payload["enclosing_circle"] is not None
    assert payload["counts"]["c"] == 40 * 40
    raster = read_csv(out / "raster.csv")
    assert len(raster) == 40 * 40
    assert {r["region"] for r in raster} == {"c"}


def test_outputs_deterministic(config_path, tmp_path, monkeypatch):
    # identical inputs byte for byte, including the relative out-dir
    monkeypatch.chdir(tmp_path)
    assert main(["find-mode", str(config_path), "--out-dir", "run"]) == 0
    first_json = (tmp_path / "run" / "mode.json").read_bytes()
    first_csv = (tmp_path / "run" / "trace.csv").read_bytes()
    assert main(["find-mode", str(config_path), "--out-dir", "run"]) == 0
    assert (tmp_path / "run" / "mode.json").read_bytes() == first_json
    assert (tmp_path / "run" / "trace.csv").read_bytes() == first_csv


def test_console_script_entry_point(config_path, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "interfacemodes.cli", "gaps", str(config_path), "--out-dir", str(tmp_path / "o")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "in common" in proc.stdout
