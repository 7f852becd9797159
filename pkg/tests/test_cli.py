import json
import math

import numpy as np
import pytest

from kerrcavity import UnknownPreset, preset, run
from kerrcavity.cli import main
from kerrcavity.scenarios import CSV_COLUMNS, with_overrides


def test_preset_a_constant():
    scen = preset("a", "constant")
    p = scen.params
    assert p.delta == p.chi1 == p.chi2 == p.chi_cross == 0.0
    assert p.beta1 == p.beta2 == 0.0
    assert p.f1.kind == "unit" and p.g1.kind == "unit"
    assert abs(p.alpha1) ** 2 == pytest.approx(10.0)
    assert p.phi == math.pi
    assert p.lam == 1.0


def test_preset_b_intensity():
    p = preset("b", "intensity").params
    assert p.chi1 == p.chi2 == pytest.approx(0.4)
    assert p.chi_cross == pytest.approx(0.8)
    assert p.delta == 0.0 and p.beta1 == 0.0
    assert p.f1.kind == "sqrt" and p.f2.kind == "sqrt"
    assert p.g1.kind == "inverse-sqrt" and p.g2.kind == "inverse-sqrt"


def test_preset_c_intensity():
    p = preset("c", "intensity").params
    assert p.delta == pytest.approx(10.0)
    assert p.chi1 == p.chi2 == p.chi_cross == 0.0
    assert p.f1.kind == "sqrt"


def test_preset_d_has_stark():
    p = preset("d", "constant").params
    assert p.beta1 == p.beta2 != 0.0


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        preset("z")
    with pytest.raises(UnknownPreset):
        preset("a", "weird")


def small_scenario(name="a", coupling="constant", **kw):
    base = dict(alpha1=1.0, alpha2=1.0, tau_max=2.0, samples=9, eps_trunc=1e-10)
    base.update(kw)
    return with_overrides(preset(name, coupling), **base)


def test_run_initial_row_separable():
    series = run(with_overrides(preset("a", "constant"), tau_max=0.0, samples=1))
    assert len(series.tau) == 1
    assert series.columns["eof_atom_field"][0] <= 1e-9
    assert series.columns["eof_atom_atom"][0] <= 1e-9


def test_run_columns_and_bounds():
    series = run(small_scenario())
    assert series.columns["norm_error"].max() <= 1e-10 + 1e-9
    assert (series.columns["concurrence"] >= 0).all()
    assert (series.columns["concurrence"] <= 1).all()
    for name in ("eof_atom_field", "eof_atom_atom"):
        col = series.columns[name]
        assert (col >= 0).all() and (col <= math.log(4) + 1e-12).all()
    assert series.metadata["params"]["alpha1"] == [1.0, 0.0]
    assert series.metadata["max_consistency_gap"] <= 1e-8


def test_run_metadata_echoes_parameters():
    scen = small_scenario("b", "intensity", chi1=0.25)
    series = run(scen)
    meta = series.metadata
    assert meta["params"]["chi1"] == 0.25
    assert meta["params"]["chi_cross"] == 0.8
    assert meta["params"]["f1"] == "sqrt"
    assert meta["params"]["g1"] == "inverse-sqrt"
    assert meta["eps_trunc"] == 1e-10
    assert meta["samples"] == 9


def test_simulate_cli_csv_format(tmp_path):
    out = tmp_path / "series.csv"
    rc = main(["simulate", "--preset", "a", "--coupling", "constant",
               "--alpha1", "1.0", "--alpha2", "1.0", "--tau-max", "2",
               "--samples", "5", "--eps-trunc", "1e-10", "--out", str(out)])
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# ")
    meta = json.loads(lines[0][2:])
    assert meta["scenario"] == "a"
    assert lines[1] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2 + 5
    first = dict(zip(CSV_COLUMNS, lines[2].split(",")))
    assert float(first["tau"]) == 0.0
    assert float(first["zeta4"]) == 0.0


def test_simulate_cli_deterministic(tmp_path):
    argv = ["simulate", "--preset", "c", "--alpha1", "1.2", "--alpha2", "1.2",
            "--tau-max", "3", "--samples", "7"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = a\ncoupling = constant\n"
                   "alpha1 = 1.0\nalpha2 = 1.0\n"
                   "tau-max = 2\nsamples = 3\neps-trunc = 1e-10\n")
    out = tmp_path / "out.csv"
    rc = main(["simulate", "--config", str(cfg), "--samples", "4",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    meta = json.loads(lines[0][2:])
    assert meta["samples"] == 4          # flag wins
    assert meta["tau_max"] == 2.0        # from config
    assert len(lines) == 2 + 4


def test_cli_missing_preset_errors(capsys):
    assert main(["simulate", "--tau-max", "1"]) == 2
    assert "preset" in capsys.readouterr().err


def test_verify_cli_passes(capsys):
    rc = main(["verify", "--preset", "a", "--coupling", "constant",
               "--alpha1", "1.0", "--alpha2", "1.0", "--blocks", "3",
               "--eps-trunc", "1e-8", "--tau-max", "5"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert report["passed"] is True
    assert report["max_deviation"] <= 1e-6
