import json
import logging
import textwrap

import numpy as np
import pytest

from mollow.cli import main
from mollow.pipelines.spectrum import generate_spectra
from mollow.scenario import Scenario, resolve
from mollow.spectrum import CorrectionMode, read_csv

from conftest import FIG1_BARE, FIG1_FULL


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def test_shifts_json(capsys):
    record = run_json(capsys, "shifts", "--preset", "figure1", "--format", "json")
    assert record["units"] == "Gamma"
    assert record["mode"] == "full"
    assert record["overrides"] == ["C", "L_bare"]
    assert record["dw_plus"] == pytest.approx(-1.856953, abs=1e-5)
    assert record["small_dw_plus"] == pytest.approx(-0.464238, abs=1e-5)
    assert record["full_plus"] == pytest.approx(-1.92082, abs=1e-5)
    assert record["dw_minus"] == pytest.approx(-record["dw_plus"])
    assert record["L_bare"] == 5.0 and record["C"] == 0.02
    assert record["dL_app_plus"] - record["dL_app_minus"] == pytest.approx(record["dw_plus"], rel=1e-12)
    assert record["dC_plus"] - record["dC_minus"] == pytest.approx(record["small_dw_plus"], rel=1e-12)


def test_shifts_bare_mode_keeps_lamb_identity(capsys):
    record = run_json(capsys, "shifts", "--preset", "figure1", "--format", "json", "--mode", "bare")
    assert record["dC_plus"] == record["dC_minus"] == 0.0
    assert record["dL_app_plus"] - record["dL_app_minus"] == pytest.approx(record["dw_plus"], rel=1e-12)


def test_shifts_mode_none_is_zero(capsys):
    record = run_json(capsys, "shifts", "--preset", "figure1", "--format", "json", "--mode", "none")
    for key in ("dL_app_plus", "dC_plus", "dw_plus", "small_dw_plus", "full_plus"):
        assert record[key] == 0.0
    assert record["Omega_R"] == pytest.approx(np.sqrt(725.0))


def test_shifts_table_and_out(capsys, tmp_path):
    out = tmp_path / "shifts.json"
    assert main(["shifts", "--preset", "figure1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# units: Gamma  mode: full")
    assert "# overrides: C, L_bare" in text
    assert "dL_full+" in text and "-1.92082" in text
    assert json.loads(out.read_text())["full_plus"] == pytest.approx(-1.92082, abs=1e-5)


def test_spectrum_modes_and_sidecar(capsys, tmp_path):
    argv = ["spectrum", "--preset", "figure1", "--mode", "bare", "--mode", "full", "--out", str(tmp_path)]
    assert main(argv) == 0
    paths = capsys.readouterr().out.split()
    assert [p.rsplit("/", 1)[-1] for p in paths] == ["spectrum_bare.csv", "spectrum_full.csv"]

    peaks = {}
    for mode in ("bare", "full"):
        samples = read_csv(tmp_path / f"spectrum_{mode}.csv")
        upper = samples.omega_grid > 10.0
        peaks[mode] = samples.omega_grid[upper][np.argmax(samples.values[upper])]
    assert peaks["bare"] - peaks["full"] == pytest.approx(FIG1_BARE - FIG1_FULL, abs=0.03)

    sidecar = json.loads((tmp_path / "spectrum_full.json").read_text())
    scenario = Scenario.from_mapping(sidecar["scenario"])
    assert scenario.corrections.mode is CorrectionMode.FULL
    again = generate_spectra(resolve(scenario), [CorrectionMode.FULL])[CorrectionMode.FULL]
    original = read_csv(tmp_path / "spectrum_full.csv")
    np.testing.assert_allclose(again.values, original.values, rtol=1e-14)


def test_spectrum_json_format(tmp_path):
    assert main(["spectrum", "--preset", "figure1", "--format", "json", "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "spectrum.json").read_text())
    assert list(record) == ["full"]
    assert len(record["full"]["omega"]) == 8001
    assert record["full"]["metadata"]["units"] == "Gamma"


def test_resonant_uncorrected_spectrum_is_symmetric(tmp_path):
    scenario = tmp_path / "resonant.yaml"
    scenario.write_text(
        textwrap.dedent(
            """
            drive: {Omega: 20.0, Delta: 0.0}
            corrections: {mode: none}
            grid: {min: -50.0, max: 50.0, count: 2001}
            """
        )
    )
    assert main(["-q", "spectrum", "--scenario", str(scenario), "--out", str(tmp_path)]) == 0
    samples = read_csv(tmp_path / "spectrum_none.csv")
    np.testing.assert_allclose(samples.values, samples.values[::-1], rtol=1e-12)


def test_empty_grid_is_a_validation_error(tmp_path):
    scenario = tmp_path / "empty.yaml"
    scenario.write_text("drive: {Omega: 20.0}\ngrid: {min: -1.0, max: 1.0, count: 0}\n")
    assert main(["spectrum", "--scenario", str(scenario), "--out", str(tmp_path)]) == 2


def test_fit_csv_round_trip(capsys, tmp_path):
    assert main(["spectrum", "--preset", "figure1", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    residuals = tmp_path / "residuals.csv"
    report = run_json(
        capsys, "fit", "--csv", str(tmp_path / "spectrum_full.csv"), "--residuals", str(residuals)
    )
    assert report["converged"]
    assert report["n_samples"] == 8001
    upper = max(report["peaks"], key=lambda p: p["center"])
    assert upper["center"] == pytest.approx(FIG1_FULL, abs=1e-3)
    assert residuals.read_text().splitlines()[0] == "omega,S_inc,model,residual"


def test_fit_malformed_csv_names_row(tmp_path, caplog):
    path = tmp_path / "bad.csv"
    path.write_text("omega,S_inc\n0.0,1.0\n1.0,abc\n2.0,1.0\n")
    with caplog.at_level(logging.ERROR, logger="mollow"):
        assert main(["fit", "--csv", str(path)]) == 2
    assert "row 3" in caplog.text


@pytest.mark.parametrize("sidecar", ["{not json", "[1, 2, 3]"])
def test_fit_malformed_sidecar_is_a_validation_error(tmp_path, caplog, sidecar):
    path = tmp_path / "spectrum.csv"
    path.write_text("omega,S_inc\n-1.0,0.5\n0.0,1.0\n1.0,0.5\n")
    (tmp_path / "spectrum.json").write_text(sidecar)
    with caplog.at_level(logging.ERROR, logger="mollow"):
        assert main(["fit", "--csv", str(path)]) == 2
    assert "invalid sidecar" in caplog.text


def test_fit_preset_measures_shift(capsys):
    report = run_json(capsys, "fit", "--preset", "figure1")
    assert report["converged"]
    assert report["measured"]["reference"] == "none"
    assert report["measured"]["delta_plus_measured"] == pytest.approx(-1.9208, abs=1e-3)
    assert report["analytic"]["full_plus"] == pytest.approx(-1.92082, abs=1e-5)


def test_fit_needs_exactly_one_source(tmp_path):
    assert main(["fit"]) == 2
    path = tmp_path / "x.csv"
    path.write_text("omega,S_inc\n0,1\n")
    assert main(["fit", "--csv", str(path), "--preset", "figure1"]) == 2


def test_feasibility_json(capsys):
    report = run_json(capsys, "feasibility", "--format", "json")
    assert report["Z"] == 1
    assert 1e-3 < report["r1_estimate"] < 2e-3
    assert report["wavelength_m"] == pytest.approx(121.502e-9, rel=1e-4)
    assert report["required_power_W"] > report["available_power_W"]


def test_feasibility_rejects_bad_charge():
    assert main(["feasibility", "--Z", "0"]) == 2


def test_figure1_is_deterministic(capsys, tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(["figure1", "--out", str(first)]) == 0
    assert main(["figure1", "--out", str(second)]) == 0
    names = sorted(p.name for p in first.iterdir())
    assert names == ["fig1a_bare.csv", "fig1a_uncorrected.csv", "fig1b_bare.csv", "fig1b_full.csv", "figure1.json"]
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes()
    manifest = json.loads((first / "figure1.json").read_text())
    assert manifest["sideband_half_splitting"]["full"] == pytest.approx(FIG1_FULL)


def test_missing_scenario_file_is_io_error(tmp_path):
    assert main(["shifts", "--scenario", str(tmp_path / "missing.yaml")]) == 3


def test_scenario_source_required():
    with pytest.raises(SystemExit) as info:
        main(["shifts"])
    assert info.value.code == 2


def test_negative_seed_rejected(tmp_path):
    assert main(["fit", "--preset", "figure1", "--seed", "-1"]) == 2


def test_external_pipeline_dir(capsys, tmp_path):
    (tmp_path / "hello.py").write_text(
        textwrap.dedent(
            """
            from mollow.pipeline_base import BasePipeline


            class Pipeline(BasePipeline):
                name = "hello"

                def run(self, args):
                    self.emit("hello")
                    return 0
            """
        )
    )
    assert main(["--pipelines", str(tmp_path), "hello"]) == 0
    assert capsys.readouterr().out == "hello\n"


def test_shifts_csv_format(capsys):
    assert main(["shifts", "--preset", "figure1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name,value"
    rows = dict(line.split(",") for line in lines[1:])
    assert float(rows["full_plus"]) == pytest.approx(-1.92082, abs=1e-5)
    assert float(rows["L_bare"]) == 5.0
    assert len(rows["Omega_R"]) > 12


def test_feasibility_csv_format(capsys):
    assert main(["feasibility", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name,value"
    rows = dict(line.split(",") for line in lines[1:])
    assert rows["Z"] == "1"
    assert 1e-3 < float(rows["r1_estimate"]) < 2e-3
