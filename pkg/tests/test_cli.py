import math

import pandas as pd
import pytest
from click.testing import CliRunner

from lnlslab.__main__ import main
from lnlslab.asymptotics.records import SWEEP_COLUMNS, SweepRecord, records_to_frame
from lnlslab.asymptotics.resurgence import coefficient_grid
from lnlslab.specfun.functions import C_STAR
from lnlslab.utils.io_utils import export_table, load_json, read_table
from lnlslab.version import __version__


@pytest.fixture
def runner() -> CliRunner:
    """Fixture for invoking command-line interfaces."""

    return CliRunner()


@pytest.fixture
def sweep_file(tmp_path):
    """A sweep table whose remainder is an exact two-term expansion"""
    records = []
    for q in coefficient_grid():
        c_eff = C_STAR + (0.14 + 0.05 * math.log(q)) / q + (-0.3 + 0.1 * math.log(q)) / q**2
        records.append(SweepRecord(q, c_eff + math.log(q) / math.pi, math.nan, math.nan, c_eff))
    yield export_table(records_to_frame(records), str(tmp_path / "sweep.csv"))


class TestMainCli:
    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_help(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for command in ("solve", "sweep", "spectrum", "resurgence", "tables", "checks"):
            assert command in result.output

    @pytest.mark.parametrize(
        "config_file", ["invalid_config1.yml", "invalid_config2.yml", "invalid_config3.yml"]
    )
    def test_invalid_config(self, runner, helpers, config_file, tmp_path):
        path = helpers.get_data_path("test_configs", config_file)
        result = runner.invoke(
            main, ["-c", path, "solve", "--q", "2", "--out", str(tmp_path / "x.csv")]
        )
        assert result.exit_code == 1

    def test_valid_config(self, runner, helpers, tmp_path):
        path = helpers.get_data_path("test_configs", "valid_config.yml")
        out = tmp_path / "solve.json"
        result = runner.invoke(
            main, ["-c", path, "solve", "--q", "5", "--workers", "1", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        # json is the configured format, 8 Q + 200 the configured rule
        document = load_json(str(out))
        assert document["records"][0]["n_points"] == 240


class TestSolverCli:
    def test_solve_json(self, runner, tmp_path):
        out = tmp_path / "solve.json"
        result = runner.invoke(
            main,
            ["solve", "--q", "5,2", "--format", "json", "--workers", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        document = load_json(str(out))
        assert [row["q_half_width"] for row in document["records"]] == [2.0, 5.0]
        assert document["metadata"]["n_points"] == [420, 450]
        assert len(document["metadata"]["condition_estimate"]) == 2
        assert document["metadata"]["command"] == "solve"

    @pytest.mark.parametrize("q_string", ["-1", "abc"])
    def test_solve_bad_q(self, runner, q_string):
        result = runner.invoke(main, ["solve", "--q", q_string])
        assert result.exit_code == 2

    def test_solve_without_q(self, runner):
        result = runner.invoke(main, ["solve", "--format", "csv"])
        assert result.exit_code == 2

    def test_sweep_csv(self, runner, tmp_path):
        out = tmp_path / "sweep.csv"
        result = runner.invoke(
            main,
            ["sweep", "--q-grid", "2:8:3", "--format", "csv", "--workers", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        frame = read_table(str(out))
        assert list(frame.columns) == SWEEP_COLUMNS
        assert frame["q_half_width"].tolist() == pytest.approx([2.0, 4.0, 8.0])


class TestSpectralCli:
    def test_spectrum_full(self, runner, tmp_path):
        out = tmp_path / "spectrum.csv"
        result = runner.invoke(
            main,
            ["spectrum", "--q", "2", "--n", "60", "--full", "--format", "csv",
             "--workers", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        frame = read_table(str(out))
        assert len(frame) == 60
        assert frame["eigenvalue"].is_monotonic_decreasing

    def test_spectrum_summary(self, runner, tmp_path):
        out = tmp_path / "spectrum.json"
        result = runner.invoke(
            main,
            ["spectrum", "--q", "2,3", "--n", "60", "--top-k", "2", "--format", "json",
             "--workers", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        records = load_json(str(out))["records"]
        assert [row["q_half_width"] for row in records] == [2.0, 3.0]
        assert all(row["delta_0"] > 0 for row in records)


class TestAsymptoticsCli:
    def test_resurgence_from_file(self, runner, sweep_file, tmp_path):
        out = tmp_path / "coefficients.json"
        result = runner.invoke(
            main,
            ["resurgence", "--input", sweep_file, "--n-max", "2", "--format", "json",
             "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        document = load_json(str(out))
        labels = [row["label"] for row in document["records"]]
        assert labels == ["1/Q^1", "log Q/Q^1", "1/Q^2", "log Q/Q^2"]
        assert document["records"][0]["coefficient"] == pytest.approx(0.14, abs=1e-6)
        assert document["metadata"]["records"] == 60
        # two coefficients are too few for the ratio test
        assert document["metadata"]["ratio_test"] == []

    def test_resurgence_too_few_records(self, runner, tmp_path):
        path = export_table(
            pd.DataFrame([SweepRecord.from_values(q, 1.0).to_dict() for q in (10.0, 20.0)]),
            str(tmp_path / "short.csv"),
        )
        result = runner.invoke(
            main, ["resurgence", "--input", path, "--format", "csv", "--out", str(tmp_path / "c.csv")]
        )
        assert result.exit_code == 1


class TestReportCli:
    def test_checks(self, runner, tmp_path):
        out = tmp_path / "checks.json"
        result = runner.invoke(
            main,
            ["checks", "--name", "instanton_zero", "--name", "reflection",
             "--format", "json", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        records = load_json(str(out))["records"]
        assert [row["check_name"] for row in records] == ["instanton_zero", "reflection"]
        assert all(row["passed"] for row in records)

    def test_checks_unknown_name(self, runner):
        result = runner.invoke(main, ["checks", "--name", "no_such_check"])
        assert result.exit_code == 2

    def test_tables_failure(self, runner, mocker, tmp_path):
        comparison = pd.DataFrame(
            {
                "q_half_width": [10.0, 50.0],
                "column": ["c_eff", "c_eff"],
                "measured": [0.430375, 0.5],
                "expected": [0.430375, 0.411246],
                "tolerance": [1e-4, 1e-4],
                "mode": ["absolute", "absolute"],
                "passed": [True, False],
            }
        )
        computed = pd.DataFrame({"q_half_width": [10.0, 50.0], "c_eff": [0.430375, 0.5]})
        mocker.patch(
            "lnlslab.reports.commands.build_table", return_value=(computed, comparison)
        )
        out = tmp_path / "ceff.csv"
        result = runner.invoke(
            main, ["tables", "ceff", "--format", "csv", "--workers", "1", "--out", str(out)]
        )
        assert result.exit_code == 1
        assert "ceff: 1 of 2 cells passed" in result.output
        assert len(read_table(str(out))) == 2

    def test_tables_unknown_name(self, runner):
        result = runner.invoke(main, ["tables", "energies"])
        assert result.exit_code == 2

    def test_plotdata_wh(self, runner, tmp_path):
        out = tmp_path / "wh.csv"
        result = runner.invoke(
            main, ["plotdata", "wh", "--p-range", "-1:1:11", "--format", "csv", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        frame = read_table(str(out))
        # p = 0 is excluded
        assert len(frame) == 10

    @pytest.mark.parametrize("p_range", ["bad", "1:-1:10", "-1:1:1"])
    def test_plotdata_wh_bad_range(self, runner, p_range):
        result = runner.invoke(main, ["plotdata", "wh", "--p-range", p_range])
        assert result.exit_code == 2

    def test_plotdata_inner(self, runner, tmp_path):
        out = tmp_path / "inner.csv"
        result = runner.invoke(
            main, ["plotdata", "inner", "--q", "5", "--format", "csv", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        frame = read_table(str(out))
        assert list(frame.columns) == ["xi", "rho", "inner", "outer", "inner_deviation"]
