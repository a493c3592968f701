"""Tests for the command-line interface."""

import csv
import json
import math

import pytest

from main import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main, parse_delays, parse_grid, parse_number
from montecarlo import build_curve
from models.data_models import CurvePoint, ErrorCurve
from storage import write_curve_csv
from utils.errors import DomainError

LN2 = math.log(2.0)


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


class TestParsers:
    """Tests for the argument value parsers."""

    def test_ln2_multiples(self):
        """ln2 terms with and without a factor."""
        assert parse_number("ln2") == LN2
        assert parse_number("8ln2") == 8 * LN2
        assert parse_number("0.5*ln2") == 0.5 * LN2
        assert parse_number("2.7726") == 2.7726

    def test_bad_number(self):
        """Anything else is a domain error."""
        with pytest.raises(DomainError):
            parse_number("four")

    def test_grid(self):
        """Grids include both endpoints."""
        grid = parse_grid("ln2:8ln2:16")
        assert len(grid) == 16
        assert grid[0] == LN2
        assert grid[-1] == pytest.approx(8 * LN2)
        assert parse_grid("0.5:0.5:1") == [0.5]

    def test_delays(self):
        """Ranges are inclusive; lists keep their values."""
        assert parse_delays("2:5") == [2, 3, 4, 5]
        assert parse_delays("0:10:2") == [0, 2, 4, 6, 8, 10]
        assert parse_delays("1,4,9") == [1, 4, 9]
        with pytest.raises(DomainError):
            parse_delays("0:10:0")


class TestTheory:
    """Tests for the theory subcommand."""

    def test_table(self, test_env):
        """The table hits the corner points of the exponent curve."""
        assert main(["theory", "--eb-grid", "ln2:7ln2:7"]) == EXIT_OK
        rows = read_rows(test_env["output_dir"] / "theory.csv")
        assert len(rows) == 7
        first, fourth = rows[0], rows[3]
        assert float(first["rate_fraction"]) == 1.0
        assert float(first["exponent_eb"]) == 0.0
        assert first["converse_rate"] == ""
        assert first["prefix_constant"] == ""
        assert float(fourth["rate_fraction"]) == pytest.approx(0.25)
        assert float(fourth["exponent_eb"]) == pytest.approx(LN2, abs=1e-12)
        assert float(fourth["exponent_rate"]) == pytest.approx(0.17328680, abs=1e-8)

    def test_rate_grid(self, test_env):
        """A rate grid gives eb = ln2 / r."""
        assert main(["theory", "--rate-grid", "0.25:0.5:2"]) == EXIT_OK
        rows = read_rows(test_env["output_dir"] / "theory.csv")
        assert float(rows[1]["eb"]) == pytest.approx(2 * LN2)
        assert float(rows[1]["converse_rate"]) == pytest.approx(0.0594631, abs=1e-7)

    def test_needs_a_grid(self, test_env):
        """theory without a grid is a usage error."""
        assert main(["theory"]) == EXIT_USAGE

    def test_grids_are_exclusive(self, test_env):
        """Both grids at once is rejected by the parser."""
        assert main(["theory", "--eb-grid", "1:2:2", "--rate-grid", "0.1:0.2:2"]) == EXIT_USAGE

    def test_stdout_without_output_dir(self, clean_env, capsys):
        """With no output target the table goes to stdout."""
        assert main(["theory", "--eb-grid", "4ln2:4ln2:1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("rate_fraction,eb,exponent_rate,exponent_eb,converse_rate,prefix_constant\n")
        assert len(out.splitlines()) == 2


class TestSimulations:
    """Tests for the sim-* subcommands."""

    def test_genie_reproducible(self, test_env, tmp_path):
        """Two runs with the same seed write byte-identical CSV."""
        argv = ["sim-genie", "--eb", "2ln2", "--delays", "0:3", "--trials", "200", "--seed", "7"]
        assert main(argv + ["--output", str(tmp_path / "a.csv")]) == EXIT_OK
        assert main(argv + ["--output", str(tmp_path / "b.csv"), "--workers", "4"]) == EXIT_OK
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_record_beside_csv(self, test_env):
        """A CSV result gets a JSON run record with the same stem."""
        argv = ["sim-genie", "--rate-fraction", "0.5", "--delays", "0,2", "--trials", "100"]
        assert main(argv) == EXIT_OK
        rows = read_rows(test_env["output_dir"] / "sim-genie.csv")
        assert [int(r["d"]) for r in rows] == [0, 2]
        record = json.loads((test_env["output_dir"] / "sim-genie.json").read_text())
        assert record["subcommand"] == "sim-genie"
        assert record["seed"] == 20050101
        assert record["extra"]["eb"] == pytest.approx(2 * LN2)
        assert record["extra"]["delay_seconds"] == pytest.approx([0.0, 4.0])

    def test_json_format(self, test_env):
        """JSON output is the run record with the result rows inside."""
        argv = ["sim-anytime", "--eb", "3ln2", "--delays", "0:1", "--trials", "64", "--format", "json"]
        assert main(argv) == EXIT_OK
        record = json.loads((test_env["output_dir"] / "sim-anytime.json").read_text())
        assert [row["d"] for row in record["extra"]["results"]] == [0, 1]
        assert record["parameters"]["bit_index"] == 1

    def test_block(self, test_env):
        """The block baseline reports its exact value."""
        assert main(["sim-block", "--eb", "2ln2", "--messages", "2", "--trials", "500"]) == EXIT_OK
        row = read_rows(test_env["output_dir"] / "sim-block.csv")[0]
        assert int(row["M"]) == 2
        assert float(row["exact"]) == pytest.approx(0.1195, abs=1e-4)

    def test_feedback(self, test_env):
        """The histogram has one row per age and the record carries the candidates."""
        assert main(["sim-feedback", "--eb", "2ln2", "--stream-length", "4", "--trials", "64"]) == EXIT_OK
        rows = read_rows(test_env["output_dir"] / "sim-feedback.csv")
        assert [int(r["a"]) for r in rows] == [0, 1, 2, 3, 4]
        record = json.loads((test_env["output_dir"] / "sim-feedback.json").read_text())
        assert "ln_slope" in record["extra"]["candidates"]

    def test_cost(self, test_env, tmp_path, toy_dmc_text):
        """A unit-cost run reports its plan and threshold."""
        dmc_path = tmp_path / "toy.dmc"
        dmc_path.write_text(toy_dmc_text)
        argv = ["sim-cost", "--dmc", str(dmc_path), "--eb-cost", "1.0", "--burst", "2", "--delays", "0:4:2", "--trials", "64"]
        assert main(argv) == EXIT_OK
        record = json.loads((test_env["output_dir"] / "sim-cost.json").read_text())
        assert record["extra"]["burst_symbols"] == [1, 1]
        assert record["extra"]["capacity_per_unit_cost"] == pytest.approx(2.3762, abs=1e-4)
        assert record["extra"]["cost_threshold"] == pytest.approx(LN2 / record["extra"]["capacity_per_unit_cost"])


class TestFit:
    """Tests for the fit subcommand."""

    def test_recovers_slope(self, test_env, tmp_path):
        """A stored pure exponential fits back to its slope."""
        points = []
        for d in range(6):
            p = math.exp(-0.7 * d)
            points.append(CurvePoint(d=d, trials=10**7, errors=1000, p_hat=p, ci_lo=p, ci_hi=p))
        curve_path = tmp_path / "curve.csv"
        write_curve_csv(ErrorCurve(points=points), curve_path)

        assert main(["fit", str(curve_path)]) == EXIT_OK
        row = read_rows(test_env["output_dir"] / "fit.csv")[0]
        assert float(row["slope"]) == pytest.approx(0.7, abs=1e-9)
        assert int(row["points_used"]) == 6

    def test_insufficient_data(self, test_env, tmp_path):
        """Too few well-populated points is a numeric failure."""
        curve_path = tmp_path / "sparse.csv"
        write_curve_csv(build_curve([0, 1, 2], 100, [40, 5, 1]), curve_path)
        assert main(["fit", str(curve_path)]) == EXIT_NUMERIC

    def test_missing_curve(self, test_env, tmp_path):
        """A missing curve file is a usage error."""
        assert main(["fit", str(tmp_path / "absent.csv")]) == EXIT_USAGE


class TestConfiguration:
    """Tests for run files, flags and exit codes."""

    def test_flags_override_run_file(self, test_env, tmp_path):
        """Flag values win over the run file, and both are recorded."""
        run_file = tmp_path / "run.cfg"
        run_file.write_text("eb=2ln2\ntrials=50\ndelays=0:1\nseed=3\n")
        assert main(["sim-genie", "--config", str(run_file), "--trials", "70"]) == EXIT_OK
        record = json.loads((test_env["output_dir"] / "sim-genie.json").read_text())
        assert record["parameters"]["trials"] == 70
        assert record["seed"] == 3
        assert record["config_file"]["trials"] == "50"
        assert record["flags"] == {"trials": 70}

    def test_unknown_run_file_key(self, test_env, tmp_path):
        """Unknown keys in a run file are usage errors."""
        run_file = tmp_path / "run.cfg"
        run_file.write_text("energy=4\n")
        assert main(["sim-genie", "--config", str(run_file)]) == EXIT_USAGE

    def test_unknown_flag(self, test_env):
        """argparse rejects unknown flags with exit 2."""
        assert main(["sim-genie", "--bogus"]) == EXIT_USAGE

    def test_both_channel_parameters(self, test_env):
        """--eb and --rate-fraction together is a usage error."""
        argv = ["sim-genie", "--eb", "1.0", "--rate-fraction", "0.5", "--delays", "0", "--trials", "1"]
        assert main(argv) == EXIT_USAGE

    def test_delay_above_cap(self, test_env):
        """Delays past the genie cap are capacity failures, caught before any simulation."""
        assert main(["sim-genie", "--eb", "1.0", "--delays", "27", "--trials", "1"]) == EXIT_NUMERIC

    def test_stream_length_above_cap(self, test_env):
        """A feedback stream past the anytime horizon cap exits 3."""
        argv = ["sim-feedback", "--eb", "4ln2", "--stream-length", "25", "--trials", "1"]
        assert main(argv) == EXIT_NUMERIC

    def test_invalid_environment(self, invalid_env):
        """Invalid settings exit with code 2."""
        assert main(["theory", "--eb-grid", "1:2:2"]) == EXIT_USAGE

    def test_no_command(self, test_env):
        """No subcommand prints help and exits 2."""
        assert main([]) == EXIT_USAGE
