import csv
import json
import math
from fractions import Fraction

import pytest

from maxpe.cli import fraction_to_decimal, main


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestFractionFormatting:
    def test_exact_decimal_rendering(self):
        assert fraction_to_decimal(Fraction(1, 3)).startswith("0.333333333333333333")
        assert fraction_to_decimal(Fraction(1)) == "1." + "0" * 18
        assert fraction_to_decimal(Fraction(2, 3))[:20] == "0.666666666666666667"


class TestTestCommand:
    def test_insulation_direct(self, data_dir, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = main(
            [
                "test",
                "--training", str(data_dir / "type1.txt"),
                "--test", str(data_dir / "type2.txt"),
                "--r", "3", "--s", "3",
                "--out", str(out),
            ]
        )
        assert code == 0
        assert "ties" in capsys.readouterr().err
        row = _read_csv(out)[0]
        assert row["max_sum"] == "10"
        assert row["c"] == "9"
        assert row["outcome"] == "reject"
        assert row["count_sum"] == "32"

    def test_insulation_swapped_via_columns(self, data_dir, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            [
                "test",
                "--training", str(data_dir / "insulation.csv"),
                "--training-col", "type2",
                "--test", str(data_dir / "insulation.csv"),
                "--test-col", "type1",
                "--r", "1", "--s", "1",
                "--format", "json",
                "--out", str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        result = payload["results"][0]
        assert result["max_sum"] == 10
        assert result["c"] == 6
        assert result["outcome"] == "reject"
        assert payload["config"]["subcommand"] == "test"

    def test_rates_select_cell_counts(self, data_dir, tmp_path):
        out = tmp_path / "report.csv"
        code = main(
            [
                "test",
                "--training", str(data_dir / "type1.txt"),
                "--test", str(data_dir / "type2.txt"),
                "--rho1", "0.1", "--rho2", "0.1",
                "--out", str(out),
            ]
        )
        assert code == 0
        row = _read_csv(out)[0]
        assert row["r"] == "3" and row["s"] == "3"

    def test_duplicated_file_still_runs(self, data_dir, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = main(
            [
                "test",
                "--training", str(data_dir / "type1.txt"),
                "--test", str(data_dir / "type1.txt"),
                "--r", "2", "--s", "2",
                "--out", str(out),
            ]
        )
        assert code == 0
        assert "ties" in capsys.readouterr().err
        assert _read_csv(out)[0]["outcome"] in ("accept", "reject", "randomized")

    def test_malformed_input_exits_2(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("1.0\noops\n3.0\n")
        good = tmp_path / "good.txt"
        good.write_text("1.0\n2.0\n3.0\n")
        code = main(
            ["test", "--training", str(bad), "--test", str(good), "--r", "1", "--s", "1"]
        )
        assert code == 2

    def test_constraint_violation_exits_3(self, data_dir):
        code = main(
            [
                "test",
                "--training", str(data_dir / "type1.txt"),
                "--test", str(data_dir / "type2.txt"),
                "--r", "15", "--s", "15",
            ]
        )
        assert code == 3

    def test_missing_column_selector_exits_2(self, data_dir):
        code = main(
            [
                "test",
                "--training", str(data_dir / "insulation.csv"),
                "--test", str(data_dir / "insulation.csv"),
                "--test-col", "type2",
                "--r", "1", "--s", "1",
            ]
        )
        assert code == 2


class TestNullDistCommand:
    def test_tiny_table(self, tmp_path):
        out = tmp_path / "dist.csv"
        code = main(
            ["null-dist", "--m", "1", "--n", "2", "--r", "1", "--s", "1",
             "--out", str(out)]
        )
        assert code == 0
        rows = _read_csv(out)
        assert [row["t"] for row in rows] == ["0", "1"]
        assert rows[0]["pmf"].startswith("0.3333333333333333")
        assert rows[1]["cdf"] == "1." + "0" * 18

    def test_reparsed_pmf_sums_to_one(self, tmp_path):
        out = tmp_path / "dist.csv"
        assert (
            main(["null-dist", "--m", "10", "--n", "10", "--r", "1", "--s", "1",
                  "--out", str(out)]) == 0
        )
        rows = _read_csv(out)
        total = math.fsum(float(row["pmf"]) for row in rows)
        assert abs(total - 1.0) <= 1e-12
        assert float(rows[-1]["cdf"]) == 1.0

    def test_reference_tail(self, tmp_path):
        out = tmp_path / "dist.csv"
        main(["null-dist", "--m", "10", "--n", "10", "--r", "1", "--s", "1",
              "--out", str(out)])
        rows = _read_csv(out)
        tail_at_6 = 1.0 - float(rows[5]["cdf"])
        assert round(tail_at_6, 2) == 0.03

    def test_truncated_support(self, tmp_path):
        out = tmp_path / "dist.csv"
        main(["null-dist", "--m", "30", "--n", "30", "--r", "2", "--s", "2",
              "--t-max", "5", "--out", str(out)])
        assert len(_read_csv(out)) == 6

    def test_invalid_parameters_exit_3(self):
        assert main(["null-dist", "--m", "5", "--n", "3", "--r", "2", "--s", "2"]) == 3


class TestCriticalValuesCommand:
    def test_rate_grid_row(self, tmp_path):
        out = tmp_path / "crit.csv"
        code = main(
            ["critical-values", "--m", "10", "--n", "10", "--rho", "0.05",
             "--out", str(out)]
        )
        assert code == 0
        row = _read_csv(out)[0]
        assert (row["r"], row["s"], row["c"]) == ("1", "1", "6")
        assert row["alpha1"] == "0.0286"
        assert row["alpha2"] == "0.0704"

    def test_square_grid_is_symmetric(self, tmp_path):
        out = tmp_path / "crit.csv"
        code = main(
            ["critical-values", "--m", "10", "--n", "10",
             "--r", "1,2,3,4", "--s", "1,2,3,4", "--out", str(out)]
        )
        assert code == 0
        rows = _read_csv(out)
        assert len(rows) == 16
        table = {(row["r"], row["s"]): (row["c"], row["alpha1"], row["alpha2"])
                 for row in rows}
        for r in "1234":
            for s in "1234":
                assert table[(r, s)] == table[(s, r)]

    def test_single_cell(self, tmp_path):
        out = tmp_path / "crit.csv"
        assert main(
            ["critical-values", "--m", "20", "--n", "20", "--r", "1", "--s", "3",
             "--out", str(out)]
        ) == 0
        rows = _read_csv(out)
        assert len(rows) == 1 and rows[0]["c"] == "8"


class TestPowerCommand:
    def test_exact_lehmann_grid(self, tmp_path):
        out = tmp_path / "power.csv"
        code = main(
            ["power", "--m", "10", "--n", "10", "--r", "1", "--s", "1",
             "--gamma", "1,2", "--method", "exact", "--out", str(out)]
        )
        assert code == 0
        rows = _read_csv(out)
        assert float(rows[0]["power"]) == pytest.approx(0.05, abs=1e-6)
        assert float(rows[1]["power"]) == pytest.approx(0.1908, abs=0.001)
        assert rows[0]["std_error"] == ""

    def test_mc_null_row(self, tmp_path):
        out = tmp_path / "power.csv"
        code = main(
            ["power", "--m", "10", "--n", "10", "--r", "1,2", "--s", "1,2",
             "--gamma", "1", "--reps", "20000", "--seed", "9", "--out", str(out)]
        )
        assert code == 0
        for row in _read_csv(out):
            assert float(row["power"]) == pytest.approx(0.05, abs=0.006)

    def test_byte_identical_reruns(self, tmp_path):
        args = ["power", "--m", "10", "--n", "10", "--r", "1", "--s", "1",
                "--gamma", "2,5", "--reps", "5000", "--seed", "77"]
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_curve_files(self, tmp_path):
        curves = tmp_path / "curves"
        out = tmp_path / "power.csv"
        code = main(
            ["power", "--m", "8", "--n", "8", "--r", "1,2", "--s", "1,2",
             "--gamma", "2,5", "--reps", "2000", "--seed", "3",
             "--curve-dir", str(curves), "--out", str(out)]
        )
        assert code == 0
        files = sorted(p.name for p in curves.iterdir())
        assert files == ["curve_T_r1_s1.csv", "curve_T_r2_s2.csv"]
        rows = _read_csv(curves / "curve_T_r1_s1.csv")
        assert [float(row["param"]) for row in rows] == [2.0, 5.0]

    def test_exact_budget_exits_4(self):
        code = main(
            ["power", "--m", "25", "--n", "25", "--r", "4", "--s", "4",
             "--gamma", "2", "--method", "exact"]
        )
        assert code == 4

    def test_weibull_grid_runs(self, tmp_path):
        out = tmp_path / "power.csv"
        code = main(
            ["power", "--m", "8", "--n", "8", "--r", "1", "--s", "1",
             "--alternative", "weibull", "--shape", "2.5", "--scale", "3",
             "--reps", "2000", "--seed", "5", "--out", str(out)]
        )
        assert code == 0
        assert _read_csv(out)[0]["alternative"] == "weibull(shape=2.5, scale=3)"

    def test_missing_grid_exits_3(self):
        assert main(["power", "--m", "8", "--n", "8", "--r", "1", "--s", "1"]) == 3


class TestCompareCommand:
    def test_three_statistics(self, tmp_path):
        out = tmp_path / "cmp.json"
        code = main(
            ["compare", "--m", "10", "--n", "10", "--r", "1", "--s", "1",
             "--gamma", "3", "--reps", "5000", "--seed", "13",
             "--format", "json", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        stats = [row["statistic"] for row in payload["results"]]
        assert stats == ["T", "V", "Q"]
        assert payload["config"]["statistics"] == ["T", "V", "Q"]

    def test_unknown_statistic_exits_3(self):
        code = main(
            ["compare", "--m", "10", "--n", "10", "--r", "1", "--s", "1",
             "--gamma", "2", "--statistics", "T,W"]
        )
        assert code == 3
