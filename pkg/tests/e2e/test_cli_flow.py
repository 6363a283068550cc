"""
End-to-end tests for the command-line flow.
"""
import json

import pytest

from src.cli.main import run
from src.cli.verify import CheckResult
from src.core.config import settings


def records(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line]


def diagnostics(err: str) -> list[dict]:
    parsed = []
    for line in err.splitlines():
        try:
            payload = json.loads(line)
        except json.JSONDecodeError:
            continue
        if "error" in payload and "message" in payload:
            parsed.append(payload)
    return parsed


class TestCliFlow:
    """End-to-end tests for each subcommand."""

    def test_krawtchouk_column(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the column of K_2 on n = 4."""
        assert run(["krawtchouk", "--n", "4", "--j", "2"]) == 0
        (record,) = records(capsys.readouterr().out)
        assert record["command"] == "krawtchouk"
        assert record["schema_version"] == "hamming_spectra.output.v1"
        assert record["results"]["column"] == ["6", "0", "-2", "0", "6"]

    def test_krawtchouk_value(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a single value."""
        assert run(["krawtchouk", "--n", "4", "--j", "2", "--x", "2"]) == 0
        assert records(capsys.readouterr().out)[0]["results"] == {"value": "-2"}

    def test_hamming_min(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the smallest eigenvalue of H(12, 4)."""
        assert run(["hamming-min", "--n", "12", "--j", "4"]) == 0
        results = records(capsys.readouterr().out)[0]["results"]
        assert results["lambda_min"] == "-27"
        assert results["argmin_w"] == "3"

    def test_qpoly_closed_form(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test q_4 for n = 12 by recursion and closed form."""
        assert run(["qpoly", "--n", "12", "--j", "4", "--closed-form"]) == 0
        results = records(capsys.readouterr().out)[0]["results"]
        assert results["recursion"] == ["15", "0", "-8/3", "0", "1/24"]
        assert results["closed_form"] == results["recursion"]
        assert results["equal"] is True

    def test_z4_type(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test one eigenvalue of G(4, 2)."""
        assert run(["z4-spectrum", "--r", "4", "--s", "2", "--type", "0,1,10,1"]) == 0
        results = records(capsys.readouterr().out)[0]["results"]
        assert results == {"t": "0,1,10,1", "value": "-18900", "multiplicity": "132"}

    def test_z4_min(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the headline minimum."""
        assert run(["z4-min", "--r", "4", "--s", "2"]) == 0
        results = records(capsys.readouterr().out)[0]["results"]
        assert results["lambda_min"] == "-18900"
        assert results["matches_formula"] is True
        assert "0,1,10,1" in results["argmin_types"]

    def test_chiq_families(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test both graph families."""
        assert run(["chiq", "--family", "hamming", "--n", "8", "--j", "4"]) == 0
        assert run(["chiq", "--family", "z4", "--r", "4", "--s", "2"]) == 0
        hamming, z4 = records(capsys.readouterr().out)
        assert hamming["results"]["spectral_lb"] == "8"
        assert hamming["results"]["equality"] is True
        assert z4["results"]["spectral_lb"] == "12"
        assert z4["results"]["upper_bounds"] == [["n", 12.0]]

    def test_table_compare(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a single table row."""
        assert run(["table-compare", "--alphas", "0.09"]) == 0
        (row,) = records(capsys.readouterr().out)[0]["results"]
        assert row["l"] == 1.279
        assert row["u"] == 1.68
        assert row["region_holds"] is True

    def test_table_csv(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test CSV output has a header and one row per alpha."""
        assert run(["table-compare", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "alpha,command,l,l_displayed,region_holds,u"
        assert len(lines) == 18

    def test_output_is_deterministic(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test identical invocations give identical output."""
        run(["z4-spectrum", "--r", "1", "--s", "1"])
        first = capsys.readouterr().out
        run(["z4-spectrum", "--r", "1", "--s", "1"])
        assert capsys.readouterr().out == first


class TestCliErrors:
    """End-to-end tests for exit codes and diagnostics."""

    def test_malformed_integer(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test argparse errors exit 2 with a diagnostic."""
        assert run(["krawtchouk", "--n", "abc", "--j", "2"]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert diagnostics(captured.err)[-1]["error"] == "usage_error"

    def test_missing_family_flag(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test --family z4 without --s."""
        assert run(["chiq", "--family", "z4", "--r", "4"]) == 2
        diagnostic = diagnostics(capsys.readouterr().err)[-1]
        assert diagnostic["details"] == {"flag": "--s"}

    def test_range_error(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test j > n exits 2."""
        assert run(["hamming-min", "--n", "5", "--j", "9"]) == 2
        assert diagnostics(capsys.readouterr().err)[-1]["error"] == "range_error"

    def test_bad_type(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a type with the wrong number of parts."""
        assert run(["z4-spectrum", "--r", "1", "--s", "1", "--type", "1,1"]) == 2
        capsys.readouterr()

    def test_bad_alpha(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test alpha outside (0, 1/2) exits 2."""
        assert run(["table-compare", "--alphas", "0.6"]) == 2
        capsys.readouterr()

    def test_oracle_cap_restored(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test --oracle-cap only applies to its own run."""
        before = settings.z2_oracle_cap
        assert run(["krawtchouk", "--n", "4", "--j", "1", "--oracle-cap", "5"]) == 0
        assert settings.z2_oracle_cap == before
        assert "oracle_cap_override" in capsys.readouterr().err

    @pytest.mark.parametrize("cap", ["17", "30"])
    def test_oracle_cap_above_ceiling(self, cap: str, capsys: pytest.CaptureFixture[str]) -> None:
        """Test an --oracle-cap past a ceiling exits 2 and leaves settings untouched."""
        before = (settings.z2_oracle_cap, settings.z4_oracle_cap)
        assert run(["krawtchouk", "--n", "4", "--j", "1", "--oracle-cap", cap]) == 2
        assert (settings.z2_oracle_cap, settings.z4_oracle_cap) == before

        captured = capsys.readouterr()
        assert captured.out == ""
        assert diagnostics(captured.err)[-1]["error"] == "configuration_error"

    def test_verify_failure_exits_1(self, mocker, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a failing check sets exit code 1 and a failing summary."""
        mocker.patch(
            "src.cli.main.run_checks",
            return_value=iter([
                CheckResult(suite="quick", name="type_partition", passed=True),
                CheckResult(suite="quick", name="macwilliams", passed=False, detail="p=4"),
            ]),
        )
        assert run(["verify"]) == 1
        *checks, summary = records(capsys.readouterr().out)
        assert [c["results"]["passed"] for c in checks] == [True, False]
        assert summary["results"] == {"level": "quick", "passed": "1", "failed": "1", "ok": False}

    def test_metrics_file(self, tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test --metrics-file writes the registry."""
        target = tmp_path / "run.prom"
        assert run(["z4-min", "--r", "1", "--s", "1", "--metrics-file", str(target)]) == 0
        assert "spectra_operations_total" in target.read_text()
        capsys.readouterr()
