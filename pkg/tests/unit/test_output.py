"""
Unit tests for output records and their renderings.
"""
import io
import json
from fractions import Fraction

import pytest

from src.cli.output import OutputRecord, RecordWriter, csv_rows, render_json, to_transport
from src.spectra.combinatorics import TypeVector
from src.spectra.krawtchouk import ExactPoly
from src.spectra.weight_enum import GaussianInt, WeightEnumerator
from src.spectra.z4_spectrum import Z4EigenvalueRecord


class TestToTransport:
    """Test suite for lossless value conversion."""

    def test_integers_become_strings(self) -> None:
        """Test big integers survive as decimal strings."""
        assert to_transport(2**100) == "1267650600228229401496703205376"
        assert to_transport(-18900) == "-18900"

    def test_booleans_and_floats_pass_through(self) -> None:
        """Test bool is not treated as int."""
        assert to_transport(True) is True
        assert to_transport(1.279) == 1.279

    def test_exact_types(self) -> None:
        """Test rationals, types, Gaussian integers and polynomials."""
        assert to_transport(Fraction(-8, 3)) == "-8/3"
        assert to_transport(TypeVector.of(0, 1, 10, 1)) == "0,1,10,1"
        assert to_transport(GaussianInt(3, -2)) == "3-2i"
        assert to_transport(ExactPoly((Fraction(15), Fraction(0), Fraction(1, 24)))) == [
            "15", "0", "1/24",
        ]

    def test_enumerator(self) -> None:
        """Test enumerators become sorted term maps."""
        enumerator = WeightEnumerator.from_counts(2, 2, {(0, 2): 1, (2, 0): 1})
        assert to_transport(enumerator) == {"p": "2", "n": "2", "terms": {"0,2": "1", "2,0": "1"}}

    def test_models_are_walked(self) -> None:
        """Test pydantic models become field maps."""
        record = Z4EigenvalueRecord(t=TypeVector.of(0, 1, 10, 1), value=-18900, multiplicity=132)
        assert to_transport(record) == {"t": "0,1,10,1", "value": "-18900", "multiplicity": "132"}

    def test_unknown_type(self) -> None:
        """Test unsupported values are refused."""
        with pytest.raises(TypeError, match="Cannot serialise"):
            to_transport(object())


class TestRendering:
    """Test suite for JSON and CSV rendering."""

    @pytest.fixture
    def record(self) -> OutputRecord:
        """Create a small record."""
        return OutputRecord(
            command="krawtchouk",
            inputs={"n": 4, "j": 2},
            results={"column": [6, 0, -2, 0, 6]},
            provenance=["alternating binomial sum"],
        )

    def test_json_is_deterministic(self, record: OutputRecord) -> None:
        """Test single-line sorted JSON."""
        line = render_json(record)
        assert "\n" not in line
        assert line == render_json(record)
        payload = json.loads(line)
        assert list(payload) == sorted(payload)
        assert payload["schema_version"] == "hamming_spectra.output.v1"
        assert payload["results"]["column"] == ["6", "0", "-2", "0", "6"]

    def test_csv_rows_flatten_lists(self, record: OutputRecord) -> None:
        """Test list values are joined."""
        assert csv_rows(record) == [{"command": "krawtchouk", "column": "6;0;-2;0;6"}]

    def test_csv_one_row_per_item(self) -> None:
        """Test list results produce one row each."""
        record = OutputRecord(command="table-compare", results=[{"alpha": 0.01}, {"alpha": 0.02}])
        assert [row["alpha"] for row in csv_rows(record)] == [0.01, 0.02]

    def test_writer_repeats_header_only_on_change(self) -> None:
        """Test the CSV header is written once per field set."""
        stream = io.StringIO()
        writer = RecordWriter(stream, "csv")
        writer.write(OutputRecord(command="verify", results={"name": "a", "passed": True}))
        writer.write(OutputRecord(command="verify", results={"name": "b", "passed": False}))
        writer.write(OutputRecord(command="verify", results={"ok": True}))
        lines = stream.getvalue().splitlines()
        assert lines == [
            "command,name,passed",
            "verify,a,True",
            "verify,b,False",
            "command,ok",
            "verify,True",
        ]

    def test_writer_json_lines(self, record: OutputRecord) -> None:
        """Test one JSON object per line."""
        stream = io.StringIO()
        writer = RecordWriter(stream)
        writer.write(record)
        writer.write(record)
        assert [json.loads(line)["command"] for line in stream.getvalue().splitlines()] == [
            "krawtchouk",
            "krawtchouk",
        ]
