"""
Output records and their JSON/CSV renderings.

Exact integers travel as decimal strings, rationals as "p/q" and types as "t0,t1,...".
"""
import csv
import io
import json
import threading
from collections.abc import Mapping
from fractions import Fraction
from typing import Any, Literal, TextIO

from pydantic import BaseModel, Field

from src.core.config import settings
from src.spectra.combinatorics import TypeVector
from src.spectra.krawtchouk import ExactPoly
from src.spectra.weight_enum import GaussianInt, WeightEnumerator

OutputFormat = Literal["json", "csv"]


class OutputRecord(BaseModel):
    """One machine-readable result emitted by the CLI."""

    schema_version: str = Field(default_factory=lambda: settings.schema_version)
    command: str = Field(..., description="Subcommand that produced the record")
    inputs: dict[str, Any] = Field(default_factory=dict)
    results: Any = Field(default=None, description="Payload mirroring the operation's return")
    provenance: list[str] = Field(default_factory=list, description="Results the payload rests on")


def to_transport(value: Any) -> Any:
    """Convert a result payload into JSON-safe values without losing precision."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, TypeVector):
        return str(value)
    if isinstance(value, GaussianInt):
        return str(value)
    if isinstance(value, ExactPoly):
        return [str(c) for c in value.coefficients]
    if isinstance(value, WeightEnumerator):
        return {
            "p": str(value.p),
            "n": str(value.n),
            "terms": {",".join(map(str, k)): str(v) for k, v in sorted(value.terms.items())},
        }
    if isinstance(value, BaseModel):
        return {name: to_transport(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, Mapping):
        return {str(k): to_transport(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_transport(v) for v in value]
    raise TypeError(f"Cannot serialise {type(value).__name__}")


def render_json(record: OutputRecord) -> str:
    """Deterministic single-line JSON with sorted keys."""
    payload = {
        "schema_version": record.schema_version,
        "command": record.command,
        "inputs": to_transport(record.inputs),
        "results": to_transport(record.results),
        "provenance": list(record.provenance),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _flatten(prefix: str, value: Any, row: dict[str, Any]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else key, value[key], row)
    elif isinstance(value, list):
        row[prefix] = ";".join(
            json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v) for v in value
        )
    else:
        row[prefix] = value


def csv_rows(record: OutputRecord) -> list[dict[str, Any]]:
    """Project a record onto flat rows; lists of objects become one row each."""
    results = to_transport(record.results)
    items = results if isinstance(results, list) else [results]
    rows = []
    for item in items:
        row: dict[str, Any] = {"command": record.command}
        _flatten("", item if isinstance(item, dict) else {"value": item}, row)
        rows.append(row)
    return rows


class RecordWriter:
    """Writes records to a stream, one flush per record, never interleaving."""

    def __init__(self, stream: TextIO, output_format: OutputFormat = "json") -> None:
        self._stream = stream
        self._format = output_format
        self._lock = threading.Lock()
        self._header: list[str] | None = None

    def write(self, record: OutputRecord) -> None:
        with self._lock:
            if self._format == "json":
                self._stream.write(render_json(record) + "\n")
            else:
                self._stream.write(self._render_csv(record))
            self._stream.flush()

    def _render_csv(self, record: OutputRecord) -> str:
        rows = csv_rows(record)
        fields = sorted({key for row in rows for key in row})
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
        if fields != self._header:
            writer.writeheader()
            self._header = fields
        writer.writerows(rows)
        return buffer.getvalue()
