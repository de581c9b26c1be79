"""
Table rendering for CLI and HTTP output.

Rationals are written as "num/den" strings and never as floats, so every
rendering is exact and byte-for-byte reproducible.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from .exceptions import InputError

FORMATS = ("csv", "json", "text")
DOCUMENT_FORMAT = 1


@dataclass
class Table:
    """A named table; each row is a mapping from column name to value."""
    name: str
    columns: Sequence[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def add(self, row: Dict[str, Any]) -> None:
        self.rows.append({column: row.get(column) for column in self.columns})


class ReportDocument(BaseModel):
    """JSON document shape shared by the CLI and the HTTP API."""
    format: int = Field(DOCUMENT_FORMAT, description="Document format version")
    command: str = Field(..., description="Command that produced the tables")
    metadata: Dict[str, Any] = Field(default_factory=dict, description="Field, prime and search parameters")
    tables: Dict[str, List[Dict[str, Any]]] = Field(..., description="Rows keyed by table name")


def format_value(value: Any) -> Any:
    """JSON-ready cell value: exact rationals become "num/den" strings."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def _cell(value: Any) -> str:
    """CSV and text cell: booleans read as yes/no."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    value = format_value(value)
    return "" if value is None else str(value)


def to_document(command: str, tables: Sequence[Table], metadata: Optional[Dict[str, Any]] = None) -> ReportDocument:
    return ReportDocument(
        command=command,
        metadata={key: format_value(value) for key, value in (metadata or {}).items()},
        tables={
            table.name: [{column: format_value(row[column]) for column in table.columns} for row in table.rows]
            for table in tables
        },
    )


def _render_csv(tables: Sequence[Table]) -> str:
    blocks = []
    for table in tables:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_cell(row[column]) for column in table.columns])
        blocks.append(buffer.getvalue())
    return "\n".join(blocks)


def _render_text(tables: Sequence[Table], metadata: Dict[str, Any]) -> str:
    lines = [f"# {key}: {_cell(value)}" for key, value in metadata.items()]
    for table in tables:
        if lines:
            lines.append("")
        lines.append(f"[{table.name}]")
        cells = [[_cell(row[column]) for column in table.columns] for row in table.rows]
        widths = [
            max([len(column)] + [len(line[k]) for line in cells])
            for k, column in enumerate(table.columns)
        ]
        lines.append("  ".join(column.rjust(width) for column, width in zip(table.columns, widths)).rstrip())
        for line in cells:
            lines.append("  ".join(value.rjust(width) for value, width in zip(line, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(
    command: str,
    tables: Sequence[Table],
    fmt: str = "csv",
    metadata: Optional[Dict[str, Any]] = None,
) -> str:
    """
    Render tables as ``csv``, ``json`` or ``text``.

    CSV carries only the tables (blank line between them); JSON and text also
    carry the metadata.
    """
    if fmt == "csv":
        return _render_csv(tables)
    if fmt == "json":
        document = to_document(command, tables, metadata)
        return json.dumps(document.model_dump(), sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        return _render_text(tables, metadata or {})
    raise InputError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
