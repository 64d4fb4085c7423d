"""Schema-v1 CSV readers.  This package consumes CSV files only; it never
imports or invokes the solver package that produced them."""

from __future__ import annotations

import csv
from dataclasses import dataclass

SCHEMA_HEADER = "# esdlab-schema v1"


class SchemaError(ValueError):
    """Input file is missing, not schema v1, or lacks a required column."""


@dataclass
class Table:
    path: str
    columns: list[str]
    rows: list[dict]

    def column(self, name: str, where=None) -> list:
        if name not in self.columns:
            raise SchemaError(f"{self.path}: missing column {name!r}")
        picked = self.rows if where is None else [r for r in self.rows if where(r)]
        return [r[name] for r in picked]


def read_table(path: str) -> Table:
    try:
        with open(path, encoding="utf-8") as fh:
            first = fh.readline().rstrip("\n")
            if first != SCHEMA_HEADER:
                raise SchemaError(f"{path}: expected {SCHEMA_HEADER!r}, got {first!r}")
            reader = csv.DictReader(fh)
            rows = []
            for raw in reader:
                row = {}
                for k, v in raw.items():
                    if v == "" or v is None:
                        row[k] = None
                    else:
                        try:
                            row[k] = float(v)
                        except ValueError:
                            row[k] = v
                rows.append(row)
    except OSError as e:
        raise SchemaError(f"{path}: {e}") from e
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return Table(path=path, columns=list(reader.fieldnames or []), rows=rows)
