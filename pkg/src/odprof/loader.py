"""CSV ingestion with per-column type inference."""

from __future__ import annotations

import csv
import datetime
import io
import math
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

from odprof.model import Column, Table, ValueType

DEFAULT_DATE_FORMATS = ("%Y-%m-%d", "%d/%m/%Y")

_INTEGER = re.compile(r"[+-]?\d+")
_DECIMAL = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


class LoadError(ValueError):
    """Input that cannot become a table; the message names the location."""


@dataclass(frozen=True)
class LoadOptions:
    delimiter: str = ","
    has_header: bool = True
    type_overrides: Mapping[str, ValueType] = field(default_factory=dict)
    date_formats: Sequence[str] = DEFAULT_DATE_FORMATS


def _parse_integer(raw: str) -> int:
    if not _INTEGER.fullmatch(raw):
        raise ValueError(raw)
    return int(raw)


def _parse_real(raw: str) -> float:
    if not _DECIMAL.fullmatch(raw):
        raise ValueError(raw)
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError(raw)
    return value


def _date_parser(formats: Sequence[str]) -> Callable[[str], datetime.date]:
    def parse(raw: str) -> datetime.date:
        for fmt in formats:
            try:
                return datetime.datetime.strptime(raw, fmt).date()
            except ValueError:
                continue
        raise ValueError(raw)

    return parse


def _parsers(date_formats: Sequence[str]) -> dict[ValueType, Callable[[str], Any]]:
    return {
        ValueType.INTEGER: _parse_integer,
        ValueType.REAL: _parse_real,
        ValueType.DATE: _date_parser(date_formats),
        ValueType.TEXT: str,
    }


def _all_parse(values: Sequence[str], parser: Callable[[str], Any]) -> bool:
    try:
        for v in values:
            parser(v)
    except ValueError:
        return False
    return True


def infer_column_type(values: Sequence[str], date_formats: Sequence[str] = DEFAULT_DATE_FORMATS) -> ValueType:
    """First of integer, real, date that every value parses as; text otherwise."""
    if not values:
        raise LoadError("cannot infer the type of an empty column")
    for i, v in enumerate(values):
        if v == "":
            raise LoadError(f"empty cell at row {i + 1}")
    parsers = _parsers(date_formats)
    for vtype in (ValueType.INTEGER, ValueType.REAL, ValueType.DATE):
        if _all_parse(values, parsers[vtype]):
            return vtype
    return ValueType.TEXT


def read_table(
    text: str, opts: LoadOptions | None = None, name: str = "table", source: str = "<string>"
) -> Table:
    """Parse CSV text into a :class:`Table`.  ``source`` is used in error messages."""
    opts = opts or LoadOptions()
    reader = csv.reader(io.StringIO(text), delimiter=opts.delimiter)
    records = [(reader.line_num, rec) for rec in reader if rec]
    if opts.has_header:
        if not records:
            raise LoadError(f"{source}: missing header line")
        _, header = records.pop(0)
        header = [h.strip() for h in header]
    else:
        width = len(records[0][1]) if records else 0
        header = [f"c{j}" for j in range(width)]
    if len(set(header)) != len(header):
        raise LoadError(f"{source}: duplicate column names in header")
    unknown = set(opts.type_overrides) - set(header)
    if unknown:
        raise LoadError(f"{source}: type override for unknown column(s) {sorted(unknown)}")

    for line, rec in records:
        if len(rec) != len(header):
            raise LoadError(
                f"{source}, line {line}: expected {len(header)} fields, found {len(rec)}"
            )
        for j, cell in enumerate(rec):
            if cell == "":
                raise LoadError(f"{source}, line {line}: empty cell in column {header[j]!r}")

    parsers = _parsers(opts.date_formats)
    columns, converted = [], []
    for j, col_name in enumerate(header):
        raw = [rec[j] for _, rec in records]
        vtype = opts.type_overrides.get(col_name)
        if vtype is None:
            vtype = infer_column_type(raw, opts.date_formats) if raw else ValueType.TEXT
        vtype = ValueType(vtype)
        values = []
        for (line, _), cell in zip(records, raw):
            try:
                values.append(parsers[vtype](cell))
            except ValueError:
                raise LoadError(
                    f"{source}, line {line}: {cell!r} in column {col_name!r} is not {vtype.value}"
                ) from None
        columns.append(Column(col_name, vtype))
        converted.append(values)
    rows = tuple(zip(*converted)) if converted else ()
    return Table(tuple(columns), rows, name)


def load_csv(path: str | os.PathLike, opts: LoadOptions | None = None) -> Table:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror or exc}") from None
    return read_table(text, opts, name=path.stem, source=str(path))


def format_value(value: Any, vtype: ValueType) -> str:
    if vtype is ValueType.DATE:
        return value.isoformat()
    return repr(value) if vtype is ValueType.REAL else str(value)


def table_to_csv(table: Table, delimiter: str = ",") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(table.names)
    for row in table.rows:
        writer.writerow([format_value(v, c.type) for v, c in zip(row, table.columns)])
    return buf.getvalue()
