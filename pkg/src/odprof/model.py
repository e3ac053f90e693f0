"""Typed tables and the lexicographic weak order over attribute lists.

Cells are plain Python values (``int``, ``float``, ``str``, ``datetime.date``);
the column's :class:`ValueType` is the type tag.  Rows are tuples and a row's
identity is its position in the table.
"""

from __future__ import annotations

import datetime
import enum
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

AttributeList = tuple[int, ...]
AttributeSet = frozenset[int]


class ValueType(str, enum.Enum):
    INTEGER = "integer"
    REAL = "real"
    TEXT = "text"
    DATE = "date"


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def value_type_of(value: Any) -> ValueType:
    """Return the type tag of a single cell value."""
    # bool is an int subclass and datetime a date subclass; neither is a cell type
    if isinstance(value, bool):
        raise TypeError(f"booleans are not supported cell values: {value!r}")
    if isinstance(value, int):
        return ValueType.INTEGER
    if isinstance(value, float):
        return ValueType.REAL
    if isinstance(value, str):
        return ValueType.TEXT
    if isinstance(value, datetime.date) and not isinstance(value, datetime.datetime):
        return ValueType.DATE
    raise TypeError(f"unsupported cell value {value!r} of type {type(value).__name__}")


def compare_values(a: Any, b: Any) -> Ordering:
    """Compare two cells of the same type.

    Numbers compare numerically, text by code point and dates chronologically.
    Mixing types raises ``TypeError``; integer columns that need to meet reals
    are promoted when the table is built, never here.
    """
    ta, tb = value_type_of(a), value_type_of(b)
    if ta is not tb:
        raise TypeError(f"cannot compare {ta.value} with {tb.value}")
    if a < b:
        return Ordering.LESS
    if a == b:
        return Ordering.EQUAL
    return Ordering.GREATER


def leq_lex(t: Sequence[Any], s: Sequence[Any], attrs: Sequence[int]) -> bool:
    """``t`` precedes or ties ``s`` under the attribute list ``attrs``.

    Walks the list head first: an empty remainder means the tuples tie, a
    strictly smaller head decides in favour of ``t``, an equal head defers to
    the tail.
    """
    for a in attrs:
        order = compare_values(t[a], s[a])
        if order is Ordering.LESS:
            return True
        if order is Ordering.GREATER:
            return False
    return True


def strict_less_lex(t: Sequence[Any], s: Sequence[Any], attrs: Sequence[int]) -> bool:
    return leq_lex(t, s, attrs) and not leq_lex(s, t, attrs)


@dataclass(frozen=True)
class Column:
    name: str
    type: ValueType


def _coerce(value: Any, vtype: ValueType, where: str) -> Any:
    if vtype is ValueType.REAL and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    actual = value_type_of(value)
    if actual is not vtype:
        raise TypeError(f"{where}: expected {vtype.value}, got {actual.value} {value!r}")
    if vtype is ValueType.REAL and not math.isfinite(value):
        raise ValueError(f"{where}: non-finite real {value!r}")
    return value


@dataclass(frozen=True)
class Table:
    """An immutable row store with a typed schema.

    Duplicate rows are allowed.  ``rows[i]`` is the tuple with row id ``i``.
    """

    columns: tuple[Column, ...]
    rows: tuple[tuple[Any, ...], ...]
    name: str = "table"
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        columns = tuple(self.columns)
        names = [c.name for c in columns]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate attribute names: {dupes}")
        rows = []
        for i, row in enumerate(self.rows):
            row = tuple(row)
            if len(row) != len(columns):
                raise ValueError(f"row {i} has {len(row)} cells, schema has {len(columns)}")
            rows.append(
                tuple(
                    _coerce(v, c.type, f"row {i}, column {c.name!r}")
                    for v, c in zip(row, columns)
                )
            )
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def from_rows(
        cls,
        names: Sequence[str],
        rows: Iterable[Sequence[Any]],
        types: Sequence[ValueType] | None = None,
        name: str = "table",
    ) -> Table:
        """Build a table, inferring column types from the cell values when not given."""
        rows = [tuple(r) for r in rows]
        if types is None:
            types = []
            for j in range(len(names)):
                col = [r[j] for r in rows]
                found = {value_type_of(v) for v in col}
                if found == {ValueType.INTEGER, ValueType.REAL}:
                    types.append(ValueType.REAL)
                elif len(found) == 1:
                    types.append(found.pop())
                elif not found:
                    types.append(ValueType.INTEGER)
                else:
                    raise TypeError(f"column {names[j]!r} mixes {sorted(t.value for t in found)}")
        return cls(tuple(Column(n, t) for n, t in zip(names, types)), tuple(rows), name)

    @property
    def arity(self) -> int:
        return len(self.columns)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @property
    def types(self) -> tuple[ValueType, ...]:
        return tuple(c.type for c in self.columns)

    def __len__(self) -> int:
        return len(self.rows)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown attribute {name!r}; known: {', '.join(self.names)}") from None

    def indices(self, names: Iterable[str]) -> AttributeList:
        return tuple(self.index(n) for n in names)

    def check_attrs(self, attrs: Iterable[int]) -> None:
        for a in attrs:
            if not 0 <= a < self.arity:
                raise IndexError(f"attribute index {a} out of range for arity {self.arity}")

    def column(self, a: int) -> tuple[Any, ...]:
        return tuple(r[a] for r in self.rows)

    def project(self, row_id: int, attrs: Sequence[int]) -> tuple[Any, ...]:
        row = self.rows[row_id]
        return tuple(row[a] for a in attrs)
