"""Equivalence classes of rows over attribute sets."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from odprof.model import AttributeSet, Table


@dataclass(frozen=True)
class Partition:
    """Rows grouped by their projection on ``over``.

    ``classes`` is ordered by smallest row id and each class is a sorted tuple.
    """

    over: AttributeSet
    classes: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.classes)

    @property
    def stripped(self) -> tuple[tuple[int, ...], ...]:
        """Classes with at least two rows.  Singletons never witness a violation."""
        return tuple(c for c in self.classes if len(c) > 1)

    def class_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.classes)

    def same_classes(self, other: Partition) -> bool:
        return self.classes == other.classes


def _normalise(groups: Iterable[list[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(g)) for g in groups), key=lambda c: c[0]))


def partition(table: Table, attrs: Iterable[int]) -> Partition:
    over = frozenset(attrs)
    table.check_attrs(over)
    key_attrs = sorted(over)
    groups: dict[tuple, list[int]] = defaultdict(list)
    for i, row in enumerate(table.rows):
        groups[tuple(row[a] for a in key_attrs)].append(i)
    return Partition(over, _normalise(groups.values()))


def refine(p: Partition, table: Table, attr: int) -> Partition:
    """``partition(table, p.over | {attr})`` computed by splitting ``p``'s classes."""
    if attr in p.over:
        raise ValueError(f"attribute {attr} already in the partition's attribute set")
    table.check_attrs([attr])
    out: list[list[int]] = []
    for cls in p.classes:
        if len(cls) == 1:
            out.append(list(cls))
            continue
        sub: dict[object, list[int]] = {}
        for i in cls:
            sub.setdefault(table.rows[i][attr], []).append(i)
        out.extend(sub.values())
    return Partition(p.over | {attr}, _normalise(out))
