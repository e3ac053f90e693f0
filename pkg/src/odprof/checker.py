"""Satisfaction of order dependencies on a table, plus split/swap evidence.

List-based checks compare every ordered pair of rows; that pairwise reading
is the reference semantics.  Canonical checks go through partitions and are
tested against the pairwise reading.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence

from odprof.dependencies import BodyKind, CanonicalDependency
from odprof.model import AttributeList, Table, leq_lex
from odprof.partitions import partition


class WitnessKind(str, enum.Enum):
    SPLIT = "split"
    SWAP = "swap"


@dataclass(frozen=True)
class Witness:
    """A pair of row ids violating a dependency.

    Split: rows agree on ``set(lhs)`` and differ on attribute ``attribute`` of
    ``rhs``.  Swap: ``rows[0]`` strictly precedes ``rows[1]`` under ``lhs``
    while ``rows[1]`` strictly precedes ``rows[0]`` under ``rhs``.
    """

    kind: WitnessKind
    rows: tuple[int, int]
    lhs: AttributeList
    rhs: AttributeList
    attribute: int | None = None


@dataclass(frozen=True)
class WitnessReport:
    splits: tuple[Witness, ...]
    swaps: tuple[Witness, ...]
    total_splits: int
    total_swaps: int
    limit: int | None


def _keys(table: Table, attrs: Sequence[int]) -> list[tuple[Any, ...]]:
    # tuple comparison on projections is exactly the lexicographic order of leq_lex
    return [tuple(row[a] for a in attrs) for row in table.rows]


def satisfies_od(table: Table, lhs: Sequence[int], rhs: Sequence[int]) -> bool:
    """Every pair ``t, s`` with ``t <=_lhs s`` also has ``t <=_rhs s``."""
    table.check_attrs(lhs)
    table.check_attrs(rhs)
    x_keys, y_keys = _keys(table, lhs), _keys(table, rhs)
    n = len(x_keys)
    for t in range(n):
        xt, yt = x_keys[t], y_keys[t]
        for s in range(n):
            if xt <= x_keys[s] and not yt <= y_keys[s]:
                return False
    return True


def satisfies_od_reference(table: Table, lhs: Sequence[int], rhs: Sequence[int]) -> bool:
    """``satisfies_od`` spelled directly with ``leq_lex``; slow, used to cross-check."""
    rows = table.rows
    return all(
        not leq_lex(t, s, lhs) or leq_lex(t, s, rhs) for t in rows for s in rows
    )


def order_equivalent(table: Table, lhs: Sequence[int], rhs: Sequence[int]) -> bool:
    return satisfies_od(table, lhs, rhs) and satisfies_od(table, rhs, lhs)


def order_compatible(table: Table, lhs: Sequence[int], rhs: Sequence[int]) -> bool:
    lhs, rhs = tuple(lhs), tuple(rhs)
    return order_equivalent(table, lhs + rhs, rhs + lhs)


def decompose_check(table: Table, lhs: Sequence[int], rhs: Sequence[int]) -> tuple[bool, bool]:
    """``(FD part holds, OCD part holds)``; both true iff ``lhs -> rhs`` holds."""
    lhs, rhs = tuple(lhs), tuple(rhs)
    return satisfies_od(table, lhs, lhs + rhs), order_compatible(table, lhs, rhs)


def find_splits(
    table: Table, lhs: Sequence[int], rhs: Sequence[int], limit: int | None = None
) -> list[Witness]:
    """Row pairs ``(s, t)``, ``s < t``, equal on ``set(lhs)`` and unequal on ``set(rhs)``."""
    lhs, rhs = tuple(lhs), tuple(rhs)
    table.check_attrs(lhs + rhs)
    x_keys = _keys(table, sorted(set(lhs)))
    out = []
    for s, t in combinations(range(len(table)), 2):
        if x_keys[s] != x_keys[t]:
            continue
        differing = next((a for a in rhs if table.rows[s][a] != table.rows[t][a]), None)
        if differing is not None:
            out.append(Witness(WitnessKind.SPLIT, (s, t), lhs, rhs, differing))
            if limit is not None and len(out) >= limit:
                break
    return out


def find_swaps(
    table: Table, lhs: Sequence[int], rhs: Sequence[int], limit: int | None = None
) -> list[Witness]:
    """Row pairs ``(s, t)`` with ``s`` strictly before ``t`` on ``lhs`` and after it on ``rhs``."""
    lhs, rhs = tuple(lhs), tuple(rhs)
    table.check_attrs(lhs + rhs)
    x_keys, y_keys = _keys(table, lhs), _keys(table, rhs)
    n = len(table)
    out = []
    for s in range(n):
        for t in range(n):
            if x_keys[s] < x_keys[t] and y_keys[t] < y_keys[s]:
                out.append(Witness(WitnessKind.SWAP, (s, t), lhs, rhs))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def collect_witnesses(
    table: Table, lhs: Sequence[int], rhs: Sequence[int], limit: int | None = None
) -> WitnessReport:
    """Splits and swaps for ``lhs -> rhs``, each list capped at ``limit``, totals exact."""
    splits = find_splits(table, lhs, rhs)
    swaps = find_swaps(table, lhs, rhs)
    cap = slice(None) if limit is None else slice(limit)
    return WitnessReport(
        tuple(splits[cap]), tuple(swaps[cap]), len(splits), len(swaps), limit
    )


def _swap_in_class(rows: Sequence[tuple], cls: Sequence[int], a: int, b: int) -> tuple[int, int] | None:
    """A pair in ``cls`` with ``a`` strictly increasing and ``b`` strictly decreasing."""
    ordered = sorted(cls, key=lambda i: (rows[i][a], rows[i][b]))
    # max b seen among rows with strictly smaller a, and the row holding it
    best: int | None = None
    group_start = 0
    for k, i in enumerate(ordered):
        if k > 0 and rows[i][a] != rows[ordered[k - 1]][a]:
            for j in ordered[group_start:k]:
                if best is None or rows[j][b] > rows[best][b]:
                    best = j
            group_start = k
        if best is not None and rows[best][b] > rows[i][b]:
            return best, i
    return None


def canonical_violation(table: Table, dep: CanonicalDependency) -> tuple[int, int] | None:
    """A row pair violating ``dep``, or None when it holds."""
    table.check_attrs(dep.context | set(dep.body))
    rows = table.rows
    for cls in partition(table, dep.context).stripped:
        if dep.kind is BodyKind.CONSTANT:
            first = rows[cls[0]][dep.a]
            for i in cls[1:]:
                if rows[i][dep.a] != first:
                    return cls[0], i
        else:
            pair = _swap_in_class(rows, cls, dep.a, dep.b)
            if pair is not None:
                return pair
    return None


def holds_canonical(table: Table, dep: CanonicalDependency) -> bool:
    return canonical_violation(table, dep) is None
