"""Exhaustive enumeration of valid dependencies on small tables.

Everything here re-derives validity from the pairwise list-based checks,
never from partitions, so it can referee the discovery engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from odprof.checker import holds_canonical, order_compatible, satisfies_od
from odprof.dependencies import (
    BodyKind,
    CanonicalDependency,
    DependencySet,
    ListOD,
    map_od_to_canonical,
)
from odprof.discovery_set import implied
from odprof.model import AttributeList, Table


class BoundsError(ValueError):
    """The requested enumeration exceeds the configured guard."""


@dataclass(frozen=True)
class EnumerationBounds:
    max_list_len: int = 2
    allow_repeats: bool = False
    max_attrs: int = 6

    def __post_init__(self) -> None:
        if self.max_list_len < 1:
            raise ValueError("max_list_len must be at least 1")

    def check(self, table: Table) -> None:
        if table.arity > self.max_attrs:
            raise BoundsError(
                f"table {table.name!r} has {table.arity} attributes; "
                f"the enumeration guard allows {self.max_attrs}"
            )


def attribute_lists(arity: int, max_len: int, min_len: int = 1) -> Iterator[AttributeList]:
    """Repeat-free lists over ``range(arity)``, shortest first."""
    for k in range(min_len, min(max_len, arity) + 1):
        yield from permutations(range(arity), k)


def enumerate_valid_ocds(table: Table, bounds: EnumerationBounds) -> list[ListOD]:
    """Non-trivial OCDs ``X ~ Y`` that hold, one per symmetric pair.

    Sides are non-empty and repeat-free; they may share attributes only when
    ``bounds.allow_repeats`` is set.
    """
    bounds.check(table)
    lists = list(attribute_lists(table.arity, bounds.max_list_len))
    seen: set[tuple[AttributeList, AttributeList]] = set()
    out = []
    for x in lists:
        for y in lists:
            od = ListOD.compatible(x, y)
            key = od.symmetric_key()
            if key in seen:
                continue
            seen.add(key)
            if od.trivial:
                continue
            if not bounds.allow_repeats and set(x) & set(y):
                continue
            if order_compatible(table, x, y):
                out.append(ListOD.compatible(*key))
    return sorted(out, key=_od_sort_key)


def enumerate_valid_list_ods(table: Table, bounds: EnumerationBounds) -> list[ListOD]:
    """Every ``X -> Y`` within bounds that holds, trivial ones included (see ``ListOD.trivial``).

    Either side may be empty.
    """
    return [od for od, ok in _list_od_verdicts(table, bounds) if ok]


def _list_od_verdicts(table: Table, bounds: EnumerationBounds) -> Iterator[tuple[ListOD, bool]]:
    bounds.check(table)
    lists = list(attribute_lists(table.arity, bounds.max_list_len, min_len=0))
    for x in lists:
        for y in lists:
            if not bounds.allow_repeats and set(x) & set(y):
                continue
            yield ListOD.orders(x, y), satisfies_od(table, x, y)


def _od_sort_key(od: ListOD) -> tuple:
    return (len(od.lhs) + len(od.rhs), od.lhs, od.rhs)


def canonical_holds_by_definition(table: Table, dep: CanonicalDependency) -> bool:
    """Check a canonical statement through its list-based definition.

    Uses one ordering of the context (ascending indices); the definition
    is invariant under the choice.
    """
    ctx = tuple(sorted(dep.context))
    if dep.kind is BodyKind.CONSTANT:
        return satisfies_od(table, ctx, ctx + (dep.a,))
    return order_compatible(table, ctx + (dep.a,), ctx + (dep.b,))


def enumerate_canonical(table: Table, max_context: int | None = None) -> list[CanonicalDependency]:
    """Every non-trivial canonical statement with context size up to ``max_context``."""
    n = table.arity
    top = n if max_context is None else min(max_context, n)
    out = []
    for k in range(top + 1):
        for ctx in combinations(range(n), k):
            rest = [a for a in range(n) if a not in ctx]
            out.extend(CanonicalDependency.constant(ctx, a) for a in rest)
            out.extend(CanonicalDependency.compatible(ctx, a, b) for a, b in combinations(rest, 2))
    return out


def enumerate_valid_canonical(table: Table, max_context: int | None = None) -> DependencySet:
    return DependencySet(
        d for d in enumerate_canonical(table, max_context) if canonical_holds_by_definition(table, d)
    )


def canonical_closure_agrees(
    table: Table,
    canon: DependencySet,
    bounds: EnumerationBounds,
) -> bool:
    """Whether ``canon`` decides list-level validity exactly, within bounds.

    A list OD is judged valid through ``canon`` when every canonical image
    of it is implied by ``canon`` (see ``discovery_set.implied``).  That verdict
    must match the pairwise check for every list OD in range, and each
    image's implied status must match its direct check.
    """
    for od, ok in _list_od_verdicts(table, bounds):
        images = map_od_to_canonical(od.lhs, od.rhs)
        verdicts = [implied(canon, d) for d in images]
        if any(v != holds_canonical(table, d) for v, d in zip(verdicts, images)):
            return False
        if ok != all(verdicts):
            return False
    return True
