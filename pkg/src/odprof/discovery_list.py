"""List-based OCD discovery over the attribute-permutation lattice.

The traversal starts from every unordered pair ``<A> ~ <B>`` and, for each
candidate found to be order compatible, appends one unused attribute to the
right end of either side.  No attribute ever appears twice in a candidate,
which is exactly why OCDs with a common prefix such as ``<A,B> ~ <A,C>`` are
out of reach.  :func:`diff_against_complete` measures what that costs on a
given table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from odprof.checker import order_compatible
from odprof.dependencies import DependencySet, ListOD, map_ocd_to_canonical
from odprof.discovery_set import discover_canonical, implied
from odprof.model import AttributeList, Table
from odprof.oracle import BoundsError, EnumerationBounds, enumerate_valid_ocds

DEFAULT_MAX_LEVEL = 4


@dataclass(frozen=True)
class ListCandidate:
    lhs: AttributeList
    rhs: AttributeList

    def __post_init__(self) -> None:
        attrs = self.lhs + self.rhs
        if len(set(attrs)) != len(attrs):
            raise ValueError(f"candidate repeats an attribute: {self.lhs} ~ {self.rhs}")
        if not self.lhs or not self.rhs:
            raise ValueError("candidate sides must be non-empty")

    @property
    def level(self) -> int:
        return len(self.lhs) + len(self.rhs)

    def as_od(self) -> ListOD:
        return ListOD.compatible(self.lhs, self.rhs)


@dataclass
class ListStats:
    generated: int = 0
    distinct: int = 0
    checked: int = 0
    per_level: dict[int, int] = field(default_factory=dict)


def generate_level1(arity: int) -> list[ListCandidate]:
    """``<A> ~ <B>`` for every unordered pair; ``<B> ~ <A>`` is the same statement."""
    return [ListCandidate((a,), (b,)) for a, b in combinations(range(arity), 2)]


def expand(c: ListCandidate, arity: int) -> list[ListCandidate]:
    used = set(c.lhs) | set(c.rhs)
    out = []
    for a in range(arity):
        if a in used:
            continue
        out.append(ListCandidate(c.lhs + (a,), c.rhs))
        out.append(ListCandidate(c.lhs, c.rhs + (a,)))
    return out


def ocddiscover(
    table: Table,
    max_level: int = DEFAULT_MAX_LEVEL,
    stats: ListStats | None = None,
    all_candidates: bool = False,
) -> list[ListOD]:
    """OCDs found by the level-wise permutation traversal, up to ``max_level`` attributes.

    Only candidates that hold are expanded.  With ``all_candidates`` every
    generated candidate is expanded regardless, which measures the size of
    the candidate space rather than discovering anything.
    """
    if max_level < 2:
        raise ValueError("max_level must be at least 2")
    guard = 2 * max(table.arity, 2)
    if max_level > guard:
        raise BoundsError(f"max_level {max_level} exceeds the guard of {guard} for this schema")
    stats = stats if stats is not None else ListStats()
    found: set[ListCandidate] = set()
    level = generate_level1(table.arity)
    while level and level[0].level <= max_level:
        stats.generated += len(level)
        stats.per_level[level[0].level] = len(level)
        distinct = sorted(set(level), key=lambda c: (c.lhs, c.rhs))
        stats.distinct += len(distinct)
        passed = []
        for c in distinct:
            stats.checked += 1
            if all_candidates or order_compatible(table, c.lhs, c.rhs):
                passed.append(c)
        found.update(passed)
        # multiset: a candidate reachable from two parents is generated twice
        level = [child for c in passed for child in expand(c, table.arity)]
    if all_candidates:
        found = {c for c in found if order_compatible(table, c.lhs, c.rhs)}
    return [c.as_od() for c in sorted(found, key=lambda c: (c.level, c.lhs, c.rhs))]


@dataclass(frozen=True)
class MissedOCD:
    od: ListOD
    canonical: DependencySet
    covered_by_set: bool


@dataclass(frozen=True)
class DiffReport:
    """Valid OCDs within bounds, split by which engine reaches them.

    ``missed`` holds every valid OCD whose canonical image set is not shared
    by any OCD the list traversal outputs.
    """

    missed: tuple[MissedOCD, ...]
    found_by_both: tuple[ListOD, ...]
    found_only_by_set: tuple[ListOD, ...]
    bounds: EnumerationBounds
    list_output: tuple[ListOD, ...] = ()
    set_output: DependencySet = field(default_factory=DependencySet)

    def missed_ods(self) -> list[ListOD]:
        return [m.od for m in self.missed]

    def is_missed(self, od: ListOD) -> bool:
        return any(m.od.same_statement(od) for m in self.missed)

    def entry(self, od: ListOD) -> MissedOCD | None:
        return next((m for m in self.missed if m.od.same_statement(od)), None)


def diff_against_complete(table: Table, bounds: EnumerationBounds) -> DiffReport:
    bounds.check(table)
    oracle = enumerate_valid_ocds(table, EnumerationBounds(bounds.max_list_len, True, bounds.max_attrs))
    level = min(2 * bounds.max_list_len, 2 * max(table.arity, 2))
    reached = ocddiscover(table, max_level=level)
    reached_images = {map_ocd_to_canonical(od.lhs, od.rhs) for od in reached}
    canon = discover_canonical(table)

    missed, both, only_set = [], [], []
    for od in oracle:
        images = map_ocd_to_canonical(od.lhs, od.rhs)
        covered = all(implied(canon, d) for d in images)
        if images in reached_images:
            if covered:
                both.append(od)
        else:
            missed.append(MissedOCD(od, images, covered))
            if covered:
                only_set.append(od)
    return DiffReport(tuple(missed), tuple(both), tuple(only_set), bounds, tuple(reached), canon)
