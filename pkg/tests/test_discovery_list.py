from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from odprof.checker import order_compatible
from odprof.dependencies import CanonicalDependency as CD
from odprof.dependencies import ListOD, map_ocd_to_canonical
from odprof.discovery_list import (
    ListCandidate,
    ListStats,
    diff_against_complete,
    expand,
    generate_level1,
    ocddiscover,
)
from odprof.model import Table
from odprof.oracle import BoundsError, EnumerationBounds

from properties import tables


@pytest.mark.parametrize("arity, count", [(2, 1), (3, 3), (4, 6)])
def test_level1_counts(arity, count):
    level = generate_level1(arity)
    assert len(level) == count
    assert all(c.lhs[0] < c.rhs[0] for c in level)


def test_expand_example():
    assert set(expand(ListCandidate((0,), (1,)), 3)) == {ListCandidate((0, 2), (1,)), ListCandidate((0,), (1, 2))}


def test_expand_exhausted():
    assert expand(ListCandidate((0, 2), (1,)), 3) == []


def test_expand_never_repeats_a_prefix():
    # year, month, week: <year,month> ~ <year,week> is out of reach from <year> ~ <month>
    frontier = [ListCandidate((0,), (1,))]
    seen = set()
    while frontier:
        c = frontier.pop()
        seen.add(c)
        frontier.extend(expand(c, 3))
    assert all(len(set(c.lhs + c.rhs)) == c.level for c in seen)
    with pytest.raises(ValueError):
        ListCandidate((0, 1), (0, 2))


def test_incompleteness_traversal_halts_at_level_one(incompleteness):
    stats = ListStats()
    assert ocddiscover(incompleteness, stats=stats) == []
    assert stats.checked == 3


def test_single_attribute_table_is_empty():
    assert ocddiscover(Table.from_rows(["a"], [(1,), (2,)])) == []


def test_level_guard(bug7):
    with pytest.raises(BoundsError):
        ocddiscover(bug7, max_level=9)
    with pytest.raises(ValueError):
        ocddiscover(bug7, max_level=1)


def test_diff_incompleteness(incompleteness):
    diff = diff_against_complete(incompleteness, EnumerationBounds(2))
    entry = diff.entry(ListOD.compatible((0, 1), (0, 2)))
    assert entry is not None and entry.covered_by_set
    assert entry.canonical == {CD.compatible([0], 1, 2)}
    assert len(diff.missed) == 3
    assert diff.found_by_both == ()


def test_diff_taxes_misses_year_prefix(taxes):
    diff = diff_against_complete(taxes, EnumerationBounds(2, max_attrs=taxes.arity))
    year, sal, bin_ = taxes.indices(["year", "salary", "bin"])
    assert diff.is_missed(ListOD.compatible((year, sal), (year, bin_)))
    assert all(m.covered_by_set for m in diff.missed)


@given(tables(min_attrs=2, max_attrs=2))
def test_diff_empty_on_two_attributes(table):
    # every repeated-attribute OCD over two attributes shares its images with <A> ~ <B>
    assert diff_against_complete(table, EnumerationBounds(2)).missed == ()


def test_grouping_is_by_exact_image_set():
    # the core <b> ~ <c> is reached, yet {a}: b ~ c differs from {}: b ~ c as an image set
    t = Table.from_rows(["a", "b", "c"], [(1, 1, 1), (2, 2, 2), (3, 3, 3)])
    diff = diff_against_complete(t, EnumerationBounds(2))
    assert ListOD.compatible((1,), (2,)) in diff.list_output
    entry = diff.entry(ListOD.compatible((0, 1), (0, 2)))
    assert entry is not None and entry.covered_by_set


@given(tables(max_attrs=4, max_rows=8))
def test_output_is_sound(table):
    for od in ocddiscover(table, max_level=min(4, 2 * max(table.arity, 2))):
        assert order_compatible(table, od.lhs, od.rhs)


@st.composite
def table_and_prefix(draw):
    table = draw(tables(min_attrs=2, max_attrs=4, max_rows=8))
    prefix = draw(st.lists(st.integers(0, table.arity - 1), max_size=2, unique=True))
    return table, tuple(prefix)


@given(table_and_prefix())
def test_one_true_direction(case):
    table, x = case
    for od in ocddiscover(table, max_level=3):
        if set(x) & set(od.lhs + od.rhs):
            continue
        assert order_compatible(table, x + od.lhs, x + od.rhs)


@given(tables(min_attrs=2, max_attrs=4, max_rows=8))
def test_missed_never_reached(table):
    diff = diff_against_complete(table, EnumerationBounds(2))
    reached_images = {map_ocd_to_canonical(o.lhs, o.rhs) for o in diff.list_output}
    for m in diff.missed:
        assert not any(m.od.same_statement(o) for o in diff.list_output)
        assert m.canonical not in reached_images
