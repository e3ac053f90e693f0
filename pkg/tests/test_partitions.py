from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from odprof.partitions import partition, refine

from properties import tables


def test_partition_examples(taxes):
    year, position = taxes.indices(["year", "position"])
    assert partition(taxes, []).classes == ((0, 1, 2, 3, 4, 5),)
    assert partition(taxes, [year]).classes == ((0, 1, 2), (3, 4, 5))
    assert partition(taxes, [position]).classes == ((0, 3), (1, 4), (2, 5))
    assert len(partition(taxes, [year, position])) == 6
    assert partition(taxes, [year, position]).stripped == ()


def test_refine_rejects_attribute_in_context(taxes):
    p = partition(taxes, [1])
    with pytest.raises(ValueError):
        refine(p, taxes, 1)


@st.composite
def table_context_attr(draw):
    table = draw(tables(min_attrs=2))
    ctx = draw(st.lists(st.integers(0, table.arity - 1), unique=True, max_size=table.arity - 1))
    attr = draw(st.sampled_from([a for a in range(table.arity) if a not in ctx]))
    return table, ctx, attr


@given(table_context_attr())
def test_refine_matches_direct_partition(case):
    table, ctx, attr = case
    refined = refine(partition(table, ctx), table, attr)
    direct = partition(table, ctx + [attr])
    assert refined.same_classes(direct)
    assert refined.classes == direct.classes


@given(table_context_attr())
def test_refinement_never_merges(case):
    table, ctx, attr = case
    coarse = partition(table, ctx)
    fine = refine(coarse, table, attr)
    assert len(fine) >= len(coarse)
    for cls in fine:
        assert any(set(cls) <= set(big) for big in coarse)
    assert sorted(r for cls in fine for r in cls) == list(range(len(table)))


@given(tables())
def test_classes_agree_exactly_on_context(table):
    ctx = list(range(0, table.arity, 2))
    for cls in partition(table, ctx):
        keys = {tuple(table.rows[i][a] for a in ctx) for i in cls}
        assert len(keys) == 1
