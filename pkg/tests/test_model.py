from __future__ import annotations

import datetime

import pytest
from hypothesis import given
from hypothesis import strategies as st

from odprof.checker import _keys
from odprof.model import (
    Column,
    Ordering,
    Table,
    ValueType,
    compare_values,
    leq_lex,
    strict_less_lex,
    value_type_of,
)

from properties import attr_lists, prop_weak_order, tables


def test_compare_values_numeric_and_text():
    assert compare_values(1, 2) is Ordering.LESS
    assert compare_values(2.5, 2.5) is Ordering.EQUAL
    assert compare_values("secr", "mngr") is Ordering.GREATER
    assert compare_values("III", "II") is Ordering.GREATER
    assert compare_values(5, 8) is Ordering.LESS
    d1, d2 = datetime.date(2020, 1, 1), datetime.date(2020, 2, 1)
    assert compare_values(d1, d2) is Ordering.LESS


def test_compare_values_rejects_mixed_types():
    with pytest.raises(TypeError):
        compare_values(1, "1")


def test_value_type_of_rejects_bool():
    with pytest.raises(TypeError):
        value_type_of(True)


def test_leq_lex_examples():
    t, s = (1, 5), (1, 3)
    assert leq_lex(t, s, [0])
    assert leq_lex(s, t, [0])
    assert not leq_lex(t, s, [0, 1])
    assert leq_lex(s, t, [0, 1])
    assert leq_lex(t, s, [])
    assert strict_less_lex(s, t, [0, 1])
    assert not strict_less_lex(s, t, [0])


def test_table_validation():
    with pytest.raises(ValueError):
        Table((Column("a", ValueType.INTEGER), Column("a", ValueType.INTEGER)), ())
    with pytest.raises(ValueError):
        Table((Column("a", ValueType.INTEGER),), ((1, 2),))
    with pytest.raises(ValueError):
        Table.from_rows(["x"], [(float("nan"),)])


def test_table_index_and_projection():
    t = Table.from_rows(["a", "b"], [(1, "x"), (2, "y")])
    assert t.index("b") == 1
    assert t.indices(["b", "a"]) == (1, 0)
    assert t.project(1, [1, 0]) == ("y", 2)
    assert t.types == (ValueType.INTEGER, ValueType.TEXT)
    with pytest.raises(KeyError, match="known: a, b"):
        t.index("c")
    with pytest.raises(IndexError):
        t.check_attrs([2])


def test_mixed_numeric_column_becomes_real():
    t = Table.from_rows(["a"], [(1,), (2.5,)])
    assert t.types == (ValueType.REAL,)
    assert t.rows[0] == (1.0,)


def test_weak_order_properties():
    prop_weak_order()


@st.composite
def table_and_list(draw):
    table = draw(tables())
    return table, draw(attr_lists(table.arity))


@given(table_and_list())
def test_projection_keys_match_leq_lex(case):
    table, attrs = case
    keys = _keys(table, attrs)
    for i, t in enumerate(table.rows):
        for j, s in enumerate(table.rows):
            assert (keys[i] <= keys[j]) == leq_lex(t, s, attrs)


@given(table_and_list())
def test_equal_projection_means_mutual_order(case):
    table, attrs = case
    for t in table.rows:
        for s in table.rows:
            same = all(t[a] == s[a] for a in attrs)
            assert same == (leq_lex(t, s, attrs) and leq_lex(s, t, attrs))
