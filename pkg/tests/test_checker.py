from __future__ import annotations

from hypothesis import given

from odprof.checker import (
    WitnessKind,
    canonical_violation,
    collect_witnesses,
    decompose_check,
    find_splits,
    find_swaps,
    holds_canonical,
    order_compatible,
    order_equivalent,
    satisfies_od,
    satisfies_od_reference,
)
from odprof.dependencies import CanonicalDependency as CD
from odprof.model import Table, strict_less_lex
from odprof.syntax import parse

from properties import (
    prop_context_permutation_invariance,
    prop_decomposition,
    prop_od_implies_fd,
    table_and_lists,
)


def _od(table, text):
    od = parse(text, table.names)
    return od.lhs, od.rhs


def test_taxes_list_ods(taxes):
    for text in ["salary -> tax", "salary -> percentage", "salary -> group,subgroup", "year,salary -> year,bin"]:
        assert satisfies_od(taxes, *_od(taxes, text)), text
    assert not satisfies_od(taxes, *_od(taxes, "salary -> subgroup,group"))


def test_taxes_position_splits(taxes):
    splits = find_splits(taxes, *_od(taxes, "position -> salary"))
    assert [w.rows for w in splits] == [(0, 3), (1, 4), (2, 5)]
    assert all(w.kind is WitnessKind.SPLIT and taxes.names[w.attribute] == "salary" for w in splits)


def test_taxes_salary_subgroup_swap(taxes):
    swaps = {w.rows for w in find_swaps(taxes, *_od(taxes, "salary -> subgroup"))}
    assert (0, 1) in swaps


def test_taxes_canonical(taxes):
    assert holds_canonical(taxes, parse("{position}: [] -> bin", taxes.names))
    assert holds_canonical(taxes, parse("{year}: bin ~ salary", taxes.names))
    assert not holds_canonical(taxes, parse("{year}: bin ~ subgroup", taxes.names))
    assert not holds_canonical(taxes, parse("{position}: [] -> salary", taxes.names))


def test_incompleteness_table(incompleteness):
    A, B, C = 0, 1, 2
    assert order_compatible(incompleteness, [A, B], [A, C])
    assert not order_compatible(incompleteness, [B], [C])
    assert not order_compatible(incompleteness, [A, B], [C])
    assert not order_compatible(incompleteness, [B], [A, C])


def test_bug7_misread_od_is_violated(bug7):
    assert not satisfies_od(bug7, *_od(bug7, "B -> A,C"))


def test_item9_split_rows(bug7):
    dep = parse("{A,B}: [] -> C", bug7.names)
    assert canonical_violation(bug7, dep) == (1, 2)


def test_empty_lists():
    t = Table.from_rows(["a", "b"], [(1, 2), (2, 1)])
    assert order_compatible(t, [], [0])
    assert order_compatible(t, [], [])
    assert satisfies_od(t, [0], [])
    assert not satisfies_od(t, [], [0])


def test_order_equivalence():
    t = Table.from_rows(["a", "b", "c"], [(1, 10, 5), (2, 20, 4)])
    assert order_equivalent(t, [0], [1])
    assert not order_equivalent(t, [0], [2])


def test_decompose_check_examples(taxes):
    # text order is direct < mngr < secr, so salary both splits and swaps against position
    assert decompose_check(taxes, *_od(taxes, "position -> salary")) == (False, False)
    assert decompose_check(taxes, *_od(taxes, "salary -> tax")) == (True, True)
    assert decompose_check(taxes, *_od(taxes, "position -> bin")) == (True, False)


def test_witness_cap_keeps_totals(taxes):
    lhs, rhs = _od(taxes, "salary -> subgroup,group")
    report = collect_witnesses(taxes, lhs, rhs, limit=2)
    assert len(report.swaps) == 2
    assert report.total_swaps == len(find_swaps(taxes, lhs, rhs)) > 2


def test_decomposition_property():
    prop_decomposition()


def test_od_implies_fd_property():
    prop_od_implies_fd()


def test_context_permutation_property():
    prop_context_permutation_invariance()


@given(table_and_lists())
def test_keyed_check_matches_reference(case):
    table, x, y = case
    assert satisfies_od(table, x, y) == satisfies_od_reference(table, x, y)


@given(table_and_lists(unique=True))
def test_witnesses_sound_and_complete(case):
    table, x, y = case
    rows = table.rows
    xs, ys = sorted(set(x)), sorted(set(y))
    expected_splits = {
        (s, t) for s in range(len(rows)) for t in range(s + 1, len(rows))
        if all(rows[s][a] == rows[t][a] for a in xs) and any(rows[s][a] != rows[t][a] for a in ys)
    }
    expected_swaps = {
        (s, t) for s in range(len(rows)) for t in range(len(rows))
        if strict_less_lex(rows[s], rows[t], x) and strict_less_lex(rows[t], rows[s], y)
    }
    assert {w.rows for w in find_splits(table, x, y)} == expected_splits
    assert {w.rows for w in find_swaps(table, x, y)} == expected_swaps
    # splits of the FD part plus swaps of the OCD part decide the OD
    holds = not find_splits(table, x, tuple(x) + tuple(y)) and not expected_swaps
    assert holds == satisfies_od(table, x, y)


@given(table_and_lists(unique=True))
def test_canonical_violation_is_a_real_violation(case):
    table, x, _ = case
    if len(x) < 2 or table.arity < 2:
        return
    ctx, (a, b) = x[:-2], x[-2:]
    dep = CD.compatible(ctx, a, b)
    pair = canonical_violation(table, dep)
    if pair is None:
        return
    s, t = pair
    r = table.rows
    assert all(r[s][c] == r[t][c] for c in ctx)
    assert (r[s][a] - r[t][a]) * (r[s][b] - r[t][b]) < 0
