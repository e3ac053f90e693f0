"""Random tables and the property checks shared by unit and acceptance tests.

Each ``prop_*`` is a hypothesis test; calling it runs the full search.
Reference predicates here loop over row pairs with ``leq_lex`` and never go
through the checker's key-based or partition-based fast paths.
"""

from __future__ import annotations

from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from odprof.checker import holds_canonical, order_compatible, satisfies_od
from odprof.dependencies import CanonicalDependency, map_od_to_canonical
from odprof.discovery_set import discover_canonical, implied
from odprof.model import Table, leq_lex, strict_less_lex
from odprof.oracle import enumerate_canonical

MAX_ATTRS = 5
MAX_ROWS = 10
MAX_LIST = 3
EXAMPLES = 200

settings.register_profile("odprof", max_examples=EXAMPLES, deadline=None)
settings.load_profile("odprof")


@st.composite
def tables(draw, min_attrs: int = 1, max_attrs: int = MAX_ATTRS, max_rows: int = MAX_ROWS, values: int = 4):
    arity = draw(st.integers(min_attrs, max_attrs))
    n = draw(st.integers(0, max_rows))
    cell = st.integers(0, values - 1)
    rows = draw(st.lists(st.tuples(*[cell] * arity), min_size=n, max_size=n))
    names = [chr(ord("A") + i) for i in range(arity)]
    return Table.from_rows(names, rows)


def attr_lists(arity: int, max_len: int = MAX_LIST, min_len: int = 0, unique: bool = False):
    return st.lists(st.integers(0, arity - 1), min_size=min_len, max_size=max_len, unique=unique).map(tuple)


@st.composite
def table_and_lists(draw, unique: bool = False, count: int = 2):
    table = draw(tables())
    lists = [draw(attr_lists(table.arity, unique=unique)) for _ in range(count)]
    return (table, *lists)


def ref_od(table: Table, x, y) -> bool:
    rows = table.rows
    return all(leq_lex(t, s, y) for t in rows for s in rows if leq_lex(t, s, x))


def ref_fd(table: Table, x, y) -> bool:
    xs, ys = sorted(set(x)), sorted(set(y))
    rows = table.rows
    return all(
        [t[a] for a in ys] == [s[a] for a in ys]
        for t in rows for s in rows if [t[a] for a in xs] == [s[a] for a in xs]
    )


def ref_ocd(table: Table, x, y) -> bool:
    rows = table.rows
    return not any(strict_less_lex(s, t, x) and strict_less_lex(t, s, y) for s in rows for t in rows)


@given(table_and_lists())
def prop_decomposition(case):
    """An OD holds exactly when its FD part and its OCD part both hold."""
    table, x, y = case
    assert ref_od(table, x, y) == (ref_fd(table, x, y) and ref_ocd(table, x, y))
    assert satisfies_od(table, x, y) == ref_od(table, x, y)
    assert order_compatible(table, x, y) == ref_ocd(table, x, y)


@given(table_and_lists())
def prop_od_implies_fd(case):
    table, x, y = case
    if satisfies_od(table, x, y):
        assert ref_fd(table, x, y)


@given(table_and_lists())
def prop_mapping_equivalence(case):
    table, x, y = case
    images = map_od_to_canonical(x, y)
    assert ref_od(table, x, y) == all(holds_canonical(table, d) for d in images)


@st.composite
def canonical_cases(draw):
    table = draw(tables(min_attrs=2))
    n = table.arity
    ctx = draw(st.lists(st.integers(0, n - 1), max_size=min(3, n - 2), unique=True))
    rest = [a for a in range(n) if a not in ctx]
    body = draw(st.lists(st.sampled_from(rest), min_size=1, max_size=2, unique=True))
    if len(body) == 1:
        dep = CanonicalDependency.constant(ctx, body[0])
    else:
        dep = CanonicalDependency.compatible(ctx, *body)
    return table, dep


@given(canonical_cases())
def prop_context_permutation_invariance(case):
    """Every ordering of the context gives the same verdict as the partition check."""
    table, dep = case
    verdict = holds_canonical(table, dep)
    for order in permutations(sorted(dep.context)):
        if dep.b is None:
            assert ref_od(table, order, order + (dep.a,)) == verdict
        else:
            assert ref_ocd(table, order + (dep.a,), order + (dep.b,)) == verdict


@st.composite
def row_triples(draw):
    arity = draw(st.integers(1, MAX_ATTRS))
    row = st.tuples(*[st.integers(0, 2)] * arity)
    t, s, u = draw(row), draw(row), draw(row)
    attrs = draw(attr_lists(arity))
    return t, s, u, attrs


@given(row_triples())
def prop_weak_order(case):
    t, s, u, attrs = case
    assert leq_lex(t, s, attrs) or leq_lex(s, t, attrs)
    assert leq_lex(t, t, attrs)
    if leq_lex(t, s, attrs) and leq_lex(s, u, attrs):
        assert leq_lex(t, u, attrs)


@given(table_and_lists(count=3))
def prop_prefix_closure(case):
    """A common prefix never breaks a compatibility that already holds."""
    table, x, y, z = case
    if order_compatible(table, y, z):
        assert ref_ocd(table, x + y, x + z)


@given(tables())
def prop_set_discovery_complete(table):
    found = discover_canonical(table)
    for d in found:
        assert holds_canonical(table, d)
    for d in enumerate_canonical(table):
        expected = ref_od(table, sorted(d.context), sorted(d.context) + [d.a]) if d.b is None else ref_ocd(
            table, sorted(d.context) + [d.a], sorted(d.context) + [d.b]
        )
        assert implied(found, d) == expected, d


ACCEPTANCE_PROPERTIES = {
    "a": prop_decomposition,
    "b": prop_od_implies_fd,
    "c": prop_mapping_equivalence,
    "d": prop_context_permutation_invariance,
    "e": prop_weak_order,
    "f": prop_prefix_closure,
    "g": prop_set_discovery_complete,
}
