"""Level-wise discovery of minimal canonical ODs over the context lattice.

Contexts are attribute sets, visited by size.  Each context's partition is
refined from one of its parents, and validity known at a parent carries over
to the child because a finer partition cannot create a split or a swap.

Minimality rules, each switchable through :class:`MinimalityPolicy`:

* ``context_subset``: drop a statement whose body already holds in a smaller
  context.
* ``constant_side``: drop ``X: A ~ B`` when ``A`` or ``B`` is constant in
  context ``X`` (or any subset of it).
* ``skip_constant_contexts``: do not visit a context containing an attribute
  that is constant in the rest of it.  Its partition equals that of the
  smaller context, so it can only repeat what was already found.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from odprof.checker import _swap_in_class, canonical_violation
from odprof.dependencies import BodyKind, CanonicalDependency, DependencySet
from odprof.model import AttributeSet, Table
from odprof.partitions import Partition, partition, refine
from odprof.syntax import render


@dataclass(frozen=True)
class DiscoveryConfig:
    max_context_size: int | None = None
    emit_trivial: bool = False
    parallel: bool = False
    workers: int | None = None


@dataclass(frozen=True)
class MinimalityPolicy:
    context_subset: bool = True
    constant_side: bool = True
    skip_constant_contexts: bool = True

    @classmethod
    def off(cls) -> MinimalityPolicy:
        return cls(False, False, False)


@dataclass
class LatticeStats:
    contexts_visited: int = 0
    contexts_skipped: int = 0
    levels: int = 0
    per_level: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class _Node:
    part: Partition
    const: frozenset[int]
    compat: frozenset[tuple[int, int]]


def _visit(
    table: Table,
    ctx: AttributeSet,
    parents: dict[AttributeSet, _Node],
    cfg: DiscoveryConfig,
    pol: MinimalityPolicy,
) -> tuple[_Node, list[CanonicalDependency]]:
    rows = table.rows
    subsets = [ctx - {e} for e in sorted(ctx)]
    if subsets:
        last = max(ctx)
        part = refine(parents[ctx - {last}].part, table, last)
    else:
        part = partition(table, ())

    seen_const: set[int] = set()
    seen_compat: set[tuple[int, int]] = set()
    for s in subsets:
        seen_const |= parents[s].const
        seen_compat |= parents[s].compat
    seen_const -= ctx
    seen_compat = {p for p in seen_compat if p[0] not in ctx and p[1] not in ctx}

    rest = [a for a in range(table.arity) if a not in ctx]
    classes = part.stripped
    const = set(seen_const)
    for a in rest:
        if a not in const and all(len({rows[i][a] for i in c}) == 1 for c in classes):
            const.add(a)
    compat = set(seen_compat)
    for pair in combinations(rest, 2):
        if pair in compat:
            continue
        a, b = pair
        if a in const or b in const or all(_swap_in_class(rows, c, a, b) is None for c in classes):
            compat.add(pair)

    out = []
    for a in sorted(const):
        if pol.context_subset and a in seen_const:
            continue
        out.append(CanonicalDependency.constant(ctx, a))
    for a, b in sorted(compat):
        if pol.constant_side and (a in const or b in const):
            continue
        if pol.context_subset and (a, b) in seen_compat:
            continue
        out.append(CanonicalDependency.compatible(ctx, a, b))
    if cfg.emit_trivial:
        for a in sorted(ctx):
            out.append(CanonicalDependency.unchecked(ctx, BodyKind.CONSTANT, a))
            for b in range(table.arity):
                if b != a and (b not in ctx or b > a):
                    out.append(CanonicalDependency.unchecked(ctx, BodyKind.COMPATIBLE, a, b))
    return _Node(part, frozenset(const), frozenset(compat)), out


def discover_canonical(
    table: Table,
    cfg: DiscoveryConfig | None = None,
    pol: MinimalityPolicy | None = None,
    stats: LatticeStats | None = None,
) -> DependencySet:
    """All canonical ODs that hold on ``table`` and survive the minimality rules.

    The result, read together with :func:`implied`, decides every canonical
    statement whose context has at most ``cfg.max_context_size`` attributes.
    Output is identical with and without ``cfg.parallel``.
    """
    cfg = cfg or DiscoveryConfig()
    pol = pol or MinimalityPolicy()
    stats = stats if stats is not None else LatticeStats()
    n = table.arity
    top = n if cfg.max_context_size is None else cfg.max_context_size
    if not 0 <= top <= n:
        raise ValueError(f"max_context_size must be within [0, {n}], got {top}")

    found: list[CanonicalDependency] = []
    prev: dict[AttributeSet, _Node] = {}
    level: list[AttributeSet] = [frozenset()]
    pool = ThreadPoolExecutor(cfg.workers) if cfg.parallel else None
    try:
        for size in range(top + 1):
            if not level:
                break
            if pool is not None:
                results = list(pool.map(lambda c: _visit(table, c, prev, cfg, pol), level))
            else:
                results = [_visit(table, c, prev, cfg, pol) for c in level]
            stats.levels += 1
            stats.per_level.append(len(level))
            stats.contexts_visited += len(level)
            current = {}
            for ctx, (node, deps) in zip(level, results):
                current[ctx] = node
                found.extend(deps)
            prev = current
            if size == top:
                break
            level = _next_level(prev, n, pol, stats)
    finally:
        if pool is not None:
            pool.shutdown()
    return DependencySet(found)


def _next_level(
    prev: dict[AttributeSet, _Node], n: int, pol: MinimalityPolicy, stats: LatticeStats
) -> list[AttributeSet]:
    children: set[AttributeSet] = set()
    for ctx in prev:
        for a in range(max(ctx, default=-1) + 1, n):
            child = ctx | {a}
            # every immediate subset must have been visited
            if all(child - {e} in prev for e in child):
                children.add(child)
    out = []
    for child in sorted(children, key=lambda c: tuple(sorted(c))):
        if pol.skip_constant_contexts and any(e in prev[child - {e}].const for e in child):
            stats.contexts_skipped += 1
            continue
        out.append(child)
    return out


def implied(canon: Iterable[CanonicalDependency], dep: CanonicalDependency) -> bool:
    """Whether ``dep`` follows from ``canon`` by the minimality rules read as implications.

    ``Y: [] -> A`` gives ``X: [] -> A`` and ``X: A ~ B`` for ``Y`` a subset of
    ``X``; ``Y: A ~ B`` gives ``X: A ~ B``.  Trivial statements always follow.
    """
    if dep.is_trivial:
        return True
    for e in canon:
        if not e.context <= dep.context:
            continue
        if e.kind is BodyKind.CONSTANT:
            if e.a in dep.body:
                return True
        elif dep.kind is BodyKind.COMPATIBLE and e.body == dep.body:
            return True
    return False


class UnknownDependency(LookupError):
    """The statement does not hold on the table, so it has no minimality status."""


@dataclass(frozen=True)
class Explanation:
    dependency: CanonicalDependency
    minimal: bool
    rule: str | None = None
    subsumed_by: CanonicalDependency | None = None

    def describe(self, names: Sequence[str]) -> str:
        if self.minimal:
            return "minimal"
        return f"subsumed by {render(self.subsumed_by, names)} ({self.rule} rule)"


def _smallest(candidates: Iterable[CanonicalDependency]) -> CanonicalDependency | None:
    return min(candidates, key=CanonicalDependency.sort_key, default=None)


def explain_minimality(
    table: Table,
    dep: CanonicalDependency,
    result: DependencySet,
    pol: MinimalityPolicy | None = None,
) -> Explanation:
    """Say why ``dep`` is or is not in a discovery ``result``.

    Raises :class:`UnknownDependency` with a violating row pair when ``dep``
    does not hold on ``table``.
    """
    pol = pol or MinimalityPolicy()
    pair = canonical_violation(table, dep)
    if pair is not None:
        s, t = pair
        raise UnknownDependency(
            f"{render(dep, table.names)} does not hold: rows t{s + 1} and t{t + 1} "
            f"violate it within one class of the context"
        )
    if dep in result:
        return Explanation(dep, True)
    below = [e for e in result if e.context <= dep.context]
    if dep.kind is BodyKind.COMPATIBLE and pol.constant_side:
        by = _smallest(e for e in below if e.kind is BodyKind.CONSTANT and e.a in dep.body)
        if by is not None:
            return Explanation(dep, False, "constant-side", by)
    if pol.context_subset:
        by = _smallest(
            e for e in below
            if e.context < dep.context and e.kind is dep.kind and e.body == dep.body
        )
        if by is not None:
            return Explanation(dep, False, "context-subset", by)
    if pol.skip_constant_contexts:
        by = _smallest(
            e for e in below
            if e.kind is BodyKind.CONSTANT and e.a in dep.context and e.a not in e.context
        )
        if by is not None:
            return Explanation(dep, False, "constant-in-context", by)
    raise AssertionError(f"{render(dep, table.names)} holds but is neither in the result nor implied by it")
