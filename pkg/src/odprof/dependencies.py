"""List-based and set-based (canonical) order dependency statements.

A list-based OD relates two attribute lists.  A canonical OD fixes an
attribute *set* as context and states either that one attribute is constant
within every class of the context, or that two attributes never swap within
any class.  The ``map_*`` functions translate the former into the latter.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from odprof.model import AttributeList, AttributeSet


class ODKind(str, enum.Enum):
    ORDERS = "orders"
    EQUIVALENT = "equivalent"
    COMPATIBLE = "compatible"


def dedupe_list(attrs: Sequence[int]) -> AttributeList:
    """Drop repeated occurrences, keeping the first.  ``[A,B,A]`` orders like ``[A,B]``."""
    seen: set[int] = set()
    out = []
    for a in attrs:
        if a not in seen:
            seen.add(a)
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class ListOD:
    lhs: AttributeList
    rhs: AttributeList
    kind: ODKind = ODKind.ORDERS

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    @classmethod
    def orders(cls, lhs: Sequence[int], rhs: Sequence[int]) -> ListOD:
        return cls(tuple(lhs), tuple(rhs), ODKind.ORDERS)

    @classmethod
    def equivalent(cls, lhs: Sequence[int], rhs: Sequence[int]) -> ListOD:
        return cls(tuple(lhs), tuple(rhs), ODKind.EQUIVALENT)

    @classmethod
    def compatible(cls, lhs: Sequence[int], rhs: Sequence[int]) -> ListOD:
        return cls(tuple(lhs), tuple(rhs), ODKind.COMPATIBLE)

    def as_equivalence(self) -> tuple[AttributeList, AttributeList]:
        """For an OCD ``X ~ Y``, the lists ``(XY, YX)`` it declares order equivalent."""
        if self.kind is not ODKind.COMPATIBLE:
            raise ValueError("only order-compatibility statements have a concatenated form")
        return self.lhs + self.rhs, self.rhs + self.lhs

    def symmetric_key(self) -> tuple[AttributeList, AttributeList]:
        """Orientation-free key; ``X ~ Y`` and ``Y ~ X`` share it (as do ``<->``)."""
        if self.kind is ODKind.ORDERS:
            return self.lhs, self.rhs
        return min((self.lhs, self.rhs), (self.rhs, self.lhs))

    def same_statement(self, other: ListOD) -> bool:
        return self.kind is other.kind and self.symmetric_key() == other.symmetric_key()

    @property
    def trivial(self) -> bool:
        """True when the statement holds on every table.

        ``X -> Y`` is trivial exactly when ``Y`` (repeats dropped) is a prefix of
        ``X`` (repeats dropped).  An OCD is trivial when one side is such a
        prefix of the other; an equivalence when both directions are trivial.
        """
        x, y = dedupe_list(self.lhs), dedupe_list(self.rhs)
        if self.kind is ODKind.ORDERS:
            return x[: len(y)] == y
        if self.kind is ODKind.EQUIVALENT:
            return x == y
        return x[: len(y)] == y or y[: len(x)] == x


class BodyKind(str, enum.Enum):
    CONSTANT = "constant"
    COMPATIBLE = "compatible"


@dataclass(frozen=True)
class CanonicalDependency:
    """``context: [] -> A`` (constant) or ``context: A ~ B`` (compatible).

    Compatible bodies are stored with ``a < b``.  Statements whose body lies in
    the context, or ``A ~ A``, hold everywhere and are rejected.
    """

    context: AttributeSet
    kind: BodyKind
    a: int
    b: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "context", frozenset(self.context))
        if self.kind is BodyKind.CONSTANT:
            if self.b is not None:
                raise ValueError("a constant body names a single attribute")
        else:
            if self.b is None:
                raise ValueError("a compatible body names two attributes")
            if self.a > self.b:
                a, b = self.b, self.a
                object.__setattr__(self, "a", a)
                object.__setattr__(self, "b", b)
        if self.is_trivial:
            raise ValueError(f"trivial canonical statement: {self!r}")

    @classmethod
    def constant(cls, context: Iterable[int], a: int) -> CanonicalDependency:
        return cls(frozenset(context), BodyKind.CONSTANT, a)

    @classmethod
    def compatible(cls, context: Iterable[int], a: int, b: int) -> CanonicalDependency:
        return cls(frozenset(context), BodyKind.COMPATIBLE, a, b)

    @classmethod
    def unchecked(
        cls, context: Iterable[int], kind: BodyKind, a: int, b: int | None = None
    ) -> CanonicalDependency:
        """Build a statement without the triviality check (debug output only)."""
        obj = object.__new__(cls)
        if b is not None and a > b:
            a, b = b, a
        object.__setattr__(obj, "context", frozenset(context))
        object.__setattr__(obj, "kind", kind)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    @property
    def body(self) -> tuple[int, ...]:
        return (self.a,) if self.b is None else (self.a, self.b)

    @property
    def is_trivial(self) -> bool:
        if self.b is None:
            return self.a in self.context
        return self.a == self.b or self.a in self.context or self.b in self.context

    def sort_key(self) -> tuple:
        kind = 0 if self.kind is BodyKind.CONSTANT else 1
        return (len(self.context), tuple(sorted(self.context)), kind, self.body)


class DependencySet:
    """Deduplicated canonical dependencies in a fixed order.

    Order: context size, then sorted context indices, then constants before
    compatibilities, then body attributes.
    """

    __slots__ = ("_items", "_members")

    def __init__(self, items: Iterable[CanonicalDependency] = ()) -> None:
        members = frozenset(items)
        self._members = members
        self._items = tuple(sorted(members, key=CanonicalDependency.sort_key))

    def __iter__(self) -> Iterator[CanonicalDependency]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: object) -> bool:
        return item in self._members

    def __getitem__(self, i: int) -> CanonicalDependency:
        return self._items[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DependencySet):
            return self._members == other._members
        if isinstance(other, (set, frozenset)):
            return self._members == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __or__(self, other: Iterable[CanonicalDependency]) -> DependencySet:
        return DependencySet([*self._items, *other])

    def __repr__(self) -> str:
        return f"DependencySet({list(self._items)!r})"

    def as_frozenset(self) -> frozenset[CanonicalDependency]:
        return self._members

    def constants(self) -> list[CanonicalDependency]:
        return [d for d in self._items if d.kind is BodyKind.CONSTANT]

    def compatibilities(self) -> list[CanonicalDependency]:
        return [d for d in self._items if d.kind is BodyKind.COMPATIBLE]


def fd_as_od(lhs: Sequence[int], rhs: Sequence[int]) -> ListOD:
    """The OD form ``X -> XY`` of the functional dependency ``set(X) -> set(Y)``."""
    return ListOD.orders(tuple(lhs), tuple(lhs) + tuple(rhs))


def map_fd_to_canonical(context: Iterable[int], rhs: Iterable[int]) -> DependencySet:
    ctx = frozenset(context)
    return DependencySet(CanonicalDependency.constant(ctx, a) for a in rhs if a not in ctx)


def ocd_images(lhs: Sequence[int], rhs: Sequence[int]) -> Iterator[tuple[AttributeSet, int, int]]:
    """Every (context, X_i, Y_j) triple of the OCD mapping, trivial ones included."""
    for i, x in enumerate(lhs):
        for j, y in enumerate(rhs):
            yield frozenset(lhs[:i]) | frozenset(rhs[:j]), x, y


def map_ocd_to_canonical(lhs: Sequence[int], rhs: Sequence[int]) -> DependencySet:
    out = []
    for ctx, x, y in ocd_images(tuple(lhs), tuple(rhs)):
        if x != y and x not in ctx and y not in ctx:
            out.append(CanonicalDependency.compatible(ctx, x, y))
    return DependencySet(out)


def map_od_to_canonical(lhs: Sequence[int], rhs: Sequence[int]) -> DependencySet:
    return map_fd_to_canonical(lhs, rhs) | map_ocd_to_canonical(lhs, rhs)


def canonical_images(od: ListOD) -> DependencySet:
    """Canonical statements jointly equivalent to ``od`` (any kind)."""
    if od.kind is ODKind.ORDERS:
        return map_od_to_canonical(od.lhs, od.rhs)
    if od.kind is ODKind.COMPATIBLE:
        return map_ocd_to_canonical(od.lhs, od.rhs)
    return map_od_to_canonical(od.lhs, od.rhs) | map_od_to_canonical(od.rhs, od.lhs)
