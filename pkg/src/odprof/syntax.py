"""Plain-text notation for dependencies.

    salary -> group,subgroup        list OD
    A,B ~ A,C                       order compatibility
    A <-> B                         order equivalence
    {A,B}: [] -> C                  constant in context
    {A}: B ~ C                      compatible in context

``[]`` is the empty list and ``{}`` the empty context.
"""

from __future__ import annotations

import re
from typing import Sequence, Union

from odprof.dependencies import BodyKind, CanonicalDependency, ListOD, ODKind

Dependency = Union[ListOD, CanonicalDependency]

_ARROWS = {ODKind.ORDERS: "->", ODKind.COMPATIBLE: "~", ODKind.EQUIVALENT: "<->"}
_SPLIT = re.compile(r"\s*(<->|->|~)\s*")


class DependencySyntaxError(ValueError):
    """Malformed dependency text or unknown attribute name."""


def render_list(attrs: Sequence[int], names: Sequence[str]) -> str:
    return ",".join(names[a] for a in attrs) if attrs else "[]"


def render_context(ctx: frozenset[int], names: Sequence[str]) -> str:
    return "{" + ",".join(names[a] for a in sorted(ctx)) + "}"


def render(dep: Dependency, names: Sequence[str]) -> str:
    if isinstance(dep, ListOD):
        return f"{render_list(dep.lhs, names)} {_ARROWS[dep.kind]} {render_list(dep.rhs, names)}"
    ctx = render_context(dep.context, names)
    if dep.kind is BodyKind.CONSTANT:
        return f"{ctx}: [] -> {names[dep.a]}"
    return f"{ctx}: {names[dep.a]} ~ {names[dep.b]}"


def _names(text: str) -> list[str]:
    text = text.strip()
    if text in ("", "[]", "{}"):
        return []
    if (text[0], text[-1]) in (("[", "]"), ("{", "}")):
        text = text[1:-1]
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise DependencySyntaxError(f"empty attribute name in {text!r}")
    return parts


def attribute_names(text: str) -> list[str]:
    """Attribute names mentioned in ``text``, in order of first appearance."""
    out: list[str] = []
    ctx, sep, body = text.partition(":")
    chunks = [ctx, body] if sep else [text]
    for chunk in chunks:
        for side in _SPLIT.split(chunk):
            if side in _ARROWS.values():
                continue
            for name in _names(side):
                if name not in out:
                    out.append(name)
    return out


def _resolve(names: Sequence[str], wanted: list[str]) -> tuple[int, ...]:
    index = {n: i for i, n in enumerate(names)}
    try:
        return tuple(index[w] for w in wanted)
    except KeyError as exc:
        raise DependencySyntaxError(f"unknown attribute {exc.args[0]!r}; known: {', '.join(names)}") from None


def _split_binary(text: str) -> tuple[str, str, str]:
    parts = _SPLIT.split(text.strip(), maxsplit=1)
    if len(parts) != 3:
        raise DependencySyntaxError(f"expected 'X -> Y', 'X ~ Y' or 'X <-> Y', got {text!r}")
    return parts[0], parts[1], parts[2]


def parse(text: str, names: Sequence[str]) -> Dependency:
    ctx_text, sep, body = text.partition(":")
    if not sep:
        left, arrow, right = _split_binary(text)
        kind = next(k for k, v in _ARROWS.items() if v == arrow)
        return ListOD(_resolve(names, _names(left)), _resolve(names, _names(right)), kind)

    ctx = _resolve(names, _names(ctx_text))
    left, arrow, right = _split_binary(body)
    try:
        if arrow == "->":
            if _names(left):
                raise DependencySyntaxError(f"a constant body is written '[] -> A', got {body.strip()!r}")
            (a,) = _resolve(names, _names(right))
            return CanonicalDependency.constant(ctx, a)
        if arrow == "~":
            (a,) = _resolve(names, _names(left))
            (b,) = _resolve(names, _names(right))
            return CanonicalDependency.compatible(ctx, a, b)
    except ValueError as exc:
        if isinstance(exc, DependencySyntaxError):
            raise
        raise DependencySyntaxError(f"{text!r}: {exc}") from None
    raise DependencySyntaxError(f"canonical bodies use '->' or '~', got {arrow!r}")


def parse_list(text: str, names: Sequence[str]) -> tuple[int, ...]:
    return _resolve(names, _names(text))
