"""Machine-readable reports.

A report has a ``stable`` section, byte-identical for identical input and
configuration, and a ``volatile`` section holding timing.  The layout is
pinned by ``report.schema.json`` shipped next to this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterable, Sequence

from odprof.checker import Witness, WitnessReport
from odprof.dependencies import BodyKind, CanonicalDependency, ListOD, ODKind
from odprof.model import Table
from odprof.syntax import render

SCHEMA_VERSION = 1

_LIST_KINDS = {ODKind.ORDERS: "od", ODKind.COMPATIBLE: "ocd", ODKind.EQUIVALENT: "equivalence"}


def load_schema() -> dict[str, Any]:
    text = (resources.files("odprof") / "report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def table_meta(table: Table) -> dict[str, Any]:
    return {
        "name": table.name,
        "rows": len(table),
        "columns": [{"name": c.name, "type": c.type.value} for c in table.columns],
    }


def dependency_entry(dep: ListOD | CanonicalDependency, names: Sequence[str], holds: bool | None = None) -> dict[str, Any]:
    if isinstance(dep, ListOD):
        entry: dict[str, Any] = {
            "kind": _LIST_KINDS[dep.kind],
            "text": render(dep, names),
            "lhs": [names[a] for a in dep.lhs],
            "rhs": [names[a] for a in dep.rhs],
        }
    else:
        entry = {
            "kind": "constant" if dep.kind is BodyKind.CONSTANT else "compatible",
            "text": render(dep, names),
            "context": [names[a] for a in sorted(dep.context)],
            "attributes": [names[a] for a in dep.body],
        }
    if holds is not None:
        entry["holds"] = holds
    return entry


def witness_entry(w: Witness, names: Sequence[str]) -> dict[str, Any]:
    entry: dict[str, Any] = {
        "kind": w.kind.value,
        "rows": list(w.rows),
        "labels": [f"t{r + 1}" for r in w.rows],
    }
    if w.attribute is not None:
        entry["attribute"] = names[w.attribute]
    return entry


def witnesses_section(report: WitnessReport, names: Sequence[str]) -> dict[str, Any]:
    return {
        "limit": report.limit,
        "total_splits": report.total_splits,
        "total_swaps": report.total_swaps,
        "splits": [witness_entry(w, names) for w in report.splits],
        "swaps": [witness_entry(w, names) for w in report.swaps],
    }


@dataclass
class Report:
    command: str
    engine: str
    table: Table | None = None
    config: dict[str, Any] = field(default_factory=dict)
    dependencies: list[dict[str, Any]] = field(default_factory=list)
    witnesses: dict[str, Any] | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    def add(self, deps: Iterable[ListOD | CanonicalDependency], names: Sequence[str], holds: bool | None = None) -> None:
        self.dependencies.extend(dependency_entry(d, names, holds) for d in deps)

    def stable(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "engine": self.engine,
            "config": self.config,
            "dependencies": self.dependencies,
        }
        if self.table is not None:
            out["table"] = table_meta(self.table)
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        out.update(self.extra)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"stable": self.stable(), "volatile": {"elapsed_seconds": self.elapsed_seconds}}

    def stable_json(self) -> str:
        return json.dumps(self.stable(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)
