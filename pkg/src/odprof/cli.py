"""Command-line front end: ``odprof <command> ...``.

Exit status is 0 when a checked dependency holds (or the command simply
succeeded), 1 when it is violated, and 2 on usage, load or bounds errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Sequence

from odprof.checker import (
    canonical_violation,
    collect_witnesses,
    holds_canonical,
    order_compatible,
    order_equivalent,
    satisfies_od,
)
from odprof.dependencies import CanonicalDependency, ListOD, ODKind, canonical_images
from odprof.discovery_list import DEFAULT_MAX_LEVEL, ListStats, diff_against_complete, ocddiscover
from odprof.discovery_set import (
    DiscoveryConfig,
    LatticeStats,
    MinimalityPolicy,
    UnknownDependency,
    discover_canonical,
    explain_minimality,
)
from odprof.loader import DEFAULT_DATE_FORMATS, LoadError, LoadOptions, load_csv
from odprof.model import Table, ValueType
from odprof.oracle import (
    BoundsError,
    EnumerationBounds,
    enumerate_valid_canonical,
    enumerate_valid_list_ods,
    enumerate_valid_ocds,
)
from odprof.report import Report, dependency_entry, witnesses_section
from odprof.syntax import DependencySyntaxError, attribute_names, parse, render

EXIT_HOLDS, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2
DEFAULT_WITNESS_LIMIT = 10
LIMIT_ENV = "OD_PROF_LIMIT"


class UsageError(ValueError):
    pass


def _type_override(text: str) -> tuple[str, ValueType]:
    name, sep, vtype = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=TYPE, got {text!r}")
    try:
        return name, ValueType(vtype.lower())
    except ValueError:
        choices = ", ".join(v.value for v in ValueType)
        raise argparse.ArgumentTypeError(f"unknown type {vtype!r}; choose from {choices}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def default_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    if raw is None:
        return DEFAULT_WITNESS_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"{LIMIT_ENV} must be non-negative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")

    load = argparse.ArgumentParser(add_help=False)
    load.add_argument("file", help="CSV file")
    load.add_argument("--delimiter", default=",")
    load.add_argument("--no-header", action="store_true", help="first line is data; columns are c0, c1, ...")
    load.add_argument("--type", action="append", default=[], type=_type_override, metavar="NAME=TYPE",
                      help="pin a column type (integer, real, text, date)")
    load.add_argument("--date-format", action="append", default=None, metavar="FMT",
                      help="accepted strptime date format (repeatable)")

    dep = argparse.ArgumentParser(add_help=False)
    group = dep.add_mutually_exclusive_group(required=True)
    group.add_argument("--od", help='list OD, e.g. "salary -> group,subgroup"')
    group.add_argument("--ocd", help='order compatibility, e.g. "A,B ~ A,C"')
    group.add_argument("--equiv", help='order equivalence, e.g. "A <-> B"')
    group.add_argument("--canonical", help='canonical form, e.g. "{A}: B ~ C" or "{B,C}: [] -> D"')

    parser = argparse.ArgumentParser(prog="odprof", description="Check and discover order dependencies in CSV tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[dep, load, common], help="check whether a dependency holds")

    p = sub.add_parser("witnesses", parents=[dep, load, common], help="list split and swap witnesses")
    p.add_argument("--limit", type=_non_negative, default=None,
                   help=f"maximum witnesses of each kind (default: ${LIMIT_ENV} or {DEFAULT_WITNESS_LIMIT})")

    p = sub.add_parser("map", parents=[common], help="canonical image set of a list OD")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--od")
    g.add_argument("--ocd")
    g.add_argument("--equiv")

    p = sub.add_parser("discover", parents=[load, common], help="discover dependencies")
    p.add_argument("--engine", choices=("set", "list"), default="set")
    p.add_argument("--max-context", type=_non_negative, default=None, help="set engine: largest context size")
    p.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL, help="list engine: largest candidate size")
    p.add_argument("--parallel", action="store_true", help="set engine: process each lattice level concurrently")
    p.add_argument("--no-minimality", action="store_true", help="set engine: turn all minimality rules off")

    p = sub.add_parser("diff", parents=[load, common], help="what the list traversal misses")
    p.add_argument("--bounds", type=_positive, default=2, help="longest list side enumerated")
    p.add_argument("--max-attrs", type=_non_negative, default=EnumerationBounds().max_attrs)

    p = sub.add_parser("oracle", parents=[load, common], help="exhaustive valid dependencies within bounds")
    p.add_argument("--kind", choices=("ocd", "od", "canonical"), default="ocd")
    p.add_argument("--max-len", type=_positive, default=2, help="longest list side (ocd, od)")
    p.add_argument("--max-context", type=_non_negative, default=None, help="largest context (canonical)")
    p.add_argument("--allow-repeats", action="store_true", help="let OCD sides share attributes")
    p.add_argument("--max-attrs", type=_non_negative, default=EnumerationBounds().max_attrs)

    p = sub.add_parser("explain", parents=[load, common], help="why a canonical dependency is (not) in the output")
    p.add_argument("--canonical", required=True)
    return parser


def _load(args: argparse.Namespace) -> Table:
    opts = LoadOptions(
        delimiter=args.delimiter,
        has_header=not args.no_header,
        type_overrides=dict(args.type),
        date_formats=tuple(args.date_format) if args.date_format else DEFAULT_DATE_FORMATS,
    )
    return load_csv(args.file, opts)


def _dependency_text(args: argparse.Namespace) -> str:
    for flag in ("od", "ocd", "equiv", "canonical"):
        text = getattr(args, flag, None)
        if text is not None:
            return text
    raise UsageError("no dependency given")


def _expect(dep: ListOD | CanonicalDependency, args: argparse.Namespace) -> None:
    wanted = {"od": ODKind.ORDERS, "ocd": ODKind.COMPATIBLE, "equiv": ODKind.EQUIVALENT}
    for flag, kind in wanted.items():
        if getattr(args, flag, None) is not None:
            if not isinstance(dep, ListOD) or dep.kind is not kind:
                raise UsageError(f"--{flag} expects a list statement written with the matching arrow")
            return
    if not isinstance(dep, CanonicalDependency):
        raise UsageError("--canonical expects 'CTX: [] -> A' or 'CTX: A ~ B'")


def _parse_dependency(args: argparse.Namespace, names: Sequence[str]) -> ListOD | CanonicalDependency:
    dep = parse(_dependency_text(args), names)
    _expect(dep, args)
    return dep


def holds(table: Table, dep: ListOD | CanonicalDependency) -> bool:
    if isinstance(dep, CanonicalDependency):
        return holds_canonical(table, dep)
    if dep.kind is ODKind.ORDERS:
        return satisfies_od(table, dep.lhs, dep.rhs)
    if dep.kind is ODKind.EQUIVALENT:
        return order_equivalent(table, dep.lhs, dep.rhs)
    return order_compatible(table, dep.lhs, dep.rhs)


def _cmd_check(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    table = _load(args)
    dep = _parse_dependency(args, table.names)
    ok = holds(table, dep)
    report = Report("check", "checker", table)
    report.add([dep], table.names, ok)
    line = f"{render(dep, table.names)}: {'holds' if ok else 'violated'}"
    if not ok and isinstance(dep, CanonicalDependency):
        s, t = canonical_violation(table, dep)
        line += f" (rows t{s + 1}, t{t + 1})"
    out.append(line)
    return report, EXIT_HOLDS if ok else EXIT_VIOLATED


def _witness_lists(dep: ListOD) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    if dep.kind is ODKind.ORDERS:
        return [(dep.lhs, dep.rhs)]
    if dep.kind is ODKind.EQUIVALENT:
        return [(dep.lhs, dep.rhs), (dep.rhs, dep.lhs)]
    x, y = dep.as_equivalence()
    return [(x, y), (y, x)]


def _cmd_witnesses(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    table = _load(args)
    dep = _parse_dependency(args, table.names)
    if not isinstance(dep, ListOD):
        raise UsageError("witnesses needs a list statement (--od, --ocd or --equiv)")
    limit = args.limit if args.limit is not None else default_limit()
    names = table.names
    report = Report("witnesses", "checker", table, config={"limit": limit})
    total = 0
    sections = []
    for lhs, rhs in _witness_lists(dep):
        wr = collect_witnesses(table, lhs, rhs, limit)
        total += wr.total_splits + wr.total_swaps
        sections.append(witnesses_section(wr, names))
        out.append(f"{render(ListOD.orders(lhs, rhs), names)}: {wr.total_splits} split(s), {wr.total_swaps} swap(s)")
        for w in wr.splits + wr.swaps:
            s, t = w.rows
            detail = f" on {names[w.attribute]}" if w.attribute is not None else ""
            out.append(f"  {w.kind.value} t{s + 1}, t{t + 1}{detail}")
    report.witnesses = sections[0]
    if len(sections) > 1:
        # both directions of an equivalence, merged so the JSON is complete
        merged = dict(sections[0])
        for key in ("splits", "swaps", "total_splits", "total_swaps"):
            merged[key] = sections[0][key] + sections[1][key]
        report.witnesses = merged
        report.extra["notes"] = ["witnesses of both directions are merged"]
    report.add([dep], names, total == 0)
    return report, EXIT_HOLDS if total == 0 else EXIT_VIOLATED


def _cmd_map(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    text = _dependency_text(args)
    names = attribute_names(text)
    dep = parse(text, names)
    _expect(dep, args)
    images = canonical_images(dep)
    report = Report("map", "dependencies", config={"input": render(dep, names)})
    report.add(images, names)
    report.extra["summary"] = {"images": len(images)}
    out.extend(render(d, names) for d in images)
    return report, EXIT_HOLDS


def _cmd_discover(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    table = _load(args)
    names = table.names
    if args.engine == "set":
        if args.max_context is not None and args.max_context > table.arity:
            raise UsageError(f"--max-context {args.max_context} exceeds the table's {table.arity} attributes")
        cfg = DiscoveryConfig(max_context_size=args.max_context, parallel=args.parallel)
        pol = MinimalityPolicy.off() if args.no_minimality else MinimalityPolicy()
        stats = LatticeStats()
        found = list(discover_canonical(table, cfg, pol, stats))
        config = {"max_context": args.max_context, "minimality": not args.no_minimality}
        summary = {
            "dependencies": len(found),
            "constants": sum(1 for d in found if d.b is None),
            "contexts_visited": stats.contexts_visited,
            "contexts_skipped": stats.contexts_skipped,
        }
    else:
        lstats = ListStats()
        found = ocddiscover(table, args.max_level, lstats)
        config = {"max_level": args.max_level}
        summary = {"dependencies": len(found), "candidates_checked": lstats.checked}
    report = Report("discover", args.engine, table, config=config)
    report.add(found, names)
    report.extra["summary"] = summary
    out.extend(render(d, names) for d in found)
    return report, EXIT_HOLDS


def _cmd_diff(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    table = _load(args)
    names = table.names
    bounds = EnumerationBounds(max_list_len=args.bounds, allow_repeats=True, max_attrs=args.max_attrs)
    diff = diff_against_complete(table, bounds)
    report = Report("diff", "diff", table, config={"bounds": args.bounds, "max_attrs": args.max_attrs})
    report.extra["diff"] = {
        "missed": [
            {
                "ocd": dependency_entry(m.od, names, True),
                "canonical": [dependency_entry(d, names) for d in m.canonical],
                "covered_by_set": m.covered_by_set,
            }
            for m in diff.missed
        ],
        "found_by_both": [dependency_entry(d, names, True) for d in diff.found_by_both],
        "found_only_by_set": [dependency_entry(d, names, True) for d in diff.found_only_by_set],
        "bounds": {"max_list_len": bounds.max_list_len, "allow_repeats": True, "max_attrs": bounds.max_attrs},
    }
    report.extra["summary"] = {
        "missed": len(diff.missed),
        "found_by_both": len(diff.found_by_both),
        "found_only_by_set": len(diff.found_only_by_set),
    }
    out.append(f"missed by the list traversal: {len(diff.missed)}")
    for m in diff.missed:
        images = "; ".join(render(d, names) for d in m.canonical)
        cover = "covered" if m.covered_by_set else "not covered"
        out.append(f"  {render(m.od, names)}  =>  {images}  [{cover} by set discovery]")
    out.append(f"found by both: {len(diff.found_by_both)}")
    out.append(f"found only by set discovery: {len(diff.found_only_by_set)}")
    return report, EXIT_HOLDS


def _cmd_oracle(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    table = _load(args)
    names = table.names
    bounds = EnumerationBounds(args.max_len, args.allow_repeats, args.max_attrs)
    if args.kind == "ocd":
        found = enumerate_valid_ocds(table, bounds)
    elif args.kind == "od":
        found = enumerate_valid_list_ods(table, bounds)
    else:
        bounds.check(table)
        found = list(enumerate_valid_canonical(table, args.max_context))
    config = {"kind": args.kind, "max_len": args.max_len, "allow_repeats": args.allow_repeats,
              "max_attrs": args.max_attrs, "max_context": args.max_context}
    report = Report("oracle", "oracle", table, config=config)
    report.add(found, names, True)
    report.extra["summary"] = {"dependencies": len(found)}
    out.extend(render(d, names) for d in found)
    return report, EXIT_HOLDS


def _cmd_explain(args: argparse.Namespace, out: list[str]) -> tuple[Report, int]:
    table = _load(args)
    names = table.names
    dep = parse(args.canonical, names)
    if not isinstance(dep, CanonicalDependency):
        raise UsageError("--canonical expects 'CTX: [] -> A' or 'CTX: A ~ B'")
    result = discover_canonical(table)
    try:
        exp = explain_minimality(table, dep, result)
    except UnknownDependency as exc:
        report = Report("explain", "set", table)
        report.add([dep], names, False)
        out.append(str(exc))
        return report, EXIT_VIOLATED
    report = Report("explain", "set", table)
    report.add([dep], names, True)
    report.extra["explanation"] = {
        "minimal": exp.minimal,
        "rule": exp.rule,
        "subsumed_by": dependency_entry(exp.subsumed_by, names) if exp.subsumed_by else None,
    }
    out.append(f"{render(dep, names)}: {exp.describe(names)}")
    return report, EXIT_HOLDS


COMMANDS = {
    "check": _cmd_check,
    "witnesses": _cmd_witnesses,
    "map": _cmd_map,
    "discover": _cmd_discover,
    "diff": _cmd_diff,
    "oracle": _cmd_oracle,
    "explain": _cmd_explain,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    started = time.perf_counter()
    lines: list[str] = []
    try:
        report, status = COMMANDS[args.command](args, lines)
    except (LoadError, DependencySyntaxError, BoundsError, UsageError, KeyError, IndexError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"odprof {args.command}: error: {message}", file=sys.stderr)
        return EXIT_ERROR
    report.elapsed_seconds = time.perf_counter() - started
    if args.json:
        print(report.to_json())
    elif lines:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
