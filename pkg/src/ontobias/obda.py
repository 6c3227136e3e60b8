"""Minimal ontology-based data access simulator.

Maps named classes to rows of CSV tables and answers one kind of query:
"give me the instances of this class", either against the class's own
mapping only or with subsumption closure (union over everything the
reasoner places under the class). Diffing the two answers surfaces the
individuals a query returns only because of the class hierarchy, together
with the axioms responsible, which is exactly how a biased subsumption
turns into a wrong query answer downstream.

Tables are comma-separated files with a header row; quoting is the plain
doubled-quote convention, nothing more. Row values become individuals named
"<table>:<id-column value>"; a mapping file may declare ids from different
tables equal (``same_as``), in which case the first listed name is the
canonical one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import yaml

from .model import EntityKind, Iri, OntologyModel, entities_of_kind
from .reasoner import TaxonomyIndex, UnknownClassError, explain_subsumption


class ObdaError(ValueError):
    pass


@dataclass(frozen=True)
class TabularSource:
    name: str
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def column(self, name: str) -> int:
        try:
            return self.header.index(name)
        except ValueError:
            raise ObdaError(f"table {self.name!r} has no column {name!r}") from None


@dataclass(frozen=True)
class MappingEntry:
    cls: Iri
    table: str
    filters: tuple[tuple[str, str], ...]  # column = value, all must hold
    id_column: str


@dataclass(frozen=True)
class MappingSpec:
    entries: tuple[MappingEntry, ...]
    same_as: tuple[tuple[str, ...], ...] = ()

    def canonical(self, individual: str) -> str:
        for group in self.same_as:
            if individual in group:
                return group[0]
        return individual


@dataclass(frozen=True)
class DeductionDiff:
    closure: tuple[str, ...]
    flat: tuple[str, ...]
    extra: tuple[str, ...]
    # per extra individual: (contributing class, explanation axioms)
    provenance: dict


def load_tables(paths: Iterable[str | Path]) -> list[TabularSource]:
    """Load CSV files; the file stem becomes the table name."""
    sources: list[TabularSource] = []
    seen: set[str] = set()
    for path in paths:
        p = Path(path)
        if not p.is_file():
            raise ObdaError(f"missing table file: {p}")
        name = p.stem
        if name in seen:
            raise ObdaError(f"duplicate table name: {name!r}")
        seen.add(name)
        with p.open(encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ObdaError(f"{p}: empty file, expected a header row") from None
            header = tuple(h.strip() for h in header)
            rows: list[tuple[str, ...]] = []
            for row in reader:
                if not row:
                    continue
                if len(row) != len(header):
                    raise ObdaError(
                        f"{p}:{reader.line_num}: ragged row, expected "
                        f"{len(header)} cells, got {len(row)}"
                    )
                rows.append(tuple(cell.strip() for cell in row))
        sources.append(TabularSource(name=name, header=header, rows=tuple(rows)))
    return sources


def load_tables_dir(directory: str | Path) -> list[TabularSource]:
    paths = sorted(Path(directory).glob("*.csv"))
    if not paths:
        raise ObdaError(f"no .csv tables found in {directory}")
    return load_tables(paths)


def load_mappings(path: str | Path) -> MappingSpec:
    """Read a mapping document (YAML): prefixes, mappings, optional same_as."""
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise ObdaError("mapping document: expected a mapping at top level")
    unknown = set(raw) - {"prefixes", "mappings", "same_as"}
    if unknown:
        raise ObdaError(f"mapping document: unknown key {sorted(unknown)[0]!r}")
    prefixes = raw.get("prefixes", {}) or {}
    if not isinstance(prefixes, dict):
        raise ObdaError("prefixes: expected a mapping")

    def resolve(name: str) -> Iri:
        if name.startswith("<") and name.endswith(">"):
            return Iri(name[1:-1])
        prefix, sep, local = name.partition(":")
        if sep and prefix in prefixes:
            return Iri(prefixes[prefix] + local)
        return Iri(name)

    entries = []
    for i, e in enumerate(raw.get("mappings", []) or []):
        if not isinstance(e, dict):
            raise ObdaError(f"mappings[{i}]: expected a mapping")
        for key in e:
            if key not in ("class", "table", "filter", "id_column"):
                raise ObdaError(f"mappings[{i}].{key}: unknown key")
        for key in ("class", "table", "id_column"):
            if key not in e:
                raise ObdaError(f"mappings[{i}].{key}: missing")
        filters = e.get("filter", {}) or {}
        if not isinstance(filters, dict):
            raise ObdaError(f"mappings[{i}].filter: expected column: value pairs")
        entries.append(
            MappingEntry(
                cls=resolve(str(e["class"])),
                table=str(e["table"]),
                filters=tuple((str(k), str(v)) for k, v in filters.items()),
                id_column=str(e["id_column"]),
            )
        )
    same_as = []
    for i, group in enumerate(raw.get("same_as", []) or []):
        if not isinstance(group, list) or len(group) < 2:
            raise ObdaError(f"same_as[{i}]: expected a list of at least two ids")
        same_as.append(tuple(str(g) for g in group))
    return MappingSpec(entries=tuple(entries), same_as=tuple(same_as))


def validate(
    model: OntologyModel, mappings: MappingSpec, tables: Iterable[TabularSource]
) -> None:
    """Every mapped class declared; every table and column present."""
    by_name = {t.name: t for t in tables}
    declared = entities_of_kind(model, EntityKind.CLASS)
    for entry in mappings.entries:
        if entry.cls not in declared:
            raise ObdaError(f"mapped class not declared in the ontology: {entry.cls}")
        table = by_name.get(entry.table)
        if table is None:
            raise ObdaError(f"mapping references unknown table {entry.table!r}")
        table.column(entry.id_column)
        for column, _ in entry.filters:
            table.column(column)


def _rows_for(entry: MappingEntry, table: TabularSource) -> list[str]:
    id_idx = table.column(entry.id_column)
    filter_idx = [(table.column(col), value) for col, value in entry.filters]
    out = []
    for row in table.rows:
        if all(row[idx] == value for idx, value in filter_idx):
            out.append(f"{table.name}:{row[id_idx]}")
    return out


def answer(
    model: OntologyModel,
    index: TaxonomyIndex,
    mappings: MappingSpec,
    tables: Iterable[TabularSource],
    cls: Iri,
    closure: bool,
) -> tuple[str, ...]:
    """Individuals in a class: its own mapping, or the union over all
    classes the index places under it. Deduplicated, sorted."""
    tables = list(tables)
    validate(model, mappings, tables)
    if cls not in index.classes:
        raise UnknownClassError(f"unknown class: {cls}")
    by_name = {t.name: t for t in tables}
    if closure:
        wanted = index.subclasses(cls)
    else:
        wanted = frozenset([cls])
    names: set[str] = set()
    for entry in mappings.entries:
        if entry.cls in wanted:
            for name in _rows_for(entry, by_name[entry.table]):
                names.add(mappings.canonical(name))
    return tuple(sorted(names))


def deduction_diff(
    model: OntologyModel,
    index: TaxonomyIndex,
    mappings: MappingSpec,
    tables: Iterable[TabularSource],
    cls: Iri,
) -> DeductionDiff:
    """Closure answer, flat answer, and what only the closure returns.

    For each closure-only individual the provenance lists the mapped
    subclass it came from and the asserted axioms that place that subclass
    under the queried class.
    """
    tables = list(tables)
    closure_answer = answer(model, index, mappings, tables, cls, closure=True)
    flat_answer = answer(model, index, mappings, tables, cls, closure=False)
    extra = tuple(sorted(set(closure_answer) - set(flat_answer)))

    by_name = {t.name: t for t in tables}
    provenance: dict[str, list[tuple[Iri, list]]] = {}
    for individual in extra:
        chains: list[tuple[Iri, list]] = []
        for entry in mappings.entries:
            if entry.cls == cls or entry.cls not in index.subclasses(cls):
                continue
            mapped = {mappings.canonical(n) for n in _rows_for(entry, by_name[entry.table])}
            if individual in mapped:
                chains.append((entry.cls, explain_subsumption(index, entry.cls, cls)))
        provenance[individual] = chains
    return DeductionDiff(
        closure=closure_answer, flat=flat_answer, extra=extra, provenance=provenance
    )


def resolve_class(model: OntologyModel, name: str) -> Iri:
    """Resolve a user-supplied class name: full IRI, prefixed name, or a
    unique match on local name or label."""
    declared = entities_of_kind(model, EntityKind.CLASS)
    if name.startswith("<") and name.endswith(">"):
        name = name[1:-1]
    if ":" in name:
        prefix, _, local = name.partition(":")
        prefixes = model.prefixes
        if prefix in prefixes:
            candidate = Iri(prefixes[prefix] + local)
            if candidate in declared:
                return candidate
        try:
            candidate = Iri(name)
            if candidate in declared:
                return candidate
        except Exception:
            pass
    lowered = name.lower()
    matches = [c for c in sorted(declared, key=lambda i: i.value)
               if c.local_name.lower() == lowered]
    if not matches:
        for c in sorted(declared, key=lambda i: i.value):
            for ax in model.annotation_axioms(c):
                if ax.value.lexical.lower() == lowered:
                    matches.append(c)
                    break
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        raise UnknownClassError(
            f"ambiguous class name {name!r}: " + ", ".join(str(m) for m in matches)
        )
    raise UnknownClassError(f"unknown class: {name!r}")
