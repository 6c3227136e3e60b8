"""In-memory ontology model.

Holds entities, class expressions, axioms and annotations for one ontology,
plus lookup indexes. A model is immutable after construction: the reasoner,
the detectors and the OBDA simulator only ever read from it, so a single
model can safely be shared between them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional


class ModelError(ValueError):
    """Raised when a model or one of its parts violates a structural rule."""


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI. Equality and hashing use the expanded form only."""

    value: str
    abbrev: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.value or ":" not in self.value:
            raise ModelError(f"not an absolute IRI: {self.value!r}")

    @property
    def local_name(self) -> str:
        """Fragment after the last '#' or '/' (or the whole value)."""
        for sep in ("#", "/"):
            idx = self.value.rfind(sep)
            if idx >= 0 and idx + 1 < len(self.value):
                return self.value[idx + 1 :]
        return self.value

    def __str__(self) -> str:
        return self.value


class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    NAMED_INDIVIDUAL = "NamedIndividual"
    ANNOTATION_PROPERTY = "AnnotationProperty"


@dataclass(frozen=True)
class Entity:
    kind: EntityKind
    iri: Iri


@dataclass(frozen=True)
class Literal:
    """Lexical form plus optional datatype and language tag.

    No datatype value-space interpretation happens anywhere; detectors only
    look at lexical forms and tags.
    """

    lexical: str
    datatype: Optional[Iri] = None
    lang: Optional[str] = None


# ---------------------------------------------------------------------------
# Class expressions
# ---------------------------------------------------------------------------

class ClassExpression:
    """Base for the class constructor tree. All variants are frozen."""

    __slots__ = ()


@dataclass(frozen=True)
class Named(ClassExpression):
    iri: Iri


@dataclass(frozen=True)
class IntersectionOf(ClassExpression):
    members: tuple[ClassExpression, ...]

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ModelError("ObjectIntersectionOf needs at least 2 members")


@dataclass(frozen=True)
class UnionOf(ClassExpression):
    members: tuple[ClassExpression, ...]

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ModelError("ObjectUnionOf needs at least 2 members")


@dataclass(frozen=True)
class ComplementOf(ClassExpression):
    expr: ClassExpression


@dataclass(frozen=True)
class OneOf(ClassExpression):
    individuals: tuple[Iri, ...]

    def __post_init__(self) -> None:
        if len(self.individuals) < 1:
            raise ModelError("ObjectOneOf needs at least 1 individual")


@dataclass(frozen=True)
class SomeValuesFrom(ClassExpression):
    prop: Iri
    filler: ClassExpression


@dataclass(frozen=True)
class AllValuesFrom(ClassExpression):
    prop: Iri
    filler: ClassExpression


@dataclass(frozen=True)
class MaxCardinality(ClassExpression):
    n: int
    prop: Iri
    filler: Optional[ClassExpression] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ModelError("cardinality must be non-negative")


@dataclass(frozen=True)
class DataSomeValuesFrom(ClassExpression):
    prop: Iri
    datatype: Iri


@dataclass(frozen=True)
class DataAllValuesFrom(ClassExpression):
    prop: Iri
    datatype: Iri


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Location:
    """Where an axiom came from, for evidence in reports."""

    file: str
    line: int


class Axiom:
    """Base for all axiom variants.

    Source locations never take part in equality or hashing: two parses of
    the same document (or a reserialized copy of it) yield structurally
    equal axioms even though line numbers differ.
    """

    __slots__ = ()


_LOC = field(default=None, compare=False)


@dataclass(frozen=True)
class Declaration(Axiom):
    entity: Entity
    loc: Optional[Location] = _LOC


@dataclass(frozen=True)
class Import(Axiom):
    iri: Iri
    loc: Optional[Location] = _LOC


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: ClassExpression
    sup: ClassExpression
    loc: Optional[Location] = _LOC


@dataclass(frozen=True)
class EquivalentClasses(Axiom):
    members: tuple[ClassExpression, ...]
    loc: Optional[Location] = _LOC

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ModelError("EquivalentClasses needs at least 2 members")


@dataclass(frozen=True)
class DisjointClasses(Axiom):
    members: tuple[ClassExpression, ...]
    loc: Optional[Location] = _LOC

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ModelError("DisjointClasses needs at least 2 members")


@dataclass(frozen=True)
class DisjointUnion(Axiom):
    named: Iri
    disjuncts: tuple[ClassExpression, ...]
    loc: Optional[Location] = _LOC

    def __post_init__(self) -> None:
        if len(self.disjuncts) < 2:
            raise ModelError("DisjointUnion needs at least 2 disjuncts")


@dataclass(frozen=True)
class SubObjectPropertyOf(Axiom):
    sub: Iri
    sup: Iri
    loc: Optional[Location] = _LOC


@dataclass(frozen=True)
class InverseObjectProperties(Axiom):
    first: Iri
    second: Iri
    loc: Optional[Location] = _LOC


@dataclass(frozen=True)
class ClassAssertion(Axiom):
    expr: ClassExpression
    individual: Iri
    loc: Optional[Location] = _LOC


@dataclass(frozen=True)
class AnnotationAssertion(Axiom):
    prop: Iri
    subject: Iri
    value: Literal
    loc: Optional[Location] = _LOC


LOGICAL_AXIOM_TYPES = (
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    DisjointUnion,
    SubObjectPropertyOf,
    InverseObjectProperties,
    ClassAssertion,
)


def is_logical(axiom: Axiom) -> bool:
    return isinstance(axiom, LOGICAL_AXIOM_TYPES)


# ---------------------------------------------------------------------------
# The model
# ---------------------------------------------------------------------------

class OntologyModel:
    """One parsed ontology: prefix table, entities, ordered axioms, indexes.

    ``entities`` covers both explicitly declared entities and those
    auto-declared by the lenient parser; the distinction is visible only in
    the diagnostics, not here. Axiom order follows the source document so
    that reports can cite axioms in source order.
    """

    def __init__(
        self,
        ontology_iri: Optional[Iri],
        prefixes: dict[str, str],
        entities: dict[Iri, EntityKind],
        axioms: Iterable[Axiom],
    ) -> None:
        self._ontology_iri = ontology_iri
        self._prefixes = dict(prefixes)
        self._entities = dict(entities)
        self._axioms = tuple(axioms)
        by_type: dict[type, list[Axiom]] = {}
        by_subject: dict[Iri, list[AnnotationAssertion]] = {}
        for ax in self._axioms:
            by_type.setdefault(type(ax), []).append(ax)
            if isinstance(ax, AnnotationAssertion):
                by_subject.setdefault(ax.subject, []).append(ax)
        self._by_type = {t: tuple(v) for t, v in by_type.items()}
        self._by_subject = {s: tuple(v) for s, v in by_subject.items()}

    @property
    def ontology_iri(self) -> Optional[Iri]:
        return self._ontology_iri

    @property
    def prefixes(self) -> dict[str, str]:
        return dict(self._prefixes)

    @property
    def axioms(self) -> tuple[Axiom, ...]:
        return self._axioms

    @property
    def entities(self) -> tuple[Entity, ...]:
        return tuple(
            Entity(kind, iri)
            for iri, kind in sorted(self._entities.items(), key=lambda kv: kv[0].value)
        )

    def entity_kind(self, iri: Iri) -> Optional[EntityKind]:
        return self._entities.get(iri)

    def axioms_of_type(self, axiom_type: type) -> tuple[Axiom, ...]:
        return self._by_type.get(axiom_type, ())

    def annotation_axioms(self, subject: Iri) -> tuple[AnnotationAssertion, ...]:
        return self._by_subject.get(subject, ())

    def evidence_for(self, iri: Iri) -> Optional[Axiom]:
        """Best axiom to cite for an entity: its declaration if one exists,
        otherwise the first axiom that mentions the IRI."""
        for ax in self.axioms_of_type(Declaration):
            if ax.entity.iri == iri:
                return ax
        for ax in self._axioms:
            if iri in iris_of(ax):
                return ax
        return None

    def structurally_equal(self, other: "OntologyModel") -> bool:
        """Same ontology IRI, prefix table, entity set and axiom multiset.

        Source locations do not participate (axiom equality ignores them).
        """
        return (
            self._ontology_iri == other._ontology_iri
            and self._prefixes == other._prefixes
            and self._entities == other._entities
            and Counter(self._axioms) == Counter(other._axioms)
        )


# ---------------------------------------------------------------------------
# Traversal helpers
# ---------------------------------------------------------------------------

def expression_iris(expr: ClassExpression) -> set[Iri]:
    """Every IRI mentioned anywhere inside a class expression."""
    out: set[Iri] = set()
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Named):
            out.add(e.iri)
        elif isinstance(e, (IntersectionOf, UnionOf)):
            stack.extend(e.members)
        elif isinstance(e, ComplementOf):
            stack.append(e.expr)
        elif isinstance(e, OneOf):
            out.update(e.individuals)
        elif isinstance(e, (SomeValuesFrom, AllValuesFrom)):
            out.add(e.prop)
            stack.append(e.filler)
        elif isinstance(e, MaxCardinality):
            out.add(e.prop)
            if e.filler is not None:
                stack.append(e.filler)
        elif isinstance(e, (DataSomeValuesFrom, DataAllValuesFrom)):
            out.add(e.prop)
            out.add(e.datatype)
    return out


def iris_of(axiom: Axiom) -> set[Iri]:
    """Every IRI mentioned by an axiom (including annotation subjects)."""
    if isinstance(axiom, Declaration):
        return {axiom.entity.iri}
    if isinstance(axiom, Import):
        return {axiom.iri}
    if isinstance(axiom, SubClassOf):
        return expression_iris(axiom.sub) | expression_iris(axiom.sup)
    if isinstance(axiom, (EquivalentClasses, DisjointClasses)):
        out: set[Iri] = set()
        for m in axiom.members:
            out |= expression_iris(m)
        return out
    if isinstance(axiom, DisjointUnion):
        out = {axiom.named}
        for m in axiom.disjuncts:
            out |= expression_iris(m)
        return out
    if isinstance(axiom, SubObjectPropertyOf):
        return {axiom.sub, axiom.sup}
    if isinstance(axiom, InverseObjectProperties):
        return {axiom.first, axiom.second}
    if isinstance(axiom, ClassAssertion):
        return expression_iris(axiom.expr) | {axiom.individual}
    if isinstance(axiom, AnnotationAssertion):
        out = {axiom.prop, axiom.subject}
        if axiom.value.datatype is not None:
            out.add(axiom.value.datatype)
        return out
    raise TypeError(f"unknown axiom type: {type(axiom).__name__}")


# ---------------------------------------------------------------------------
# Profile operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntityCensus:
    classes: int
    object_properties: int
    data_properties: int
    individuals: int
    logical_axioms: int


def profile_stats(model: OntologyModel) -> EntityCensus:
    """Count declared entities per kind and logical axioms.

    Declarations, imports and annotation assertions are not logical axioms.
    """
    kinds = Counter(e.kind for e in model.entities)
    return EntityCensus(
        classes=kinds[EntityKind.CLASS],
        object_properties=kinds[EntityKind.OBJECT_PROPERTY],
        data_properties=kinds[EntityKind.DATA_PROPERTY],
        individuals=kinds[EntityKind.NAMED_INDIVIDUAL],
        logical_axioms=sum(1 for ax in model.axioms if is_logical(ax)),
    )


def entities_of_kind(model: OntologyModel, kind: EntityKind) -> set[Iri]:
    return {e.iri for e in model.entities if e.kind == kind}


def annotations_of(
    model: OntologyModel, subject: Iri, prop: Optional[Iri] = None
) -> list[tuple[Iri, Literal, Optional[str]]]:
    """Annotation values on a subject, in source order.

    ``prop=None`` is the wildcard; otherwise only assertions with exactly
    that annotation property are returned.
    """
    out = []
    for ax in model.annotation_axioms(subject):
        if prop is None or ax.prop == prop:
            out.append((ax.prop, ax.value, ax.value.lang))
    return out
