"""Eight rule-driven bias detectors.

Each detector is a pure function of (model, taxonomy index, rule config)
returning findings with axiom-level evidence. Whether a bias type is an
explicit modelling choice or can also creep in unnoticed is a fixed
property of the type, carried on every finding.

Detection is string matching over labels and IRI local names plus
structural checks against the closure; there is no NLP and no similarity
scoring, so a finding can always be traced to one registry entry (its
``rule_id`` names the entry) or to one of the three structural thresholds.
The detectors report; deciding whether a flagged choice was intentional is
out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from .model import (
    AnnotationAssertion,
    Axiom,
    ClassAssertion,
    ClassExpression,
    ComplementOf,
    DataAllValuesFrom,
    DataSomeValuesFrom,
    DisjointClasses,
    DisjointUnion,
    EntityKind,
    EquivalentClasses,
    Import,
    IntersectionOf,
    Iri,
    MaxCardinality,
    Named,
    OneOf,
    OntologyModel,
    SomeValuesFrom,
    AllValuesFrom,
    SubClassOf,
    UnionOf,
    entities_of_kind,
    is_logical,
    iris_of,
    profile_stats,
)
from .reasoner import TaxonomyIndex, explain_subsumption
from .rules import (
    ALT_LABEL,
    LABEL_PROPERTY_IRIS,
    PREF_LABEL,
    RuleConfig,
    term_matches,
)


class BiasType(Enum):
    """The eight bias sources, in fixed report order."""

    PHILOSOPHICAL = "Philosophical"
    PURPOSE = "Purpose"
    SCIENCE = "Science"
    GRANULARITY = "Granularity"
    LINGUISTIC = "Linguistic"
    SOCIO_CULTURAL = "SocioCultural"
    POLITICAL_RELIGIOUS = "PoliticalReligious"
    ECONOMIC = "Economic"


EXPLICITNESS = {
    BiasType.PHILOSOPHICAL: "explicit",
    BiasType.PURPOSE: "explicit",
    BiasType.SCIENCE: "explicit",
    BiasType.GRANULARITY: "either",
    BiasType.LINGUISTIC: "either",
    BiasType.SOCIO_CULTURAL: "either",
    BiasType.POLITICAL_RELIGIOUS: "either",
    BiasType.ECONOMIC: "explicit",
}

OMISSION = "omission"
INCORRECT_ATTRIBUTION = "incorrect_attribution"
UNDESIRABLE_DEDUCTION = "undesirable_deduction"
TERMINOLOGY = "terminology"

# shown by the report layer when a run produces no automated economic
# findings; economic bias mostly needs a human reader
ECONOMIC_REVIEW_CHECKLIST = (
    "Review disease and disorder classifications for links to treatment "
    "funding, reimbursement, or market incentives.",
    "Check threshold values and eligibility criteria behind condition "
    "definitions against independent clinical evidence.",
    "Look for vendor-, product-, or industry-specific terms presented as "
    "neutral categories.",
    "Confirm that inclusion or exclusion of billable conditions does not "
    "track a single stakeholder's interests.",
)

_EVIDENCE_CAP = 5


@dataclass(frozen=True)
class Finding:
    bias_type: BiasType
    rule_id: str
    subjects: tuple[Iri, ...]
    evidence: tuple[Axiom, ...]
    message: str
    consequence_class: str
    suggestions: tuple[str, ...] = ()
    severity: str = "full"  # "partial" only ever set by granularity rules
    note: str = field(default="", compare=False)

    @property
    def explicitness(self) -> str:
        return EXPLICITNESS[self.bias_type]


# ---------------------------------------------------------------------------
# Matching helpers
# ---------------------------------------------------------------------------

def _labels(model: OntologyModel, iri: Iri) -> list[AnnotationAssertion]:
    return [
        ax
        for ax in model.annotation_axioms(iri)
        if ax.prop.value in LABEL_PROPERTY_IRIS
    ]


def _texts(model: OntologyModel, iri: Iri) -> list[tuple[str, Optional[Axiom]]]:
    """Matchable strings of an entity: labels, then the IRI local name."""
    out: list[tuple[str, Optional[Axiom]]] = [
        (ax.value.lexical, ax) for ax in _labels(model, iri)
    ]
    out.append((iri.local_name, model.evidence_for(iri)))
    return out


def _match(model: OntologyModel, iri: Iri, pattern: str) -> Optional[tuple[str, Optional[Axiom]]]:
    for text, axiom in _texts(model, iri):
        if term_matches(pattern, text):
            return text, axiom
    return None


def _sorted_classes(model: OntologyModel) -> list[Iri]:
    return sorted(entities_of_kind(model, EntityKind.CLASS), key=lambda i: i.value)


def _matching_classes(model: OntologyModel, pattern: str) -> list[tuple[Iri, Optional[Axiom]]]:
    out = []
    for cls in _sorted_classes(model):
        hit = _match(model, cls, pattern)
        if hit is not None:
            out.append((cls, hit[1]))
    return out


def _subexpressions(expr: ClassExpression) -> Iterator[ClassExpression]:
    yield expr
    if isinstance(expr, (IntersectionOf, UnionOf)):
        for m in expr.members:
            yield from _subexpressions(m)
    elif isinstance(expr, ComplementOf):
        yield from _subexpressions(expr.expr)
    elif isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
        yield from _subexpressions(expr.filler)
    elif isinstance(expr, MaxCardinality) and expr.filler is not None:
        yield from _subexpressions(expr.filler)


def _axiom_expressions(axiom: Axiom) -> Iterator[ClassExpression]:
    if isinstance(axiom, SubClassOf):
        yield from _subexpressions(axiom.sub)
        yield from _subexpressions(axiom.sup)
    elif isinstance(axiom, (EquivalentClasses, DisjointClasses)):
        for m in axiom.members:
            yield from _subexpressions(m)
    elif isinstance(axiom, DisjointUnion):
        for m in axiom.disjuncts:
            yield from _subexpressions(m)
    elif isinstance(axiom, ClassAssertion):
        yield from _subexpressions(axiom.expr)


def _direct_children(model: OntologyModel) -> dict[Iri, set[Iri]]:
    """Asserted direct named subclasses, from subclass, union-equivalence
    and disjoint-union axioms."""
    children: dict[Iri, set[Iri]] = {}

    def add(child: Iri, parent: Iri) -> None:
        if child != parent:
            children.setdefault(parent, set()).add(child)

    for ax in model.axioms:
        if isinstance(ax, SubClassOf) and isinstance(ax.sub, Named) and isinstance(ax.sup, Named):
            add(ax.sub.iri, ax.sup.iri)
        elif isinstance(ax, EquivalentClasses):
            named = [m.iri for m in ax.members if isinstance(m, Named)]
            for m in ax.members:
                if isinstance(m, UnionOf):
                    for u in m.members:
                        if isinstance(u, Named):
                            for owner in named:
                                add(u.iri, owner)
        elif isinstance(ax, DisjointUnion):
            for d in ax.disjuncts:
                if isinstance(d, Named):
                    add(d.iri, ax.named)
    return children


def _members_of(model: OntologyModel, cls: Iri) -> dict[Iri, Axiom]:
    """Direct subclasses, enumeration members and asserted individuals."""
    members: dict[Iri, Axiom] = {}
    for ax in model.axioms:
        if (
            isinstance(ax, SubClassOf)
            and isinstance(ax.sub, Named)
            and isinstance(ax.sup, Named)
            and ax.sup.iri == cls
            and ax.sub.iri != cls
        ):
            members.setdefault(ax.sub.iri, ax)
        elif isinstance(ax, EquivalentClasses):
            named = [m.iri for m in ax.members if isinstance(m, Named)]
            if cls in named:
                for m in ax.members:
                    if isinstance(m, OneOf):
                        for ind in m.individuals:
                            members.setdefault(ind, ax)
                    elif isinstance(m, UnionOf):
                        for u in m.members:
                            if isinstance(u, Named) and u.iri != cls:
                                members.setdefault(u.iri, ax)
        elif isinstance(ax, DisjointUnion) and ax.named == cls:
            for d in ax.disjuncts:
                if isinstance(d, Named):
                    members.setdefault(d.iri, ax)
        elif (
            isinstance(ax, ClassAssertion)
            and isinstance(ax.expr, Named)
            and ax.expr.iri == cls
        ):
            members.setdefault(ax.individual, ax)
    return members


def _missing_members(
    model: OntologyModel, known: tuple[str, ...], present: list[Iri]
) -> list[str]:
    missing = []
    for member in known:
        if not any(_match(model, p, member) for p in present):
            missing.append(member)
    return missing


def _display(model: OntologyModel, iri: Iri) -> str:
    for ax in _labels(model, iri):
        return ax.value.lexical
    return iri.local_name


def _dedupe(axioms: list[Axiom]) -> tuple[Axiom, ...]:
    out: list[Axiom] = []
    for ax in axioms:
        if ax is not None and not any(ax is seen for seen in out):
            out.append(ax)
    return tuple(out)


# ---------------------------------------------------------------------------
# Detectors
# ---------------------------------------------------------------------------

def _namespace_hits(
    model: OntologyModel, prefixes
) -> tuple[list[Iri], list[Axiom]]:
    """Imports of, and declared entities inside, any of the IRI prefixes."""
    subjects: list[Iri] = []
    evidence: list[Axiom] = []
    for ax in model.axioms_of_type(Import):
        if any(ax.iri.value.startswith(p) for p in prefixes):
            subjects.append(ax.iri)
            evidence.append(ax)
    for entity in model.entities:
        if any(entity.iri.value.startswith(p) for p in prefixes):
            subjects.append(entity.iri)
            ev = model.evidence_for(entity.iri)
            if ev is not None:
                evidence.append(ev)
    return subjects, evidence


def detect_philosophical(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    findings: list[Finding] = []

    for name, prefixes in config.foundational_namespaces.items():
        subjects, evidence = _namespace_hits(model, prefixes)
        if subjects:
            findings.append(
                Finding(
                    bias_type=BiasType.PHILOSOPHICAL,
                    rule_id=f"phil-ns:{name.lower()}",
                    subjects=tuple(subjects),
                    evidence=_dedupe(evidence)[:_EVIDENCE_CAP],
                    message=(
                        f"Commitment to the {name} foundational framework: "
                        f"{len(subjects)} IRI(s) live in its namespaces or are "
                        "imported from it. The framework's modelling stance "
                        "carries over into this ontology."
                    ),
                    consequence_class=TERMINOLOGY,
                )
            )

    for entry in config.philosophical_markers:
        matches = _matching_classes(model, entry.pattern)
        if matches:
            findings.append(
                Finding(
                    bias_type=BiasType.PHILOSOPHICAL,
                    rule_id=f"phil-marker:{entry.slug}",
                    subjects=tuple(cls for cls, _ in matches),
                    evidence=_dedupe([ev for _, ev in matches])[:_EVIDENCE_CAP],
                    message=(
                        f"Top-level marker class '{entry.pattern}' is present, "
                        f"a {entry.style}-style commitment."
                    ),
                    consequence_class=TERMINOLOGY,
                    note=entry.note,
                )
            )
        else:
            contrast_subjects, contrast_evidence = _namespace_hits(
                model, entry.contrast_namespaces
            )
            if contrast_subjects:
                findings.append(
                    Finding(
                        bias_type=BiasType.PHILOSOPHICAL,
                        rule_id=f"phil-marker:{entry.slug}",
                        subjects=tuple(contrast_subjects),
                        evidence=_dedupe(contrast_evidence)[:_EVIDENCE_CAP],
                        message=(
                            f"No '{entry.pattern}' marker class although the "
                            "ontology aligns with a framework that rejects "
                            f"such entities; whole categories a {entry.style}-"
                            "style model would admit cannot be represented."
                        ),
                        consequence_class=OMISSION,
                        note=entry.note,
                    )
                )

    return findings


def detect_purpose(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    findings: list[Finding] = []

    # pattern A: participation link into a process class
    for entry in config.participation_patterns:
        for ax in model.axioms_of_type(SubClassOf):
            if not (isinstance(ax.sub, Named) and isinstance(ax.sup, SomeValuesFrom)):
                continue
            if _match(model, ax.sup.prop, entry.property_pattern) is None:
                continue
            filler = ax.sup.filler
            if not isinstance(filler, Named):
                continue
            if not any(_match(model, filler.iri, fp) for fp in entry.filler_patterns):
                continue
            findings.append(
                Finding(
                    bias_type=BiasType.PURPOSE,
                    rule_id=f"purp-a:{entry.slug}",
                    subjects=(ax.sub.iri,),
                    evidence=(ax,),
                    message=(
                        f"'{_display(model, ax.sub.iri)}' participates "
                        f"existentially in '{_display(model, filler.iri)}': a "
                        "precision-first, process-oriented modelling purpose. "
                        "The restriction is inherited by every subclass, so "
                        "closure queries will attribute the participation to "
                        "all of them."
                    ),
                    consequence_class=UNDESIRABLE_DEDUCTION,
                    note=entry.note,
                )
            )

    # pattern B: boolean attribute restrictions
    for datatype in config.boolean_datatypes:
        slug = datatype.rsplit("#", 1)[-1].rsplit("/", 1)[-1].lower()
        for ax in model.axioms:
            if not is_logical(ax):
                continue
            hit = None
            for expr in _axiom_expressions(ax):
                if isinstance(expr, (DataSomeValuesFrom, DataAllValuesFrom)):
                    if expr.datatype.value == datatype:
                        hit = expr
                        break
            if hit is None:
                continue
            subjects = tuple(
                sorted(
                    (
                        i
                        for i in iris_of(ax)
                        if model.entity_kind(i) == EntityKind.CLASS
                    ),
                    key=lambda i: i.value,
                )
            )
            findings.append(
                Finding(
                    bias_type=BiasType.PURPOSE,
                    rule_id=f"purp-b-bool:{slug}",
                    subjects=subjects,
                    evidence=(ax,),
                    message=(
                        f"Boolean-valued restriction over '{hit.prop.local_name}': "
                        "flattening a state of affairs into a flag is a "
                        "conceptual-data-model encoding, tuned for record "
                        "keeping rather than domain representation."
                    ),
                    consequence_class=TERMINOLOGY,
                )
            )

    # pattern B, census form: data-property-heavy ontology
    census = profile_stats(model)
    fraction = config.thresholds.data_property_fraction
    if (
        census.classes > 0
        and census.data_properties > 0
        and census.data_properties >= fraction * census.classes
    ):
        declarations = [
            ax
            for ax in model.axioms
            if getattr(getattr(ax, "entity", None), "kind", None) == EntityKind.DATA_PROPERTY
        ]
        findings.append(
            Finding(
                bias_type=BiasType.PURPOSE,
                rule_id="purp-b-ratio",
                subjects=(),
                evidence=tuple(declarations[:_EVIDENCE_CAP]),
                message=(
                    f"{census.data_properties} data properties against "
                    f"{census.classes} classes (threshold {fraction:g} per "
                    "class): the ontology is shaped like a data-recording "
                    "schema rather than a representation of the domain."
                ),
                consequence_class=TERMINOLOGY,
            )
        )

    # pattern C: thesaurus-style representation
    thesaurus_props = set(config.thesaurus_annotation_properties)
    thesaurus_axioms = [
        ax
        for ax in model.axioms_of_type(AnnotationAssertion)
        if ax.prop.value in thesaurus_props
    ]
    ratio_fire = len(thesaurus_axioms) > 0 and len(thesaurus_axioms) > (
        config.thresholds.annotation_ratio * census.logical_axioms
    )

    label_only_classes: list[Iri] = []
    if thesaurus_axioms:
        mention_counts: dict[Iri, list[Axiom]] = {}
        for ax in model.axioms:
            if not is_logical(ax):
                continue
            for iri in iris_of(ax):
                mention_counts.setdefault(iri, []).append(ax)
        for cls in _sorted_classes(model):
            has_skos_label = any(
                ax.prop.value in (PREF_LABEL, ALT_LABEL)
                for ax in model.annotation_axioms(cls)
            )
            if not has_skos_label:
                continue
            mentions = mention_counts.get(cls, [])
            if not mentions:
                label_only_classes.append(cls)
            elif len(mentions) == 1:
                only = mentions[0]
                if (
                    isinstance(only, SubClassOf)
                    and isinstance(only.sub, Named)
                    and only.sub.iri == cls
                ):
                    label_only_classes.append(cls)

    if ratio_fire or label_only_classes:
        reasons = []
        if ratio_fire:
            reasons.append(
                f"{len(thesaurus_axioms)} thesaurus-style annotations against "
                f"{census.logical_axioms} logical axioms (threshold "
                f"{config.thresholds.annotation_ratio:g}:1)"
            )
        if label_only_classes:
            reasons.append(
                f"{len(label_only_classes)} class(es) carry preferred or "
                "alternative labels but at most a single subclass axiom"
            )
        findings.append(
            Finding(
                bias_type=BiasType.PURPOSE,
                rule_id="purp-c",
                subjects=tuple(label_only_classes),
                evidence=tuple(thesaurus_axioms[:_EVIDENCE_CAP]),
                message=(
                    "Thesaurus-style representation: " + "; ".join(reasons) + ". "
                    "The vocabulary is cast wide for annotation and retrieval, "
                    "not for stating what holds in the domain."
                ),
                consequence_class=TERMINOLOGY,
            )
        )

    return findings


def _detect_contested(
    model: OntologyModel,
    index: TaxonomyIndex,
    config: RuleConfig,
    category: str,
    bias_type: BiasType,
    rule_prefix: str,
) -> list[Finding]:
    findings: list[Finding] = []
    for entry in config.contested_subsumptions:
        if entry.category != category:
            continue
        subs = [cls for cls, _ in _matching_classes(model, entry.sub)]
        sups = [cls for cls, _ in _matching_classes(model, entry.sup)]
        for sub in subs:
            for sup in sups:
                if sub == sup or sup not in index.superclasses(sub):
                    continue
                findings.append(
                    Finding(
                        bias_type=bias_type,
                        rule_id=f"{rule_prefix}:{entry.slug}",
                        subjects=(sub, sup),
                        evidence=tuple(explain_subsumption(index, sub, sup)),
                        message=(
                            f"'{_display(model, sub)}' is classified under "
                            f"'{_display(model, sup)}', a contested "
                            f"classification: {entry.note}."
                        ),
                        consequence_class=INCORRECT_ATTRIBUTION,
                        note=entry.note,
                    )
                )
    return findings


def detect_science(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    return _detect_contested(model, index, config, "science", BiasType.SCIENCE, "sci")


def detect_granularity(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    findings: list[Finding] = []
    children = _direct_children(model)

    for entry in config.expected_minimums:
        for cls, _ in _matching_classes(model, entry.pattern):
            kids = sorted(children.get(cls, set()), key=lambda i: i.value)
            # leaves are not offering categories at all; only a started
            # breakdown that stops short counts as an omission here
            if not kids or len(kids) >= entry.minimum:
                continue
            evidence = _dedupe(
                [_members_of(model, cls).get(kid) for kid in kids]
            )
            findings.append(
                Finding(
                    bias_type=BiasType.GRANULARITY,
                    rule_id=f"gran-min:{entry.slug}",
                    subjects=(cls,),
                    evidence=evidence[:_EVIDENCE_CAP],
                    message=(
                        f"'{_display(model, cls)}' offers only "
                        f"{len(kids)} direct subclass(es) "
                        f"({', '.join(_display(model, k) for k in kids)}) "
                        f"where at least {entry.minimum} are expected: an "
                        "omission, whether by intent or by running out of "
                        "time."
                    ),
                    consequence_class=OMISSION,
                    severity=entry.severity,
                    note=entry.note,
                )
            )

    for entry in config.sensitive_dimensions:
        if entry.emit_as != "granularity":
            continue
        for cls, _ in _matching_classes(model, entry.pattern):
            members = _members_of(model, cls)
            if len(members) != 1 or len(entry.known_members) < 2:
                continue
            sole = next(iter(members))
            missing = _missing_members(model, entry.known_members, [sole])
            if not missing:
                continue
            findings.append(
                Finding(
                    bias_type=BiasType.GRANULARITY,
                    rule_id=f"gran-sole:{entry.slug}",
                    subjects=(cls,),
                    evidence=(members[sole],),
                    message=(
                        f"'{_display(model, sole)}' is the only kind of "
                        f"'{_display(model, cls)}' modelled; missing members "
                        f"such as: {', '.join(missing)}. An omission with a "
                        "socio-cultural root (reported once, here)."
                    ),
                    consequence_class=OMISSION,
                    suggestions=tuple(missing),
                    note=entry.note,
                )
            )

    return findings


def detect_linguistic(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    findings: list[Finding] = []

    for entry in config.region_variant_lexicon:
        for cls in _sorted_classes(model):
            hit = _match(model, cls, entry.variant)
            if hit is None:
                continue
            addressed = any(
                any(term_matches(alt, text) for text, _ in _texts(model, cls))
                for alt in entry.alternates
            )
            if addressed:
                continue
            evidence = _dedupe([hit[1]])
            findings.append(
                Finding(
                    bias_type=BiasType.LINGUISTIC,
                    rule_id=f"ling-variant:{entry.slug}",
                    subjects=(cls,),
                    evidence=evidence,
                    message=(
                        f"Regional spelling '{entry.variant}' on "
                        f"'{_display(model, cls)}' without "
                        f"{' or '.join(repr(a) for a in entry.alternates)} as "
                        "an alternative label; easy to fix with an extra "
                        "label per locale "
                        f"({', '.join(entry.locales)})."
                    ),
                    consequence_class=TERMINOLOGY,
                    suggestions=entry.alternates,
                )
            )

    census = profile_stats(model)
    if census.classes > config.thresholds.monolingual_min_classes:
        label_axioms = [
            ax
            for ax in model.axioms_of_type(AnnotationAssertion)
            if ax.prop.value in LABEL_PROPERTY_IRIS
        ]
        primary_tags = {
            ax.value.lang.split("-")[0].lower()
            for ax in label_axioms
            if ax.value.lang
        }
        if len(primary_tags) <= 1:
            tag = next(iter(primary_tags), None)
            described = f"'{tag}'" if tag else "none (untagged)"
            findings.append(
                Finding(
                    bias_type=BiasType.LINGUISTIC,
                    rule_id="ling-mono",
                    subjects=(),
                    evidence=tuple(label_axioms[:_EVIDENCE_CAP]),
                    message=(
                        f"Monolingual labelling across {census.classes} "
                        f"classes (language: {described}): every other "
                        "language community is left without usable labels, "
                        "the usual mark of a single-culture development team."
                    ),
                    consequence_class=OMISSION,
                )
            )

    return findings


def detect_sociocultural(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    findings: list[Finding] = []

    for entry in config.sensitive_dimensions:
        if entry.emit_as != "sociocultural":
            continue
        for cls, _ in _matching_classes(model, entry.pattern):
            # closed enumerations and coverings over a sensitive dimension
            enum_axiom = None
            enum_members: list[Iri] = []
            for ax in model.axioms_of_type(EquivalentClasses):
                named = [m.iri for m in ax.members if isinstance(m, Named)]
                if cls not in named:
                    continue
                for m in ax.members:
                    if isinstance(m, OneOf):
                        enum_axiom = ax
                        enum_members = list(m.individuals)
                    elif isinstance(m, UnionOf) and all(
                        isinstance(u, Named) for u in m.members
                    ):
                        enum_axiom = ax
                        enum_members = [u.iri for u in m.members]
            if enum_axiom is None:
                for ax in model.axioms_of_type(DisjointUnion):
                    if ax.named == cls and all(
                        isinstance(d, Named) for d in ax.disjuncts
                    ):
                        enum_axiom = ax
                        enum_members = [d.iri for d in ax.disjuncts]
            if enum_axiom is not None:
                missing = _missing_members(model, entry.known_members, enum_members)
                names = ", ".join(_display(model, m) for m in enum_members)
                gap = (
                    f"; known members are missing: {', '.join(missing)}"
                    if missing
                    else ""
                )
                findings.append(
                    Finding(
                        bias_type=BiasType.SOCIO_CULTURAL,
                        rule_id=f"soc-enum:{entry.slug}",
                        subjects=(cls,),
                        evidence=(enum_axiom,),
                        message=(
                            f"'{_display(model, cls)}' is closed to exactly "
                            f"{{{names}}}. Anyone outside the set cannot be "
                            f"represented at all{gap}."
                        ),
                        consequence_class=OMISSION,
                        suggestions=tuple(missing),
                        note=entry.note,
                    )
                )
                continue

            members = _members_of(model, cls)
            if len(members) == 1 and len(entry.known_members) >= 2:
                sole = next(iter(members))
                missing = _missing_members(model, entry.known_members, [sole])
                if missing:
                    findings.append(
                        Finding(
                            bias_type=BiasType.SOCIO_CULTURAL,
                            rule_id=f"soc-member:{entry.slug}",
                            subjects=(cls,),
                            evidence=(members[sole],),
                            message=(
                                f"'{_display(model, cls)}' records only "
                                f"'{_display(model, sole)}'; missing: "
                                f"{', '.join(missing)}. Data about the "
                                "missing members cannot be annotated."
                            ),
                            consequence_class=OMISSION,
                            suggestions=tuple(missing),
                            note=entry.note,
                        )
                    )

    findings.extend(
        _detect_loaded_terms(model, config, "SocioCultural", BiasType.SOCIO_CULTURAL, "soc-term")
    )
    return findings


def _detect_loaded_terms(
    model: OntologyModel,
    config: RuleConfig,
    bias_name: str,
    bias_type: BiasType,
    rule_prefix: str,
) -> list[Finding]:
    findings: list[Finding] = []
    scannable = sorted(
        entities_of_kind(model, EntityKind.CLASS)
        | entities_of_kind(model, EntityKind.NAMED_INDIVIDUAL),
        key=lambda i: i.value,
    )
    for entry in config.loaded_term_lexicon:
        if entry.bias_type != bias_name:
            continue
        for iri in scannable:
            hit = _match(model, iri, entry.pattern)
            if hit is None:
                continue
            suggestion_text = (
                f" Neutral alternatives: {', '.join(entry.suggestions)}."
                if entry.suggestions
                else ""
            )
            findings.append(
                Finding(
                    bias_type=bias_type,
                    rule_id=f"{rule_prefix}:{entry.slug}",
                    subjects=(iri,),
                    evidence=_dedupe([hit[1]]),
                    message=(
                        f"Loaded term '{entry.pattern}' on "
                        f"'{_display(model, iri)}': {entry.note}."
                        + suggestion_text
                    ),
                    consequence_class=TERMINOLOGY,
                    suggestions=entry.suggestions,
                    note=entry.note,
                )
            )
    return findings


def detect_political(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    findings = _detect_loaded_terms(
        model, config, "PoliticalReligious", BiasType.POLITICAL_RELIGIOUS, "pol-term"
    )

    def membership_findings(
        entries, rule_prefix: str, wording: str
    ) -> list[Finding]:
        out: list[Finding] = []
        for entry in entries:
            containers = [c for c, _ in _matching_classes(model, entry.container)]
            # subclass route
            for cls, _ in _matching_classes(model, entry.pattern):
                for container in containers:
                    if cls == container or container not in index.superclasses(cls):
                        continue
                    out.append(
                        Finding(
                            bias_type=BiasType.POLITICAL_RELIGIOUS,
                            rule_id=f"{rule_prefix}:{entry.slug}",
                            subjects=(cls, container),
                            evidence=tuple(explain_subsumption(index, cls, container)),
                            message=(
                                f"'{_display(model, cls)}' listed under "
                                f"'{_display(model, container)}' {wording}: "
                                f"{entry.note}."
                            ),
                            consequence_class=INCORRECT_ATTRIBUTION,
                            note=entry.note,
                        )
                    )
            # individual route
            for ax in model.axioms_of_type(ClassAssertion):
                if not isinstance(ax.expr, Named):
                    continue
                if ax.expr.iri not in containers:
                    continue
                if _match(model, ax.individual, entry.pattern) is None:
                    continue
                out.append(
                    Finding(
                        bias_type=BiasType.POLITICAL_RELIGIOUS,
                        rule_id=f"{rule_prefix}:{entry.slug}",
                        subjects=(ax.individual, ax.expr.iri),
                        evidence=(ax,),
                        message=(
                            f"'{_display(model, ax.individual)}' asserted as a "
                            f"'{_display(model, ax.expr.iri)}' {wording}: "
                            f"{entry.note}."
                        ),
                        consequence_class=INCORRECT_ATTRIBUTION,
                        note=entry.note,
                    )
                )
        return out

    findings.extend(
        membership_findings(
            config.disputed_entities, "pol-disputed", "although its status is disputed"
        )
    )
    findings.extend(
        membership_findings(
            config.misclassified_members, "pol-region", "which misstates what it is"
        )
    )
    return findings


def detect_economic(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    """Contested-classification entries with an economic category.

    This is the least automatable type; when it returns nothing, the
    report layer shows ECONOMIC_REVIEW_CHECKLIST instead.
    """
    return _detect_contested(model, index, config, "economic", BiasType.ECONOMIC, "econ")


DETECTORS = (
    (BiasType.PHILOSOPHICAL, detect_philosophical),
    (BiasType.PURPOSE, detect_purpose),
    (BiasType.SCIENCE, detect_science),
    (BiasType.GRANULARITY, detect_granularity),
    (BiasType.LINGUISTIC, detect_linguistic),
    (BiasType.SOCIO_CULTURAL, detect_sociocultural),
    (BiasType.POLITICAL_RELIGIOUS, detect_political),
    (BiasType.ECONOMIC, detect_economic),
)


def run_all(
    model: OntologyModel, index: TaxonomyIndex, config: RuleConfig
) -> list[Finding]:
    """All eight detectors, concatenated in fixed bias-type order."""
    findings: list[Finding] = []
    for _, detector in DETECTORS:
        findings.extend(detector(model, index, config))
    return findings
