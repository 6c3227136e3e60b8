"""Structural subsumption reasoning over named classes.

This is deliberately not a complete OWL 2 DL reasoner. It closes the named
class hierarchy under five rules, which are enough to surface the kinds of
consequences the detectors and the OBDA simulator need:

  R1  transitivity of SubClassOf between named classes, with
      EquivalentClasses treated as mutual SubClassOf;
  R2  covering elimination: if C is under a class covered by a union of
      disjuncts and C is disjoint with all disjuncts but one, C slides into
      the remaining disjunct; disjoint with all of them, C is unsatisfiable;
  R3  disjointness clash: a class subsumed by two disjoint classes is
      unsatisfiable (via reflexivity this covers "disjoint with an ancestor
      of itself");
  R4  disjointness inheritance: disjointness propagates to subclasses;
  R5  bottom propagation: an unsatisfiable class is under every class, so
      growing a model can strengthen a covering conclusion from "slides
      into the last disjunct" to "unsatisfiable" without ever retracting
      the subsumption.

Coverings come from DisjointUnion axioms and from EquivalentClasses with a
union member. Complex superclass expressions other than existential
restrictions (collected separately for inheritance queries) are stored in
the model but take no part in the closure.

Every derived fact carries a support set of asserted axioms sufficient to
re-derive it; supports prefer fewer axioms, then lower source lines, so
explanations are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .model import (
    Axiom,
    ClassExpression,
    DisjointClasses,
    DisjointUnion,
    EntityKind,
    EquivalentClasses,
    Iri,
    Named,
    OntologyModel,
    SomeValuesFrom,
    SubClassOf,
    UnionOf,
    entities_of_kind,
)

Fact = tuple  # ("sub", c, d) | ("dis", c, d) | ("unsat", c)


def _support_key(axioms: frozenset) -> tuple[int, tuple[int, ...]]:
    lines = tuple(sorted(ax.loc.line if ax.loc else 0 for ax in axioms))
    return (len(axioms), lines)


class UnknownClassError(ValueError):
    pass


class NotDerivableError(ValueError):
    pass


@dataclass(frozen=True)
class DerivedRestriction:
    """An existential restriction a class inherits from an ancestor.

    ``via`` is the chain of asserted axioms from ``on_class`` up to the
    ancestor carrying the restriction, ending with the restriction axiom
    itself, so it is never empty.
    """

    on_class: Iri
    prop: Iri
    filler: ClassExpression
    via: tuple[Axiom, ...]


class TaxonomyIndex:
    """Precomputed closure: subsumption, disjointness, coverings, unsat."""

    def __init__(
        self,
        classes: frozenset[Iri],
        subsumes: dict[Iri, frozenset[Iri]],
        disjoint: frozenset[tuple[Iri, Iri]],
        coverings: dict[Iri, tuple[tuple[Iri, ...], ...]],
        unsat: frozenset[Iri],
        supports: dict[Fact, frozenset],
    ) -> None:
        self.classes = classes
        self._subsumes = subsumes
        self.disjoint = disjoint
        self.coverings = coverings
        self.unsat = unsat
        self._supports = supports

    def superclasses(self, iri: Iri) -> frozenset[Iri]:
        if iri not in self.classes:
            raise UnknownClassError(f"unknown class: {iri}")
        return self._subsumes.get(iri, frozenset())

    def subclasses(self, iri: Iri) -> frozenset[Iri]:
        if iri not in self.classes:
            raise UnknownClassError(f"unknown class: {iri}")
        return frozenset(c for c in self.classes if iri in self._subsumes.get(c, frozenset()))

    def pairs(self) -> frozenset[tuple[Iri, Iri]]:
        return frozenset(
            (c, d) for c, supers in self._subsumes.items() for d in supers
        )

    def are_disjoint(self, a: Iri, b: Iri) -> bool:
        key = (a, b) if a.value <= b.value else (b, a)
        return key in self.disjoint

    def support(self, fact: Fact) -> Optional[frozenset]:
        return self._supports.get(fact)


def classify(model: OntologyModel) -> TaxonomyIndex:
    """Close the named hierarchy under R1-R5 until fixpoint.

    An inconsistent model is not an error; the offending classes land in
    ``unsat``.
    """
    classes = frozenset(entities_of_kind(model, EntityKind.CLASS))

    subsumes: dict[Iri, set[Iri]] = {c: set() for c in classes}
    disjoint: set[tuple[Iri, Iri]] = set()
    coverings: dict[Iri, list[tuple[Iri, ...]]] = {}
    covering_axioms: list[tuple[Iri, tuple[Iri, ...], Axiom]] = []
    unsat: set[Iri] = set()
    supports: dict[Fact, frozenset] = {}

    def dis_key(a: Iri, b: Iri) -> tuple[Iri, Iri]:
        return (a, b) if a.value <= b.value else (b, a)

    def record(fact: Fact, support: frozenset) -> bool:
        """Add or improve a fact; True if anything changed."""
        old = supports.get(fact)
        if old is not None and _support_key(old) <= _support_key(support):
            return False
        supports[fact] = support
        kind = fact[0]
        if kind == "sub":
            subsumes[fact[1]].add(fact[2])
        elif kind == "dis":
            disjoint.add((fact[1], fact[2]))
        else:
            unsat.add(fact[1])
        return True

    def add_sub(c: Iri, d: Iri, support: frozenset) -> bool:
        if c not in classes or d not in classes:
            return False
        return record(("sub", c, d), support)

    def add_dis(a: Iri, b: Iri, support: frozenset) -> bool:
        if a not in classes or b not in classes:
            return False
        k = dis_key(a, b)
        return record(("dis", k[0], k[1]), support)

    def has_dis(a: Iri, b: Iri) -> bool:
        return dis_key(a, b) in disjoint

    def dis_support(a: Iri, b: Iri) -> frozenset:
        k = dis_key(a, b)
        return supports[("dis", k[0], k[1])]

    # --- seed from asserted axioms -------------------------------------
    for c in sorted(classes, key=lambda x: x.value):
        record(("sub", c, c), frozenset())

    for ax in model.axioms:
        if isinstance(ax, SubClassOf):
            if isinstance(ax.sub, Named) and isinstance(ax.sup, Named):
                add_sub(ax.sub.iri, ax.sup.iri, frozenset([ax]))
        elif isinstance(ax, EquivalentClasses):
            named = [m.iri for m in ax.members if isinstance(m, Named)]
            for a in named:
                for b in named:
                    if a != b:
                        add_sub(a, b, frozenset([ax]))
            for m in ax.members:
                if isinstance(m, UnionOf):
                    disjuncts = tuple(
                        u.iri for u in m.members if isinstance(u, Named)
                    )
                    if len(disjuncts) == len(m.members):
                        for owner in named:
                            coverings.setdefault(owner, []).append(disjuncts)
                            covering_axioms.append((owner, disjuncts, ax))
                            for d in disjuncts:
                                add_sub(d, owner, frozenset([ax]))
        elif isinstance(ax, DisjointClasses):
            named = [m.iri for m in ax.members if isinstance(m, Named)]
            for idx, a in enumerate(named):
                for b in named[idx + 1:]:
                    add_dis(a, b, frozenset([ax]))
        elif isinstance(ax, DisjointUnion):
            disjuncts = tuple(d.iri for d in ax.disjuncts if isinstance(d, Named))
            if len(disjuncts) == len(ax.disjuncts):
                coverings.setdefault(ax.named, []).append(disjuncts)
                covering_axioms.append((ax.named, disjuncts, ax))
            for d in disjuncts:
                add_sub(d, ax.named, frozenset([ax]))
            for idx, a in enumerate(disjuncts):
                for b in disjuncts[idx + 1:]:
                    add_dis(a, b, frozenset([ax]))

    # --- fixpoint -------------------------------------------------------
    ordered = sorted(classes, key=lambda x: x.value)
    changed = True
    while changed:
        changed = False

        # R1: transitivity
        for c in ordered:
            for d in sorted(subsumes[c], key=lambda x: x.value):
                for e in sorted(subsumes[d], key=lambda x: x.value):
                    sup = supports[("sub", c, d)] | supports[("sub", d, e)]
                    if add_sub(c, e, sup):
                        changed = True

        # R4: disjointness inheritance
        for a, b in sorted(disjoint, key=lambda p: (p[0].value, p[1].value)):
            base = supports[("dis", a, b)]
            for c in ordered:
                if a in subsumes[c] and c != a:
                    if add_dis(c, b, base | supports[("sub", c, a)]):
                        changed = True
                if b in subsumes[c] and c != b:
                    if add_dis(c, a, base | supports[("sub", c, b)]):
                        changed = True

        # R2: covering elimination
        for owner, disjuncts, ax in covering_axioms:
            for c in ordered:
                if owner not in subsumes[c]:
                    continue
                excluded = [d for d in disjuncts if c != d and has_dis(c, d)]
                remaining = [d for d in disjuncts if not (c != d and has_dis(c, d))]
                base = supports[("sub", c, owner)] | frozenset([ax])
                for d in excluded:
                    base |= dis_support(c, d)
                if len(remaining) == 1:
                    if add_sub(c, remaining[0], base):
                        changed = True
                elif not remaining:
                    if record(("unsat", c), base):
                        changed = True

        # R3: disjointness clash
        for c in ordered:
            supers = sorted(subsumes[c], key=lambda x: x.value)
            for i, a in enumerate(supers):
                for b in supers[i:]:
                    if has_dis(a, b):
                        sup = (
                            supports[("sub", c, a)]
                            | supports[("sub", c, b)]
                            | dis_support(a, b)
                        )
                        if record(("unsat", c), sup):
                            changed = True

        # R5: bottom propagation
        for c in sorted(unsat, key=lambda x: x.value):
            base = supports[("unsat", c)]
            for d in ordered:
                if add_sub(c, d, base):
                    changed = True

    return TaxonomyIndex(
        classes=classes,
        subsumes={c: frozenset(s) for c, s in subsumes.items()},
        disjoint=frozenset(disjoint),
        coverings={c: tuple(v) for c, v in coverings.items()},
        unsat=frozenset(unsat),
        supports=supports,
    )


def is_subclass_of(index: TaxonomyIndex, sub: Iri, sup: Iri) -> bool:
    if sup not in index.classes:
        raise UnknownClassError(f"unknown class: {sup}")
    return sup in index.superclasses(sub)


def unsatisfiable_classes(index: TaxonomyIndex) -> frozenset[Iri]:
    return index.unsat


def explain_subsumption(index: TaxonomyIndex, sub: Iri, sup: Iri) -> list[Axiom]:
    """Asserted axioms sufficient to re-derive sub being under sup.

    Re-running classify over just these axioms derives the fact again.
    """
    support = index.support(("sub", sub, sup))
    if support is None:
        raise NotDerivableError(f"not derivable: {sub} under {sup}")
    return sorted(support, key=lambda ax: (ax.loc.line if ax.loc else 0, repr(ax)))


def explain_unsatisfiability(index: TaxonomyIndex, cls: Iri) -> list[Axiom]:
    support = index.support(("unsat", cls))
    if support is None:
        raise NotDerivableError(f"not derivable: {cls} unsatisfiable")
    return sorted(support, key=lambda ax: (ax.loc.line if ax.loc else 0, repr(ax)))


def _asserted_edges(model: OntologyModel) -> dict[Iri, list[tuple[Iri, Axiom]]]:
    """Upward edges of the asserted named hierarchy, with their axiom."""
    edges: dict[Iri, list[tuple[Iri, Axiom]]] = {}

    def add(frm: Iri, to: Iri, ax: Axiom) -> None:
        edges.setdefault(frm, []).append((to, ax))

    for ax in model.axioms:
        if isinstance(ax, SubClassOf) and isinstance(ax.sub, Named) and isinstance(ax.sup, Named):
            add(ax.sub.iri, ax.sup.iri, ax)
        elif isinstance(ax, EquivalentClasses):
            named = [m.iri for m in ax.members if isinstance(m, Named)]
            for a in named:
                for b in named:
                    if a != b:
                        add(a, b, ax)
            for m in ax.members:
                if isinstance(m, UnionOf):
                    for u in m.members:
                        if isinstance(u, Named):
                            for owner in named:
                                add(u.iri, owner, ax)
        elif isinstance(ax, DisjointUnion):
            for d in ax.disjuncts:
                if isinstance(d, Named):
                    add(d.iri, ax.named, ax)
    return edges


def inherited_restrictions(
    model: OntologyModel, index: TaxonomyIndex, cls: Iri
) -> list[DerivedRestriction]:
    """Existential restrictions asserted on any ancestor of ``cls``.

    Each restriction axiom appears once; when several paths reach the same
    ancestor (diamonds), the shortest chain is kept. Chains are built over
    asserted axioms only.
    """
    if cls not in index.classes:
        raise UnknownClassError(f"unknown class: {cls}")

    edges = _asserted_edges(model)

    # BFS for shortest chains to every reachable ancestor, deterministic
    chains: dict[Iri, tuple[Axiom, ...]] = {cls: ()}
    frontier = [cls]
    while frontier:
        nxt: list[Iri] = []
        for node in frontier:
            for target, ax in sorted(
                edges.get(node, []), key=lambda e: (e[0].value, e[1].loc.line if e[1].loc else 0)
            ):
                if target not in chains:
                    chains[target] = chains[node] + (ax,)
                    nxt.append(target)
        frontier = nxt

    out: list[DerivedRestriction] = []
    seen: set[int] = set()
    for ancestor in sorted(index.superclasses(cls), key=lambda x: x.value):
        if ancestor not in chains:
            continue  # derived-only ancestor (e.g. via covering elimination)
        for ax in model.axioms:
            if (
                isinstance(ax, SubClassOf)
                and isinstance(ax.sub, Named)
                and ax.sub.iri == ancestor
                and isinstance(ax.sup, SomeValuesFrom)
            ):
                if id(ax) in seen:
                    continue
                seen.add(id(ax))
                out.append(
                    DerivedRestriction(
                        on_class=cls,
                        prop=ax.sup.prop,
                        filler=ax.sup.filler,
                        via=chains[ancestor] + (ax,),
                    )
                )
    return out


def submodel(model: OntologyModel, axioms: Iterable[Axiom]) -> OntologyModel:
    """Same declarations, only the given axioms; used to check explanations."""
    return OntologyModel(
        model.ontology_iri,
        model.prefixes,
        {e.iri: e.kind for e in model.entities},
        tuple(axioms),
    )
