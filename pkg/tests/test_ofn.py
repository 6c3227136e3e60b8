from __future__ import annotations

import random

import pytest

from conftest import CORPUS, FIXTURES, load_fixture
from ontobias.model import (
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    Iri,
    Literal,
    Named,
    SubClassOf,
)
from ontobias.ofn import (
    FAIL,
    LENIENT,
    STRICT,
    ParserOptions,
    parse,
    parse_file,
    serialize,
)
from randmodels import random_grammar_model

GENET = "https://example.org/ontology/genet#"


def test_header_only_document():
    model, diags = parse("Ontology(<http://ex.org/o>)")
    assert model.ontology_iri == Iri("http://ex.org/o")
    assert model.axioms == ()
    assert diags == []


def test_document_without_ontology_iri():
    model, diags = parse("Ontology()")
    assert model.ontology_iri is None
    assert diags == []


def test_genet_axioms_retrievable_by_variant():
    model, _ = load_fixture("genet_v1.ofn")
    subclass_axioms = model.axioms_of_type(SubClassOf)
    assert any(
        ax.sub == Named(Iri(GENET + "Robot")) and ax.sup == Named(Iri(GENET + "PatientKind"))
        for ax in subclass_axioms
    )
    disjoint_axioms = model.axioms_of_type(DisjointClasses)
    assert any(
        set(ax.members) == {Named(Iri(GENET + "Robot")), Named(Iri(GENET + "Human"))}
        for ax in disjoint_axioms
    )


def test_unsupported_construct_skipped_with_warning():
    text = """
    Prefix(:=<http://ex.org/v#>)
    Ontology(<http://ex.org/o>
    Declaration(Class(:A))
    HasKey(:A () (:p))
    Declaration(Class(:B))
    )
    """
    model, diags = parse(text)
    warnings = [d for d in diags if d.severity == "warning"]
    assert any("HasKey" in d.message for d in warnings)
    assert not any(d.severity == "error" for d in diags)
    # both declarations survive, the HasKey is gone
    assert len(model.axioms) == 2


def test_unsupported_construct_fail_mode():
    text = "Ontology(<http://ex.org/o>\nHasKey(<http://ex.org/A> () ())\n)"
    _, diags = parse(text, ParserOptions(unknown_construct_policy=FAIL))
    assert any(d.severity == "error" and "HasKey" in d.message for d in diags)


def test_unsupported_nested_constructor_drops_whole_axiom():
    text = """
    Prefix(:=<http://ex.org/v#>)
    Ontology(<http://ex.org/o>
    Declaration(Class(:A))
    SubClassOf(:A ObjectHasSelf(:p))
    )
    """
    model, diags = parse(text)
    assert any("ObjectHasSelf" in d.message for d in diags if d.severity == "warning")
    assert model.axioms_of_type(SubClassOf) == ()


def test_iri_valued_annotation_skipped_with_warning():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:A))\n"
        "AnnotationAssertion(rdfs:seeAlso :A <http://elsewhere.org/doc>)\n"
        "Declaration(Class(:B))\n"
        ")"
    )
    model, diags = parse(text)
    assert not any(d.severity == "error" for d in diags)
    assert any("non-literal" in d.message for d in diags)
    assert len(model.axioms) == 2


def test_unbalanced_parens_is_error_with_location():
    text = "Ontology(<http://ex.org/o>\nSubClassOf(<http://ex.org/A> <http://ex.org/B>\n)"
    _, diags = parse(text)
    errors = [d for d in diags if d.severity == "error"]
    assert errors
    lines = text.splitlines()
    for d in errors:
        assert 1 <= d.line <= len(lines)
        assert d.column >= 1


def test_malformed_iri_reports_position():
    _, diags = parse('Ontology(<http://ex.org/o>\nImport(<http://unterminated)\n)')
    errors = [d for d in diags if d.severity == "error"]
    assert errors and errors[0].line == 2


def test_bad_cardinality_integer():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "SubClassOf(:A ObjectMaxCardinality(x :p))\n"
        ")"
    )
    _, diags = parse(text)
    assert any(d.severity == "error" and "cardinality" in d.message for d in diags)


def test_unknown_prefix_is_error():
    _, diags = parse("Ontology(<http://ex.org/o>\nDeclaration(Class(ex:A))\n)")
    assert any(d.severity == "error" and "unknown prefix" in d.message for d in diags)


def test_strict_mode_flags_undeclared_entities():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "SubClassOf(:A :B)\n"
        ")"
    )
    _, strict_diags = parse(text, ParserOptions(mode=STRICT))
    assert sum(1 for d in strict_diags if d.severity == "error") == 2

    model, lenient_diags = parse(text, ParserOptions(mode=LENIENT))
    warnings = [d for d in lenient_diags if d.severity == "warning"]
    assert len(warnings) == 2
    assert all("auto-declared" in d.message for d in warnings)
    assert model.entity_kind(Iri("http://ex.org/v#A")) == EntityKind.CLASS


def test_auto_declaration_infers_kind_from_context():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "SubClassOf(:A ObjectSomeValuesFrom(:p ObjectOneOf(:i)))\n"
        ")"
    )
    model, _ = parse(text)
    assert model.entity_kind(Iri("http://ex.org/v#p")) == EntityKind.OBJECT_PROPERTY
    assert model.entity_kind(Iri("http://ex.org/v#i")) == EntityKind.NAMED_INDIVIDUAL


def test_punning_rejected_strict_and_skipped_lenient():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:A))\n"
        "Declaration(NamedIndividual(:A))\n"
        ")"
    )
    _, strict_diags = parse(text, ParserOptions(mode=STRICT))
    assert any(d.severity == "error" and "punning" in d.message for d in strict_diags)

    model, lenient_diags = parse(text, ParserOptions(mode=LENIENT))
    assert any(d.severity == "warning" and "punning" in d.message for d in lenient_diags)
    assert model.entity_kind(Iri("http://ex.org/v#A")) == EntityKind.CLASS  # first wins


def test_comments_run_to_end_of_line():
    text = (
        "# leading comment\n"
        "Prefix(:=<http://ex.org/v#>)  # trailing\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:A))  # another\n"
        ")\n"
    )
    model, diags = parse(text)
    assert diags == []
    assert len(model.axioms) == 1


def test_language_tags_and_datatypes():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Prefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)\n"
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(AnnotationProperty(rdfs:label))\n"
        'AnnotationAssertion(rdfs:label :A "colour"@en-gb)\n'
        'AnnotationAssertion(rdfs:label :A "42"^^xsd:integer)\n'
        'AnnotationAssertion(rdfs:label :A "plain")\n'
        ")"
    )
    model, diags = parse(text)
    assert not any(d.severity == "error" for d in diags)
    values = [ax.value for ax in model.annotation_axioms(Iri("http://ex.org/v#A"))]
    assert values[0] == Literal("colour", lang="en-gb")
    assert values[1] == Literal("42", datatype=Iri("http://www.w3.org/2001/XMLSchema#integer"))
    assert values[2] == Literal("plain")


def test_string_escapes():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
        "Ontology(<http://ex.org/o>\n"
        'AnnotationAssertion(rdfs:label :A "say \\"hi\\" \\\\ done")\n'
        ")"
    )
    model, _ = parse(text)
    (ax,) = model.annotation_axioms(Iri("http://ex.org/v#A"))
    assert ax.value.lexical == 'say "hi" \\ done'


def test_serialize_empty_model_is_header_only():
    model, _ = parse("Ontology(<http://ex.org/o>)")
    assert serialize(model) == "Ontology(<http://ex.org/o>\n)\n"


def test_serialize_oneof_lists_both_individuals():
    text = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "EquivalentClasses(:G ObjectOneOf(:a :b))\n"
        ")"
    )
    model, _ = parse(text)
    out = serialize(model)
    assert "ObjectOneOf(:a :b)" in out


def test_serialize_prefixes_first_one_axiom_per_line():
    model, _ = load_fixture("genet_v1.ofn")
    out = serialize(model)
    lines = out.splitlines()
    assert lines[0].startswith("Prefix(")
    assert lines[1].startswith("Ontology(")
    assert lines[-1] == ")"
    # prefixes + header + one axiom per line + closer
    assert len(lines) == len(model.prefixes) + 1 + len(model.axioms) + 1


@pytest.mark.parametrize("name", CORPUS)
def test_roundtrip_identity_on_corpus(name):
    first, _ = parse_file(FIXTURES / name)
    second, diags = parse(serialize(first), source=name)
    assert not any(d.severity == "error" for d in diags)
    assert first.structurally_equal(second)
    # and a second trip stays put
    third, _ = parse(serialize(second), source=name)
    assert second.structurally_equal(third)


def test_roundtrip_random_models_sample():
    rng = random.Random(2024)
    for _ in range(60):
        model = random_grammar_model(rng)
        reparsed, diags = parse(serialize(model))
        assert not any(d.severity == "error" for d in diags), diags
        assert model.structurally_equal(reparsed)


def test_diagnostics_deterministic():
    text = (FIXTURES / "mini_cido.ofn").read_text(encoding="utf-8")
    _, first = parse(text)
    _, second = parse(text)
    assert first == second


def test_diagnostic_positions_inside_input():
    text = (FIXTURES / "mini_cido.ofn").read_text(encoding="utf-8")
    _, diags = parse(text)
    line_count = text.count("\n") + 1
    for d in diags:
        assert 1 <= d.line <= line_count
        assert d.column >= 1


def test_mini_codo_parses_clean_in_strict_mode():
    text = (FIXTURES / "mini_codo.ofn").read_text(encoding="utf-8")
    _, diags = parse(text, ParserOptions(mode=STRICT))
    assert diags == []


def test_mini_cido_needs_lenient_mode():
    # the fixture reproduces the undeclared-annotation-property defect
    text = (FIXTURES / "mini_cido.ofn").read_text(encoding="utf-8")
    _, strict_diags = parse(text, ParserOptions(mode=STRICT))
    assert any(d.severity == "error" for d in strict_diags)
    _, lenient_diags = parse(text)
    assert not any(d.severity == "error" for d in lenient_diags)
    assert any("auto-declared" in d.message for d in lenient_diags)


def test_serializer_golden_files():
    for name in ("genet_v1", "purpose_patterns", "grammar_zoo"):
        model, _ = load_fixture(f"{name}.ofn")
        golden = (FIXTURES.parent / "tests" / "golden" / f"{name}.ofn").read_text(
            encoding="utf-8"
        )
        assert serialize(model) == golden
