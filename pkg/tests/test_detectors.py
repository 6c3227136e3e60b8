from __future__ import annotations

from dataclasses import replace

from conftest import load_fixture
from ontobias.detectors import (
    BiasType,
    EXPLICITNESS,
    detect_economic,
    detect_granularity,
    detect_linguistic,
    detect_philosophical,
    detect_political,
    detect_purpose,
    detect_science,
    detect_sociocultural,
    run_all,
)
from ontobias.ofn import parse
from ontobias.reasoner import classify
from ontobias.rules import default_config

CIDO = "https://example.org/ontology/mini-cido#"
CODO = "https://example.org/ontology/mini-codo#"
COVOC = "https://example.org/ontology/mini-covoc#"


def audited(name: str):
    model, _ = load_fixture(name)
    return model, classify(model)


def parse_audited(text: str):
    model, diags = parse(text)
    assert not any(d.severity == "error" for d in diags), diags
    return model, classify(model)


CONFIG = default_config()


def rule_ids(findings) -> set[str]:
    return {f.rule_id for f in findings}


# --- philosophical ----------------------------------------------------------

def test_cido_import_triggers_foundational_finding():
    model, index = audited("mini_cido.ofn")
    findings = detect_philosophical(model, index, CONFIG)
    obo = [f for f in findings if f.rule_id == "phil-ns:obo"]
    assert len(obo) == 1
    evidence_text = {type(ax).__name__ for ax in obo[0].evidence}
    assert "Import" in evidence_text


def test_codo_has_no_philosophical_findings():
    model, index = audited("mini_codo.ofn")
    assert detect_philosophical(model, index, CONFIG) == []


def test_dolce_marker_class_reported():
    model, index = audited("dolce_excerpt.ofn")
    findings = detect_philosophical(model, index, CONFIG)
    ids = rule_ids(findings)
    assert "phil-ns:dolce" in ids
    marker = [f for f in findings if f.rule_id == "phil-marker:abstract"]
    assert len(marker) == 1
    assert "present" in marker[0].message


def test_bfo_alignment_without_marker_reports_absence():
    model, index = audited("bfo_excerpt.ofn")
    findings = detect_philosophical(model, index, CONFIG)
    marker = [f for f in findings if f.rule_id == "phil-marker:abstract"]
    assert len(marker) == 1
    assert marker[0].consequence_class == "omission"


# --- purpose ----------------------------------------------------------------

def test_participation_axiom_fires_pattern_a():
    model, index = audited("purpose_patterns.ofn")
    findings = detect_purpose(model, index, CONFIG)
    a = [f for f in findings if f.rule_id.startswith("purp-a:")]
    assert len(a) == 1
    assert a[0].subjects[0].local_name == "HospitalisedPatient"


def test_boolean_restriction_fires_pattern_b():
    model, index = audited("purpose_patterns.ofn")
    findings = detect_purpose(model, index, CONFIG)
    b = [f for f in findings if f.rule_id.startswith("purp-b-bool:")]
    assert len(b) == 1
    assert any(s.local_name == "Patient" for s in b[0].subjects)


def test_codo_data_property_ratio_fires():
    model, index = audited("mini_codo.ofn")
    findings = detect_purpose(model, index, CONFIG)
    assert rule_ids(findings) == {"purp-b-ratio"}


def test_covoc_thesaurus_shape_fires():
    model, index = audited("mini_covoc.ofn")
    findings = detect_purpose(model, index, CONFIG)
    assert rule_ids(findings) == {"purp-c"}
    (finding,) = findings
    assert any(s.local_name == "Taiwan" for s in finding.subjects)


def test_thesaurus_ratio_trigger():
    model, index = audited("thesaurus_style.ofn")
    findings = detect_purpose(model, index, CONFIG)
    assert "purp-c" in rule_ids(findings)
    (finding,) = [f for f in findings if f.rule_id == "purp-c"]
    assert "annotations" in finding.message


def test_cido_has_no_purpose_findings():
    model, index = audited("mini_cido.ofn")
    assert detect_purpose(model, index, CONFIG) == []


def test_plain_ontology_has_no_purpose_findings():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:A))\n"
        "Declaration(Class(:B))\n"
        "SubClassOf(:A :B)\n"
        ")"
    )
    assert detect_purpose(model, index, CONFIG) == []


# --- science ----------------------------------------------------------------

def test_covoc_contested_subsumptions_detected():
    model, index = audited("mini_covoc.ofn")
    findings = detect_science(model, index, CONFIG)
    assert rule_ids(findings) == {
        "sci:virus-organism",
        "sci:headache-disorder-disease",
        "sci:anxiety-disorder-disease",
        "sci:cough-phenotype",
        "sci:diarrhea-phenotype",
    }
    virus = [f for f in findings if f.rule_id == "sci:virus-organism"][0]
    assert [s.local_name for s in virus.subjects] == ["Virus", "Organism"]
    assert len(virus.evidence) == 1  # the asserted SubClassOf explains it


def test_subsumption_without_registry_entry_is_silent():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Virus))\n"
        "Declaration(Class(:BiologicalEntity))\n"
        "SubClassOf(:Virus :BiologicalEntity)\n"
        ")"
    )
    assert detect_science(model, index, CONFIG) == []


def test_derived_contested_subsumption_is_detected():
    # the registry hit holds only through the closure, not as an assertion
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Virus))\n"
        "Declaration(Class(:Microbe))\n"
        "Declaration(Class(:Organism))\n"
        "SubClassOf(:Virus :Microbe)\n"
        "SubClassOf(:Microbe :Organism)\n"
        ")"
    )
    findings = detect_science(model, index, CONFIG)
    assert rule_ids(findings) == {"sci:virus-organism"}
    assert len(findings[0].evidence) == 2


# --- granularity -------------------------------------------------------------

def test_covoc_two_continents_is_an_omission():
    model, index = audited("mini_covoc.ofn")
    findings = detect_granularity(model, index, CONFIG)
    continent = [f for f in findings if f.rule_id == "gran-min:continent"]
    assert len(continent) == 1
    assert continent[0].consequence_class == "omission"
    assert continent[0].severity == "full"
    assert "Asia" in continent[0].message and "Europe" in continent[0].message


def test_codo_sole_infected_family_member_is_an_omission():
    model, index = audited("mini_codo.ofn")
    findings = detect_granularity(model, index, CONFIG)
    assert rule_ids(findings) == {"gran-sole:family-member"}
    (finding,) = findings
    assert finding.consequence_class == "omission"
    assert "household member" in finding.suggestions
    assert "child" in finding.suggestions


def test_continent_with_enough_subclasses_is_silent():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Continent))\n"
        + "".join(f"Declaration(Class(:C{i}))\n" for i in range(6))
        + "".join(f"SubClassOf(:C{i} :Continent)\n" for i in range(6))
        + ")"
    )
    assert detect_granularity(model, index, CONFIG) == []


def test_cido_organization_coverage_is_partial():
    model, index = audited("mini_cido.ofn")
    findings = detect_granularity(model, index, CONFIG)
    assert [f.rule_id for f in findings] == ["gran-min:organization"]
    assert findings[0].severity == "partial"


# --- linguistic ---------------------------------------------------------------

def test_drive_thru_variant_suggests_long_form():
    model, index = audited("mini_cido.ofn")
    findings = detect_linguistic(model, index, CONFIG)
    variant = [f for f in findings if f.rule_id == "ling-variant:drive-thru"]
    assert len(variant) == 1
    assert variant[0].suggestions == ("drive-through",)


def test_variant_with_alternative_label_is_silent():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Facility))\n"
        'AnnotationAssertion(rdfs:label :Facility "drive-thru testing"@en-us)\n'
        'AnnotationAssertion(rdfs:label :Facility "drive-through testing"@en-gb)\n'
        ")"
    )
    findings = detect_linguistic(model, index, CONFIG)
    assert not [f for f in findings if f.rule_id.startswith("ling-variant:")]


def test_cido_monolingual_census_fires():
    model, index = audited("mini_cido.ofn")
    findings = detect_linguistic(model, index, CONFIG)
    mono = [f for f in findings if f.rule_id == "ling-mono"]
    assert len(mono) == 1
    assert "20 classes" in mono[0].message


def test_two_language_tags_disable_monolingual_finding():
    model, index = audited("mini_codo.ofn")
    findings = detect_linguistic(model, index, CONFIG)
    assert findings == []


def test_small_ontologies_are_exempt_from_monolingual_census():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:A))\n"
        ")"
    )
    assert detect_linguistic(model, index, CONFIG) == []


# --- socio-cultural -----------------------------------------------------------

def test_codo_binary_gender_enumeration():
    model, index = audited("mini_codo.ofn")
    findings = detect_sociocultural(model, index, CONFIG)
    enum = [f for f in findings if f.rule_id == "soc-enum:gender"]
    assert len(enum) == 1
    assert enum[0].consequence_class == "omission"
    assert "non-binary" in enum[0].suggestions


def test_cido_presumptive_positive_suggestions():
    model, index = audited("mini_cido.ofn")
    findings = detect_sociocultural(model, index, CONFIG)
    pp = [f for f in findings if f.rule_id == "soc-term:presumptive-positive"]
    assert len(pp) == 1
    assert pp[0].suggestions == (
        "pending result",
        "awaiting test outcome",
        "under investigation",
    )


def test_covoc_single_sex_missing_member():
    model, index = audited("mini_covoc.ofn")
    findings = detect_sociocultural(model, index, CONFIG)
    member = [f for f in findings if f.rule_id == "soc-member:biological-sex"]
    assert len(member) == 1
    assert "female" in member[0].suggestions


def test_open_gender_subclassing_is_silent():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Gender))\n"
        "Declaration(Class(:Female))\n"
        "Declaration(Class(:Male))\n"
        "SubClassOf(:Female :Gender)\n"
        "SubClassOf(:Male :Gender)\n"
        ")"
    )
    assert detect_sociocultural(model, index, CONFIG) == []


# --- political / religious -----------------------------------------------------

def test_loaded_actor_term_suggests_neutral_alternative():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Terroristgroup))\n"
        ")"
    )
    findings = detect_political(model, index, CONFIG)
    assert rule_ids(findings) == {"pol-term:terrorist"}
    assert findings[0].suggestions == ("aggrieved group",)


def test_covoc_disputed_and_misclassified_countries():
    model, index = audited("mini_covoc.ofn")
    findings = detect_political(model, index, CONFIG)
    assert rule_ids(findings) == {
        "pol-disputed:taiwan",
        "pol-disputed:hong-kong",
        "pol-region:west-africa",
    }
    west = [f for f in findings if f.rule_id == "pol-region:west-africa"][0]
    assert west.consequence_class == "incorrect_attribution"


def test_cido_place_branded_pathogen_label():
    model, index = audited("mini_cido.ofn")
    findings = detect_political(model, index, CONFIG)
    assert rule_ids(findings) == {"pol-term:wuhan-virus"}
    assert findings[0].suggestions == ("SARS-CoV-2",)


# --- economic -------------------------------------------------------------------

def test_registered_economic_subsumption_detected():
    model, index = parse_audited(
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Obesity))\n"
        "Declaration(Class(:Disease))\n"
        "SubClassOf(:Obesity :Disease)\n"
        ")"
    )
    findings = detect_economic(model, index, CONFIG)
    assert rule_ids(findings) == {"econ:obesity-disease"}


def test_minis_have_no_economic_findings():
    for name in ("mini_cido.ofn", "mini_codo.ofn", "mini_covoc.ofn"):
        model, index = audited(name)
        assert detect_economic(model, index, CONFIG) == []


def test_empty_contested_registry_means_no_findings():
    bare = replace(CONFIG, contested_subsumptions=())
    model, index = audited("mini_covoc.ofn")
    assert detect_economic(model, index, bare) == []
    assert detect_science(model, index, bare) == []


# --- run_all and cross-cutting invariants ----------------------------------------

def test_run_all_empty_ontology():
    model, index = parse_audited("Ontology(<http://ex.org/o>)")
    assert run_all(model, index, CONFIG) == []


def test_run_all_orders_findings_by_bias_type():
    model, index = audited("mini_covoc.ofn")
    findings = run_all(model, index, CONFIG)
    order = [bt for bt in BiasType]
    positions = [order.index(f.bias_type) for f in findings]
    assert positions == sorted(positions)


def test_run_all_cido_bias_type_presence():
    model, index = audited("mini_cido.ofn")
    present = {f.bias_type for f in run_all(model, index, CONFIG)}
    assert present == {
        BiasType.PHILOSOPHICAL,
        BiasType.GRANULARITY,
        BiasType.LINGUISTIC,
        BiasType.SOCIO_CULTURAL,
        BiasType.POLITICAL_RELIGIOUS,
    }


def test_run_all_covoc_bias_type_presence():
    model, index = audited("mini_covoc.ofn")
    present = {f.bias_type for f in run_all(model, index, CONFIG)}
    assert present == {
        BiasType.PHILOSOPHICAL,
        BiasType.PURPOSE,
        BiasType.SCIENCE,
        BiasType.GRANULARITY,
        BiasType.SOCIO_CULTURAL,
        BiasType.POLITICAL_RELIGIOUS,
    }


def test_detectors_are_pure():
    model, index = audited("mini_covoc.ofn")
    assert run_all(model, index, CONFIG) == run_all(model, index, CONFIG)


def test_every_evidence_axiom_resolves_to_the_model():
    for name in ("mini_cido.ofn", "mini_codo.ofn", "mini_covoc.ofn", "purpose_patterns.ofn"):
        model, index = audited(name)
        for finding in run_all(model, index, CONFIG):
            for ax in finding.evidence:
                assert ax in model.axioms, (name, finding.rule_id)


def test_explicitness_follows_the_fixed_mapping():
    for name in ("mini_cido.ofn", "mini_codo.ofn", "mini_covoc.ofn"):
        model, index = audited(name)
        for finding in run_all(model, index, CONFIG):
            assert finding.explicitness == EXPLICITNESS[finding.bias_type]


def test_severity_partial_only_on_granularity():
    for name in ("mini_cido.ofn", "mini_codo.ofn", "mini_covoc.ofn"):
        model, index = audited(name)
        for finding in run_all(model, index, CONFIG):
            if finding.severity == "partial":
                assert finding.bias_type is BiasType.GRANULARITY


def test_label_and_local_name_matching_are_symmetric():
    by_label = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:X1))\n"
        'AnnotationAssertion(rdfs:label :X1 "terroristgroup"@en)\n'
        ")"
    )
    by_local_name = (
        "Prefix(:=<http://ex.org/v#>)\n"
        "Ontology(<http://ex.org/o>\n"
        "Declaration(Class(:Terroristgroup))\n"
        ")"
    )
    for text in (by_label, by_local_name):
        model, index = parse_audited(text)
        findings = detect_political(model, index, CONFIG)
        assert rule_ids(findings) == {"pol-term:terrorist"}


def test_removing_a_registry_entry_removes_exactly_its_findings():
    model, index = audited("mini_covoc.ofn")
    full = run_all(model, index, CONFIG)
    without = replace(
        CONFIG,
        contested_subsumptions=tuple(
            e for e in CONFIG.contested_subsumptions if e.slug != "virus-organism"
        ),
    )
    reduced = run_all(model, index, without)
    removed = [f for f in full if f not in reduced]
    added = [f for f in reduced if f not in full]
    assert added == []
    assert {f.rule_id for f in removed} == {"sci:virus-organism"}
