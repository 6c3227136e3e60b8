"""Audit report assembly and rendering.

One audit run covers any number of ontology files against one rule config
and produces a presence matrix (bias types x ontologies) plus per-finding
evidence. The JSON form is byte-reproducible for identical inputs; the
markdown form leads with the matrix so two ontologies can be compared at a
glance, findings grouped by type underneath.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .detectors import (
    ECONOMIC_REVIEW_CHECKLIST,
    BiasType,
    Finding,
    run_all,
)
from .model import OntologyModel, EntityCensus, profile_stats
from .ofn import ParseDiagnostic, render_axiom
from .reasoner import TaxonomyIndex, classify
from .rules import RuleConfig

PRESENT = "present"
PARTIAL = "partial"
ABSENT = "absent"

_MATRIX_GLYPHS = {PRESENT: "+", PARTIAL: "±", ABSENT: "-"}


@dataclass
class OntologyAudit:
    name: str
    source: str
    iri: Optional[str]
    census: EntityCensus
    findings: list[Finding]
    matrix: dict[BiasType, str]
    unsatisfiable: list[str]
    diagnostics: list[ParseDiagnostic]
    model: OntologyModel
    index: TaxonomyIndex

    @property
    def economic_checklist(self) -> tuple[str, ...]:
        if any(f.bias_type is BiasType.ECONOMIC for f in self.findings):
            return ()
        return ECONOMIC_REVIEW_CHECKLIST


@dataclass
class AuditReport:
    version: str
    config_fingerprint: str
    ontologies: list[OntologyAudit]


def matrix_row(findings: list[Finding]) -> dict[BiasType, str]:
    """Pure function of the finding list: present/partial/absent per type.

    A cell is partial only when every finding of that type is partial.
    """
    row: dict[BiasType, str] = {}
    for bias_type in BiasType:
        of_type = [f for f in findings if f.bias_type is bias_type]
        if not of_type:
            row[bias_type] = ABSENT
        elif all(f.severity == "partial" for f in of_type):
            row[bias_type] = PARTIAL
        else:
            row[bias_type] = PRESENT
    return row


def audit_model(
    name: str,
    source: str,
    model: OntologyModel,
    diagnostics: list[ParseDiagnostic],
    config: RuleConfig,
) -> OntologyAudit:
    index = classify(model)
    findings = run_all(model, index, config)
    return OntologyAudit(
        name=name,
        source=source,
        iri=model.ontology_iri.value if model.ontology_iri else None,
        census=profile_stats(model),
        findings=findings,
        matrix=matrix_row(findings),
        unsatisfiable=sorted(c.value for c in index.unsat),
        diagnostics=diagnostics,
        model=model,
        index=index,
    )


def build_report(audits: list[OntologyAudit], config: RuleConfig) -> AuditReport:
    return AuditReport(
        version=__version__,
        config_fingerprint=config.fingerprint(),
        ontologies=audits,
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _finding_to_dict(finding: Finding, model: OntologyModel) -> dict:
    prefixes = model.prefixes
    return {
        "bias_type": finding.bias_type.value,
        "rule_id": finding.rule_id,
        "explicitness": finding.explicitness,
        "severity": finding.severity,
        "subjects": [s.value for s in finding.subjects],
        "evidence": [
            {
                "axiom": render_axiom(ax, prefixes),
                "file": ax.loc.file if ax.loc else "",
                "line": ax.loc.line if ax.loc else 0,
            }
            for ax in finding.evidence
        ],
        "message": finding.message,
        "suggestions": list(finding.suggestions),
        "consequence_class": finding.consequence_class,
    }


def report_to_dict(report: AuditReport) -> dict:
    ontologies = []
    for audit in report.ontologies:
        entry = {
            "name": audit.name,
            "source": audit.source,
            "iri": audit.iri,
            "census": {
                "classes": audit.census.classes,
                "object_properties": audit.census.object_properties,
                "data_properties": audit.census.data_properties,
                "individuals": audit.census.individuals,
                "logical_axioms": audit.census.logical_axioms,
            },
            "matrix": {bt.value: cell for bt, cell in audit.matrix.items()},
            "findings": [_finding_to_dict(f, audit.model) for f in audit.findings],
            "unsatisfiable": audit.unsatisfiable,
            "diagnostics": [
                {
                    "severity": d.severity,
                    "message": d.message,
                    "line": d.line,
                    "column": d.column,
                }
                for d in audit.diagnostics
            ],
        }
        if audit.economic_checklist:
            entry["economic_manual_review"] = list(audit.economic_checklist)
        ontologies.append(entry)
    return {
        "version": report.version,
        "config_fingerprint": report.config_fingerprint,
        "ontologies": ontologies,
    }


def render_json(report: AuditReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def render_matrix_markdown(report: AuditReport) -> list[str]:
    names = [audit.name for audit in report.ontologies]
    lines = ["| Bias | " + " | ".join(names) + " |"]
    lines.append("|" + "---|" * (len(names) + 1))
    for bias_type in BiasType:
        cells = [_MATRIX_GLYPHS[audit.matrix[bias_type]] for audit in report.ontologies]
        lines.append(f"| {bias_type.value} | " + " | ".join(cells) + " |")
    return lines


def render_markdown(report: AuditReport) -> str:
    lines = [
        "# Ontology bias audit",
        "",
        f"- tool version: {report.version}",
        f"- config fingerprint: `{report.config_fingerprint}`",
        "",
        "## Bias matrix",
        "",
    ]
    lines.extend(render_matrix_markdown(report))
    lines.append("")

    for audit in report.ontologies:
        title = audit.name if audit.iri is None else f"{audit.name} ({audit.iri})"
        lines.append(f"## {title}")
        lines.append("")
        c = audit.census
        lines.append(
            f"- census: {c.classes} classes, {c.object_properties} object "
            f"properties, {c.data_properties} data properties, "
            f"{c.individuals} individuals, {c.logical_axioms} logical axioms"
        )
        unsat = ", ".join(audit.unsatisfiable) if audit.unsatisfiable else "none"
        lines.append(f"- unsatisfiable classes: {unsat}")
        lines.append("")

        for bias_type in BiasType:
            of_type = [f for f in audit.findings if f.bias_type is bias_type]
            if not of_type and bias_type is not BiasType.ECONOMIC:
                continue
            lines.append(f"### {bias_type.value}")
            lines.append("")
            for f in of_type:
                severity = "" if f.severity == "full" else f" [{f.severity}]"
                lines.append(
                    f"- **{f.rule_id}**{severity} ({f.explicitness}, "
                    f"{f.consequence_class}): {f.message}"
                )
                if f.subjects:
                    subjects = ", ".join(s.value for s in f.subjects)
                    lines.append(f"  - subjects: {subjects}")
                prefixes = audit.model.prefixes
                for ax in f.evidence:
                    line_no = ax.loc.line if ax.loc else 0
                    lines.append(f"  - evidence (line {line_no}): `{render_axiom(ax, prefixes)}`")
                if f.suggestions:
                    lines.append(f"  - suggestions: {', '.join(f.suggestions)}")
            if bias_type is BiasType.ECONOMIC and not of_type:
                lines.append("No automated findings. Manual review checklist:")
                lines.append("")
                for item in audit.economic_checklist:
                    lines.append(f"- {item}")
            lines.append("")

        if audit.diagnostics:
            lines.append("### Parser diagnostics")
            lines.append("")
            for d in audit.diagnostics:
                lines.append(f"- {d.render()}")
            lines.append("")

    return "\n".join(lines).rstrip() + "\n"


def matrix_csv(report: AuditReport) -> str:
    """The matrix as a delimited table, one row per bias type."""
    names = [audit.name for audit in report.ontologies]
    lines = ["bias_type," + ",".join(names)]
    for bias_type in BiasType:
        cells = [audit.matrix[bias_type] for audit in report.ontologies]
        lines.append(bias_type.value + "," + ",".join(cells))
    return "\n".join(lines) + "\n"
