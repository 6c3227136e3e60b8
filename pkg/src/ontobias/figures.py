"""Figure rendering for audit reports.

Writes the presence matrix as a colour grid and the finding counts as a
bar chart, next to a delimited copy of the matrix, so a report directory
can be dropped straight into a write-up.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .detectors import BiasType  # noqa: E402
from .report import ABSENT, PARTIAL, PRESENT, AuditReport, matrix_csv  # noqa: E402

_CELL_VALUE = {ABSENT: 0.0, PARTIAL: 0.5, PRESENT: 1.0}
_CELL_GLYPH = {ABSENT: "-", PARTIAL: "±", PRESENT: "+"}


def render_matrix_figure(report: AuditReport, path: Path) -> None:
    names = [audit.name for audit in report.ontologies]
    types = list(BiasType)
    values = [
        [_CELL_VALUE[audit.matrix[bt]] for audit in report.ontologies] for bt in types
    ]

    fig, ax = plt.subplots(figsize=(1.6 + 1.1 * len(names), 0.6 + 0.45 * len(types)))
    ax.imshow(values, cmap="Reds", vmin=0.0, vmax=1.3, aspect="auto")
    ax.set_xticks(range(len(names)), labels=names, rotation=20, ha="right")
    ax.set_yticks(range(len(types)), labels=[bt.value for bt in types])
    for r, bt in enumerate(types):
        for c, audit in enumerate(report.ontologies):
            cell = audit.matrix[bt]
            colour = "white" if cell == PRESENT else "black"
            ax.text(c, r, _CELL_GLYPH[cell], ha="center", va="center", color=colour)
    ax.set_title("Bias presence by ontology")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_findings_figure(report: AuditReport, path: Path) -> None:
    types = list(BiasType)
    width = 0.8 / max(len(report.ontologies), 1)
    fig, ax = plt.subplots(figsize=(9, 4))
    for i, audit in enumerate(report.ontologies):
        counts = [
            sum(1 for f in audit.findings if f.bias_type is bt) for bt in types
        ]
        positions = [t + i * width for t in range(len(types))]
        ax.bar(positions, counts, width=width, label=audit.name)
    ax.set_xticks(
        [t + 0.4 - width / 2 for t in range(len(types))],
        labels=[bt.value for bt in types],
        rotation=20,
        ha="right",
    )
    ax.set_ylabel("findings")
    ax.set_title("Findings per bias type")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report_figures(report: AuditReport, directory: str | Path) -> list[Path]:
    """Render matrix.csv, matrix.png and findings_by_type.png into a dir."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "matrix.csv"
    csv_path.write_text(matrix_csv(report), encoding="utf-8")
    matrix_path = out / "matrix.png"
    render_matrix_figure(report, matrix_path)
    findings_path = out / "findings_by_type.png"
    render_findings_figure(report, findings_path)
    return [csv_path, matrix_path, findings_path]
