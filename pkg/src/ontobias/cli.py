"""Command-line front door.

Three subcommands: ``audit`` runs the detectors over one or more ontology
files and renders the report; ``reason`` exposes the structural reasoner
(unsatisfiable classes, explanations); ``obda`` answers class queries over
mapped CSV tables and can diff closure against flat answers.

Reports go to standard output, diagnostics to standard error. Exit codes:
0 clean, 1 input or parse error, 2 a --fail-on bias type was found.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import __version__
from .detectors import BiasType
from .obda import (
    ObdaError,
    deduction_diff,
    load_mappings,
    load_tables_dir,
    resolve_class,
)
from .ofn import ParserOptions, parse_file, render_axiom, LENIENT, STRICT
from .reasoner import (
    NotDerivableError,
    UnknownClassError,
    classify,
    explain_subsumption,
    explain_unsatisfiability,
)
from .report import audit_model, build_report, render_json, render_markdown
from .rules import ConfigError, load_config


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _load_model(path: str, strict: bool):
    options = ParserOptions(mode=STRICT if strict else LENIENT)
    model, diagnostics = parse_file(path, options)
    for d in diagnostics:
        click.echo(f"{path}: {d.render()}", err=True)
    if any(d.severity == "error" for d in diagnostics):
        sys.exit(1)
    return model, diagnostics


@click.group()
@click.version_option(version=__version__, prog_name="ontobias")
def main() -> None:
    """Bias audit toolchain for OWL ontologies."""


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    envvar="ONTOBIAS_CONFIG",
    default=None,
    help="Rule config YAML; absent sections keep their defaults "
    "(env: ONTOBIAS_CONFIG).",
)
@click.option("--format", "fmt", type=click.Choice(["json", "md"]), default="md")
@click.option(
    "--fail-on",
    "fail_on",
    default=None,
    help="Comma-separated bias types; exit 2 if any has a finding.",
)
@click.option(
    "--figures",
    "figures_dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Also render matrix.csv, matrix.png and findings_by_type.png here.",
)
@click.option("--strict", is_flag=True, help="Strict declaration checking.")
def audit(files, config_path, fmt, fail_on, figures_dir, strict) -> None:
    """Audit ontology files and render the bias report."""
    try:
        config = load_config(config_path)
    except ConfigError as exc:
        _fail(f"bad config: {exc}")

    fail_types: set[BiasType] = set()
    if fail_on:
        by_name = {bt.value.lower(): bt for bt in BiasType}
        for raw in fail_on.split(","):
            name = raw.strip().lower()
            if name not in by_name:
                _fail(
                    f"unknown bias type {raw.strip()!r}; expected one of "
                    + ", ".join(bt.value for bt in BiasType)
                )
            fail_types.add(by_name[name])

    audits = []
    for path in files:
        model, diagnostics = _load_model(path, strict)
        audits.append(
            audit_model(Path(path).stem, str(path), model, diagnostics, config)
        )
    report = build_report(audits, config)

    if fmt == "json":
        click.echo(render_json(report), nl=False)
    else:
        click.echo(render_markdown(report), nl=False)

    if figures_dir is not None:
        from .figures import write_report_figures  # heavy import, on demand

        for written in write_report_figures(report, figures_dir):
            click.echo(f"wrote {written}", err=True)

    if fail_types and any(
        f.bias_type in fail_types for audit in audits for f in audit.findings
    ):
        sys.exit(2)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--check-unsat", is_flag=True, help="List unsatisfiable classes.")
@click.option(
    "--explain",
    "explain_pair",
    nargs=2,
    type=str,
    default=None,
    help="Explain a derived subsumption: SUB SUP.",
)
@click.option("--strict", is_flag=True, help="Strict declaration checking.")
def reason(file, check_unsat, explain_pair, strict) -> None:
    """Classify an ontology and explain its deductions."""
    if not check_unsat and not explain_pair:
        _fail("nothing to do: pass --check-unsat or --explain SUB SUP")
    model, _ = _load_model(file, strict)
    index = classify(model)
    prefixes = model.prefixes

    def show(axioms) -> None:
        for ax in axioms:
            line = ax.loc.line if ax.loc else 0
            click.echo(f"  {line}: {render_axiom(ax, prefixes)}")

    if check_unsat:
        if not index.unsat:
            click.echo("unsatisfiable classes: none")
        else:
            click.echo("unsatisfiable classes:")
            for cls in sorted(index.unsat, key=lambda i: i.value):
                click.echo(f"{cls.local_name} ({cls.value}) because of:")
                show(explain_unsatisfiability(index, cls))

    if explain_pair:
        sub_name, sup_name = explain_pair
        try:
            sub = resolve_class(model, sub_name)
            sup = resolve_class(model, sup_name)
            axioms = explain_subsumption(index, sub, sup)
        except (UnknownClassError, NotDerivableError) as exc:
            _fail(str(exc))
            return
        click.echo(f"{sub.local_name} is subsumed by {sup.local_name} because of:")
        show(axioms)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mappings", "mappings_path", required=True, type=click.Path(exists=True))
@click.option("--tables", "tables_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--class", "class_name", required=True, help="Class to query.")
@click.option("--diff", "want_diff", is_flag=True, help="Show closure-only individuals.")
@click.option("--strict", is_flag=True, help="Strict declaration checking.")
def obda(file, mappings_path, tables_dir, class_name, want_diff, strict) -> None:
    """Answer a class query over mapped tabular data."""
    model, _ = _load_model(file, strict)
    index = classify(model)
    try:
        mappings = load_mappings(mappings_path)
        tables = load_tables_dir(tables_dir)
        cls = resolve_class(model, class_name)
    except (ObdaError, UnknownClassError) as exc:
        _fail(str(exc))
        return
    prefixes = model.prefixes

    try:
        diff = deduction_diff(model, index, mappings, tables, cls)
    except (ObdaError, UnknownClassError) as exc:
        _fail(str(exc))
        return

    if not want_diff:
        click.echo(f"instances of {cls.local_name} (with closure):")
        for name in diff.closure:
            click.echo(f"  {name}")
        if not diff.closure:
            click.echo("  (none)")
        return

    click.echo(f"closure answer ({len(diff.closure)}): {', '.join(diff.closure) or '(none)'}")
    click.echo(f"flat answer ({len(diff.flat)}): {', '.join(diff.flat) or '(none)'}")
    if not diff.extra:
        click.echo("no closure-only individuals")
        return
    click.echo("closure-only individuals:")
    for individual in diff.extra:
        click.echo(f"  {individual}")
        for via_cls, axioms in diff.provenance[individual]:
            click.echo(f"    via {via_cls.local_name} ({via_cls.value})")
            for ax in axioms:
                line = ax.loc.line if ax.loc else 0
                click.echo(f"      {line}: {render_axiom(ax, prefixes)}")


if __name__ == "__main__":
    main()
