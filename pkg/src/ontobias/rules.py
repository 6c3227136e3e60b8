"""Rule registries driving the bias detectors.

Detection is registry matching plus structural checks, nothing smarter: a
term pattern either matches a class (by its labels or its IRI local name,
case-insensitively) or it does not. That keeps every finding auditable and
the default registries user-replaceable. Each entry carries a ``note``
saying why it is in the default set.

Patterns match on word tokens: text is split on separators and camelCase
("InfectedFamilyMember" -> infected/family/member), and a pattern matches
when its tokens appear as a contiguous run, each one a prefix of the
corresponding text token. So "family member" hits InfectedFamilyMember,
"terrorist" hits terroristgroup, but "male" does not hit Female.

A configuration document (YAML) overrides whole sections; absent sections
keep their defaults, so an empty document means the full default config.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

import yaml


class ConfigError(ValueError):
    """Bad configuration document; message carries the offending field path."""


_TOKEN_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def word_tokens(text: str) -> tuple[str, ...]:
    """Lowercase word tokens, splitting separators and camelCase."""
    out: list[str] = []
    for chunk in re.split(r"[^0-9A-Za-z]+", text):
        out.extend(m.group(0).lower() for m in _TOKEN_RE.finditer(chunk))
    return tuple(out)


def term_matches(pattern: str, text: str) -> bool:
    """True if the pattern's tokens occur as a contiguous prefix-run in text."""
    pat = word_tokens(pattern)
    toks = word_tokens(text)
    if not pat or len(pat) > len(toks):
        return False
    for start in range(len(toks) - len(pat) + 1):
        if all(toks[start + k].startswith(pat[k]) for k in range(len(pat))):
            return True
    return False


def slugify(text: str) -> str:
    return "-".join(word_tokens(text)) or "entry"


# ---------------------------------------------------------------------------
# Registry entry shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkerEntry:
    """Top-level marker class signalling a foundational-ontology stance."""

    pattern: str
    style: str
    contrast_namespaces: tuple[str, ...]
    note: str

    @property
    def slug(self) -> str:
        return slugify(self.pattern)


@dataclass(frozen=True)
class ParticipationEntry:
    """Existential participation link into a process/treatment class."""

    property_pattern: str
    filler_patterns: tuple[str, ...]
    note: str

    @property
    def slug(self) -> str:
        return slugify(self.property_pattern)


@dataclass(frozen=True)
class ContestedEntry:
    """A subsumption that is scientifically or economically contested."""

    sub: str
    sup: str
    category: str  # "science" | "economic"
    note: str

    @property
    def slug(self) -> str:
        return f"{slugify(self.sub)}-{slugify(self.sup)}"


@dataclass(frozen=True)
class MinimumEntry:
    """A class expected to offer at least this many direct subclasses."""

    pattern: str
    minimum: int
    note: str
    severity: str = "full"  # "partial" renders as the matrix's one-sided cell

    @property
    def slug(self) -> str:
        return slugify(self.pattern)


@dataclass(frozen=True)
class LoadedTermEntry:
    """A loaded or slanted term with neutral alternatives."""

    pattern: str
    bias_type: str  # "SocioCultural" | "PoliticalReligious"
    suggestions: tuple[str, ...]
    note: str

    @property
    def slug(self) -> str:
        return slugify(self.pattern)


@dataclass(frozen=True)
class DimensionEntry:
    """A socially sensitive dimension with its commonly omitted members."""

    pattern: str
    known_members: tuple[str, ...]
    note: str
    emit_as: str = "sociocultural"  # "granularity" routes sole-subclass gaps

    @property
    def slug(self) -> str:
        return slugify(self.pattern)


@dataclass(frozen=True)
class VariantEntry:
    """Regional spelling variant that deserves an alternative label."""

    variant: str
    alternates: tuple[str, ...]
    locales: tuple[str, ...]
    note: str

    @property
    def slug(self) -> str:
        return slugify(self.variant)


@dataclass(frozen=True)
class MembershipEntry:
    """A name whose membership in a container class is disputed or wrong."""

    pattern: str
    container: str
    note: str

    @property
    def slug(self) -> str:
        return slugify(self.pattern)


@dataclass(frozen=True)
class Thresholds:
    annotation_ratio: float = 3.0
    data_property_fraction: float = 0.5
    monolingual_min_classes: int = 10


@dataclass(frozen=True)
class RuleConfig:
    foundational_namespaces: dict[str, tuple[str, ...]]
    philosophical_markers: tuple[MarkerEntry, ...]
    participation_patterns: tuple[ParticipationEntry, ...]
    boolean_datatypes: tuple[str, ...]
    contested_subsumptions: tuple[ContestedEntry, ...]
    expected_minimums: tuple[MinimumEntry, ...]
    loaded_term_lexicon: tuple[LoadedTermEntry, ...]
    sensitive_dimensions: tuple[DimensionEntry, ...]
    thesaurus_annotation_properties: tuple[str, ...]
    region_variant_lexicon: tuple[VariantEntry, ...]
    disputed_entities: tuple[MembershipEntry, ...]
    misclassified_members: tuple[MembershipEntry, ...]
    thresholds: Thresholds = field(default_factory=Thresholds)

    def fingerprint(self) -> str:
        blob = json.dumps(_config_to_plain(self), sort_keys=True).encode("utf-8")
        return "sha256:" + hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# Default registries
# ---------------------------------------------------------------------------

XSD = "http://www.w3.org/2001/XMLSchema#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OBO = "http://purl.obolibrary.org/obo/"

PREF_LABEL = SKOS + "prefLabel"
ALT_LABEL = SKOS + "altLabel"
RDFS_LABEL = RDFS + "label"
ALTERNATIVE_TERM = OBO + "IAO_0000118"

# properties whose values count as human-readable labels for matching
LABEL_PROPERTY_IRIS = (RDFS_LABEL, PREF_LABEL, ALT_LABEL, ALTERNATIVE_TERM)


def default_config() -> RuleConfig:
    return RuleConfig(
        foundational_namespaces={
            "BFO": (OBO + "BFO_", OBO + "bfo"),
            "DOLCE": ("http://www.loa-cnr.it/ontologies/DOLCE-Lite.owl#",),
            "UFO": ("http://purl.org/nemo/gufo#",),
            "SUMO": ("http://www.ontologyportal.org/SUMO.owl#",),
            "YAMATO": ("http://www.hozo.jp/owl/YAMATO#",),
            "OBO": (
                OBO + "IAO_", OBO + "iao",
                OBO + "OBI_", OBO + "obi",
                OBO + "RO_", OBO + "ro",
            ),
        },
        philosophical_markers=(
            MarkerEntry(
                pattern="abstract",
                style="DOLCE",
                contrast_namespaces=(OBO + "BFO_", OBO + "bfo"),
                note="a top-level Abstract class admits non-physical entities; "
                "realist top levels deliberately leave it out",
            ),
        ),
        participation_patterns=(
            ParticipationEntry(
                property_pattern="participates",
                filler_patterns=("treatment", "process", "therapy", "procedure"),
                note="existential participation in a process class marks a "
                "precision-first modelling purpose",
            ),
        ),
        boolean_datatypes=(XSD + "boolean",),
        contested_subsumptions=(
            ContestedEntry(
                sub="virus", sup="organism", category="science",
                note="viruses fall outside accepted definitions of organism; "
                "placing them under it takes a side in an open debate",
            ),
            ContestedEntry(
                sub="headache disorder", sup="disease", category="science",
                note="disorders and diseases are medically distinct categories",
            ),
            ContestedEntry(
                sub="anxiety disorder", sup="disease", category="science",
                note="disorders and diseases are medically distinct categories",
            ),
            ContestedEntry(
                sub="cough", sup="phenotype", category="science",
                note="filing symptoms under phenotype bakes in a gene-centric "
                "view of the body",
            ),
            ContestedEntry(
                sub="diarrhea", sup="phenotype", category="science",
                note="filing symptoms under phenotype bakes in a gene-centric "
                "view of the body",
            ),
            ContestedEntry(
                sub="obesity", sup="disease", category="economic",
                note="recognising a condition as a disease unlocks treatment "
                "funding; the classification tracks financial interests",
            ),
        ),
        expected_minimums=(
            MinimumEntry(
                pattern="continent", minimum=4,
                note="fewer than four continents is an omission under any "
                "geographic convention",
            ),
            MinimumEntry(
                pattern="organization", minimum=3, severity="partial",
                note="a lone pair of country-specific organisation kinds reads "
                "as unfinished coverage rather than a deliberate cut",
            ),
            MinimumEntry(
                pattern="payment method", minimum=5,
                note="payment-method lists tend to encode one region's habits; "
                "cash-less on-delivery options are routinely missing",
            ),
        ),
        loaded_term_lexicon=(
            LoadedTermEntry(
                pattern="presumptive positive", bias_type="SocioCultural",
                suggestions=("pending result", "awaiting test outcome", "under investigation"),
                note="brands statistically unlikely carriers and plays into fear "
                "of infection",
            ),
            LoadedTermEntry(
                pattern="positive", bias_type="SocioCultural",
                suggestions=("detected", "present", "infected"),
                note="disease-positive labelling carries stigma where testing "
                "status is socially marked",
            ),
            LoadedTermEntry(
                pattern="negative", bias_type="SocioCultural",
                suggestions=("not detected", "absent", "free"),
                note="counterpart of the positive label; same stigma concern",
            ),
            LoadedTermEntry(
                pattern="terrorist", bias_type="PoliticalReligious",
                suggestions=("aggrieved group",),
                note="one side's terrorist is another side's insurgent; a "
                "neutral actor term keeps the ontology reusable",
            ),
            LoadedTermEntry(
                pattern="wuhan virus", bias_type="PoliticalReligious",
                suggestions=("SARS-CoV-2",),
                note="place-branding a pathogen follows one country's political "
                "rhetoric; the scientific name is neutral",
            ),
            LoadedTermEntry(
                pattern="mild and very mild", bias_type="PoliticalReligious",
                suggestions=(),
                note="severity banding mandated by one national government "
                "rather than a clinical standard",
            ),
        ),
        sensitive_dimensions=(
            DimensionEntry(
                pattern="gender",
                known_members=("female", "male", "non-binary", "intersex"),
                note="a closed binary gender type excludes people every "
                "downstream system then cannot record",
            ),
            DimensionEntry(
                pattern="biological sex",
                known_members=("male", "female", "intersex"),
                note="recording only one sex makes the other unannotatable",
            ),
            DimensionEntry(
                pattern="family member",
                known_members=(
                    "spouse", "child", "parent", "sibling", "grandparent",
                    "household member",
                ),
                note="spouse-only family modelling encodes the nuclear-family "
                "assumption; households are composed far more variably",
                emit_as="granularity",
            ),
        ),
        thesaurus_annotation_properties=(
            PREF_LABEL,
            ALT_LABEL,
            SKOS + "broader",
            SKOS + "related",
        ),
        region_variant_lexicon=(
            VariantEntry(
                variant="drive-thru", alternates=("drive-through",),
                locales=("en-us", "en-gb"),
                note="US spelling; readers elsewhere search the long form",
            ),
            VariantEntry(
                variant="color", alternates=("colour",),
                locales=("en-us", "en-gb"),
                note="classic US/UK spelling split",
            ),
        ),
        disputed_entities=(
            MembershipEntry(
                pattern="taiwan", container="country",
                note="statehood is internationally disputed; listing it as a "
                "country takes a position",
            ),
            MembershipEntry(
                pattern="hong kong", container="country",
                note="a special administrative region, not a state; listing it "
                "as a country takes a position",
            ),
        ),
        misclassified_members=(
            MembershipEntry(
                pattern="west africa", container="country",
                note="a region of a continent, not a country",
            ),
        ),
        thresholds=Thresholds(),
    )


# ---------------------------------------------------------------------------
# Loading and validation
# ---------------------------------------------------------------------------

def _require_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"{path}: expected a string, got {type(value).__name__}")
    return value


def _require_str_list(value: Any, path: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError(f"{path}: expected a list of strings")
    return tuple(value)


def _entry(value: Any, path: str, required: dict[str, Any], optional: dict[str, Any]) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected a mapping")
    known = set(required) | set(optional)
    for key in value:
        if key not in known:
            raise ConfigError(f"{path}.{key}: unknown key")
    for key in required:
        if key not in value:
            raise ConfigError(f"{path}.{key}: missing")
    out = dict(optional)
    out.update(value)
    return out


def _parse_section(name: str, value: Any) -> Any:
    if name == "foundational_namespaces":
        if not isinstance(value, dict):
            raise ConfigError(f"{name}: expected a mapping of name to IRI prefix list")
        return {
            _require_str(k, name): _require_str_list(v, f"{name}.{k}")
            for k, v in value.items()
        }
    if name == "philosophical_markers":
        return tuple(
            MarkerEntry(
                pattern=_require_str(e["pattern"], f"{name}[{i}].pattern"),
                style=_require_str(e["style"], f"{name}[{i}].style"),
                contrast_namespaces=_require_str_list(
                    e["contrast_namespaces"], f"{name}[{i}].contrast_namespaces"
                ),
                note=_require_str(e["note"], f"{name}[{i}].note"),
            )
            for i, e in enumerate(
                _entry_list(value, name, {"pattern", "style", "contrast_namespaces", "note"}, {})
            )
        )
    if name == "participation_patterns":
        return tuple(
            ParticipationEntry(
                property_pattern=_require_str(
                    e["property_pattern"], f"{name}[{i}].property_pattern"
                ),
                filler_patterns=_require_str_list(
                    e["filler_patterns"], f"{name}[{i}].filler_patterns"
                ),
                note=_require_str(e["note"], f"{name}[{i}].note"),
            )
            for i, e in enumerate(
                _entry_list(value, name, {"property_pattern", "filler_patterns", "note"}, {})
            )
        )
    if name in ("boolean_datatypes", "thesaurus_annotation_properties"):
        return _require_str_list(value, name)
    if name == "contested_subsumptions":
        entries = _entry_list(value, name, {"sub", "sup", "category", "note"}, {})
        out = []
        for i, e in enumerate(entries):
            category = _require_str(e["category"], f"{name}[{i}].category")
            if category not in ("science", "economic"):
                raise ConfigError(f"{name}[{i}].category: must be 'science' or 'economic'")
            out.append(
                ContestedEntry(
                    sub=_require_str(e["sub"], f"{name}[{i}].sub"),
                    sup=_require_str(e["sup"], f"{name}[{i}].sup"),
                    category=category,
                    note=_require_str(e["note"], f"{name}[{i}].note"),
                )
            )
        return tuple(out)
    if name == "expected_minimums":
        entries = _entry_list(value, name, {"pattern", "minimum", "note"}, {"severity": "full"})
        out = []
        for i, e in enumerate(entries):
            if not isinstance(e["minimum"], int) or e["minimum"] < 1:
                raise ConfigError(f"{name}[{i}].minimum: expected a positive integer")
            severity = _require_str(e["severity"], f"{name}[{i}].severity")
            if severity not in ("full", "partial"):
                raise ConfigError(f"{name}[{i}].severity: must be 'full' or 'partial'")
            out.append(
                MinimumEntry(
                    pattern=_require_str(e["pattern"], f"{name}[{i}].pattern"),
                    minimum=e["minimum"],
                    note=_require_str(e["note"], f"{name}[{i}].note"),
                    severity=severity,
                )
            )
        return tuple(out)
    if name == "loaded_term_lexicon":
        entries = _entry_list(value, name, {"pattern", "bias_type", "note"}, {"suggestions": []})
        out = []
        for i, e in enumerate(entries):
            bias_type = _require_str(e["bias_type"], f"{name}[{i}].bias_type")
            if bias_type not in ("SocioCultural", "PoliticalReligious"):
                raise ConfigError(
                    f"{name}[{i}].bias_type: must be 'SocioCultural' or 'PoliticalReligious'"
                )
            out.append(
                LoadedTermEntry(
                    pattern=_require_str(e["pattern"], f"{name}[{i}].pattern"),
                    bias_type=bias_type,
                    suggestions=_require_str_list(e["suggestions"], f"{name}[{i}].suggestions"),
                    note=_require_str(e["note"], f"{name}[{i}].note"),
                )
            )
        return tuple(out)
    if name == "sensitive_dimensions":
        entries = _entry_list(
            value, name, {"pattern", "known_members", "note"}, {"emit_as": "sociocultural"}
        )
        out = []
        for i, e in enumerate(entries):
            emit_as = _require_str(e["emit_as"], f"{name}[{i}].emit_as")
            if emit_as not in ("sociocultural", "granularity"):
                raise ConfigError(
                    f"{name}[{i}].emit_as: must be 'sociocultural' or 'granularity'"
                )
            out.append(
                DimensionEntry(
                    pattern=_require_str(e["pattern"], f"{name}[{i}].pattern"),
                    known_members=_require_str_list(
                        e["known_members"], f"{name}[{i}].known_members"
                    ),
                    note=_require_str(e["note"], f"{name}[{i}].note"),
                    emit_as=emit_as,
                )
            )
        return tuple(out)
    if name == "region_variant_lexicon":
        return tuple(
            VariantEntry(
                variant=_require_str(e["variant"], f"{name}[{i}].variant"),
                alternates=_require_str_list(e["alternates"], f"{name}[{i}].alternates"),
                locales=_require_str_list(e["locales"], f"{name}[{i}].locales"),
                note=_require_str(e["note"], f"{name}[{i}].note"),
            )
            for i, e in enumerate(
                _entry_list(value, name, {"variant", "alternates", "locales", "note"}, {})
            )
        )
    if name in ("disputed_entities", "misclassified_members"):
        return tuple(
            MembershipEntry(
                pattern=_require_str(e["pattern"], f"{name}[{i}].pattern"),
                container=_require_str(e["container"], f"{name}[{i}].container"),
                note=_require_str(e["note"], f"{name}[{i}].note"),
            )
            for i, e in enumerate(_entry_list(value, name, {"pattern", "container", "note"}, {}))
        )
    if name == "thresholds":
        e = _entry(
            value,
            name,
            {},
            {
                "annotation_ratio": 3.0,
                "data_property_fraction": 0.5,
                "monolingual_min_classes": 10,
            },
        )
        if not isinstance(e["annotation_ratio"], (int, float)):
            raise ConfigError(f"{name}.annotation_ratio: expected a number")
        if not isinstance(e["data_property_fraction"], (int, float)):
            raise ConfigError(f"{name}.data_property_fraction: expected a number")
        if not isinstance(e["monolingual_min_classes"], int):
            raise ConfigError(f"{name}.monolingual_min_classes: expected an integer")
        return Thresholds(
            annotation_ratio=float(e["annotation_ratio"]),
            data_property_fraction=float(e["data_property_fraction"]),
            monolingual_min_classes=e["monolingual_min_classes"],
        )
    raise ConfigError(f"{name}: unknown key")


def _entry_list(value: Any, path: str, required: set, optional: dict) -> list[dict]:
    if not isinstance(value, list):
        raise ConfigError(f"{path}: expected a list")
    return [
        _entry(v, f"{path}[{i}]", {k: None for k in required}, dict(optional))
        for i, v in enumerate(value)
    ]


def load_config(path: Optional[str | Path] = None) -> RuleConfig:
    """Load a YAML config; every absent section keeps its default.

    ``None`` or an empty document yields the full default configuration.
    Unknown keys are errors naming the key.
    """
    if path is None:
        return default_config()
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if raw is None:
        return default_config()
    if not isinstance(raw, dict):
        raise ConfigError("top level: expected a mapping")
    base = default_config()
    sections = {f.name: getattr(base, f.name) for f in fields(RuleConfig)}
    for key, value in raw.items():
        if key not in sections:
            raise ConfigError(f"{key}: unknown key")
        sections[key] = _parse_section(key, value)
    return RuleConfig(**sections)


def _config_to_plain(config: RuleConfig) -> dict:
    def plain(value: Any) -> Any:
        if isinstance(value, tuple):
            return [plain(v) for v in value]
        if isinstance(value, dict):
            return {k: plain(v) for k, v in value.items()}
        if hasattr(value, "__dataclass_fields__"):
            return {f.name: plain(getattr(value, f.name)) for f in fields(value)}
        return value

    return {f.name: plain(getattr(config, f.name)) for f in fields(RuleConfig)}


def config_to_yaml(config: RuleConfig) -> str:
    """Dump the effective configuration; handy for seeding an override file."""
    return yaml.safe_dump(_config_to_plain(config), sort_keys=False)
