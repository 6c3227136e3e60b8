from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from ontobias.ofn import parse_file

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

CORPUS = [
    "genet_v1.ofn",
    "genet_v2.ofn",
    "mini_cido.ofn",
    "mini_codo.ofn",
    "mini_covoc.ofn",
    "dolce_excerpt.ofn",
    "bfo_excerpt.ofn",
    "purpose_patterns.ofn",
    "thesaurus_style.ofn",
    "grammar_zoo.ofn",
]

_cache: dict[str, tuple] = {}


def load_fixture(name: str):
    """Parse a corpus file once per session; errors in fixtures are bugs."""
    if name not in _cache:
        model, diagnostics = parse_file(FIXTURES / name)
        errors = [d for d in diagnostics if d.severity == "error"]
        assert not errors, f"{name}: {errors}"
        _cache[name] = (model, diagnostics)
    return _cache[name]


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
