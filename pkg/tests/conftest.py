from __future__ import annotations

from pathlib import Path

import pytest

from elel import derivation, dsl

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
LEXICON_PATH = FIXTURES / "birth_certificate.elel"
CORPUS_PATH = FIXTURES / "example1.uofd.txt"


@pytest.fixture(scope="session")
def fixture_lexicon():
    lexicon, diagnostics = dsl.parse_lexicon(LEXICON_PATH.read_text(encoding="utf-8"))
    assert diagnostics == []
    return lexicon


@pytest.fixture(scope="session")
def derived_fixture(fixture_lexicon):
    return derivation.derive_lexicon(fixture_lexicon)


@pytest.fixture(scope="session")
def fixture_corpus():
    return dsl.parse_corpus(CORPUS_PATH.read_text(encoding="utf-8"), label="example1")
