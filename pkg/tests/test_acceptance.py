"""Acceptance suite: one test per criterion, each printing a pass line.

Criteria 1-5, 7 and 8 are golden checks against the bundled
birth-certificate fixture; criterion 6 is the property-based group, run at
200 generated cases per suite with a shared 30-second budget.
"""

from __future__ import annotations

import functools
import json
import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings

from elel.cli import main
from elel.derivation import derive_lexicon, synthesize_accessors
from elel.dsl import parse_corpus, parse_lexicon, serialize_lexicon
from elel.extraction import (
    ExtractionConfig,
    extract_candidates,
    suggest_type,
    tokenize,
)
from elel.lexicon import (
    Lexicon,
    LexiconSymbol,
    MethodKind,
    SymbolType,
    resolve_references,
)
from elel.uml import (
    PropertyKind,
    rule1_classes,
    rule2_rule3_populate,
    rule4_rule5_associations,
    ClassModel,
    transform,
)
from elel.validation import check_closure

from tests.conftest import CORPUS_PATH, LEXICON_PATH
from tests.strategies import corpora, lexicons, words

CASE_STUDY_CLASSES = {
    "Declarant",
    "Process of issuing birth certificate",
    "Civil Status Officer",
    "Municipality",
    "District",
    "Birth certificate declaration form",
    "Newborn",
    "Region",
    "Newborn's mother",
    "Newborn's father",
}

FORM_ATTRIBUTES = {
    ("num_cert_birth", "Digit", 6),
    ("birth_month", "Digit", 2),
    ("birth_year", "Digit", 4),
    ("birth_hour", "Digit", 2),
    ("birth_min", "Digit", 2),
    ("birth_day", "Digit", 2),
    ("birth_date", "Date", 8),
}

# Accessor names follow get/set + CamelCase(code) mechanically; for
# num_cert_birth that rule pins getNumCertBirth/setNumCertBirth.
FORM_ACCESSORS = {
    "getNumCertBirth()", "setNumCertBirth()",
    "getBirthMonth()", "setBirthMonth()",
    "getBirthYear()", "setBirthYear()",
    "getBirthHour()", "setBirthHour()",
    "getBirthMin()", "setBirthMin()",
    "getBirthDay()", "setBirthDay()",
    "getBirthDate()", "setBirthDate()",
}

PROCESS_METHODS = {
    "DeclareBirth()",
    "ReceiveDeclaration()",
    "CalculateNumberDays()",
    "RequestConfirmation()",
    "ConfirmDeclaration()",
    "RegisterDeclaration()",
    "MakeBirthCertificate()",
    "DeliverBirthCertificate()",
}

DECLARANT_METHODS = {
    "EnterRegion()",
    "EnterDistrict()",
    "EnterMunicipality()",
    "EnterNeighborhood()",
    "EnterNewbornInfo()",
    "EnterFatherInfo()",
    "EnterMotherInfo()",
    "EnterDeclarantInfo()",
}

_PROPERTY_SECONDS: list[float] = []

_suite = settings(
    max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            _PROPERTY_SECONDS.append(time.perf_counter() - start)

    return wrapper


def _passed(criterion: str, detail: str) -> None:
    print(f"[acceptance] {criterion}: PASS ({detail})")


@pytest.fixture(scope="module")
def pipeline_outputs(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("pipeline")
    start = time.perf_counter()
    code = main(["pipeline", str(LEXICON_PATH), "--out", str(out_dir)])
    elapsed = time.perf_counter() - start
    assert code == 0
    return out_dir, elapsed


def test_criterion_1_class_set_reproduction(pipeline_outputs):
    out_dir, elapsed = pipeline_outputs
    payload = json.loads((out_dir / "model.json").read_text(encoding="utf-8"))
    names = {c["name"] for c in payload["classes"]}
    assert names == CASE_STUDY_CLASSES
    assert len(payload["classes"]) == 10
    assert elapsed < 1.0
    _passed("criterion 1", f"10 classes, pipeline ran in {elapsed:.3f}s")


@pytest.fixture(scope="module")
def fixture_model():
    lexicon, diagnostics = parse_lexicon(LEXICON_PATH.read_text(encoding="utf-8"))
    assert diagnostics == []
    derived, _ = derive_lexicon(lexicon)
    return transform(derived)


def test_criterion_2_attribute_table_reproduction(fixture_model):
    cls = fixture_model.get("Birth certificate declaration form")
    data = {
        (p.name, p.format.value, p.size)
        for p in cls.properties
        if p.kind is PropertyKind.DATA
    }
    assert data == FORM_ATTRIBUTES
    _passed("criterion 2", "7 exact (code, format, size) triples incl. Digit-normalized day")


def test_criterion_3_accessor_synthesis(fixture_model):
    cls = fixture_model.get("Birth certificate declaration form")
    names = [op.name for op in cls.operations]
    assert len(names) == 14
    assert set(names) == FORM_ACCESSORS
    assert {"getBirthMonth()", "setBirthMonth()", "getBirthDate()", "setBirthDate()"} <= set(names)
    _passed("criterion 3", "14 get/set operations from the mechanical naming rule")


def test_criterion_4_subject_methods(fixture_model):
    process = fixture_model.get("Process of issuing birth certificate")
    declarant = fixture_model.get("Declarant")
    assert {op.name for op in process.operations} == PROCESS_METHODS
    assert {op.name for op in declarant.operations} == DECLARANT_METHODS
    _passed("criterion 4", "8 process methods and 8 Enter*() declarant methods")


def test_criterion_5_verb_and_state_derivation():
    lexicon, _ = parse_lexicon(LEXICON_PATH.read_text(encoding="utf-8"))
    derived, _ = derive_lexicon(lexicon)
    verb = derived.get("Issue the birth certificate")
    state = derived.get("Copy of the birth certificate issued")

    assert [(a.format.value, a.size) for a in verb.attributes] == [("Complex", 1)] * 3
    assert {a.code for a in verb.attributes} == {
        "copy_birth_cert",
        "declarant",
        "civ_stat_officer",
    }
    verb_methods = [m for m in verb.methods if m.kind is MethodKind.ACTION]
    assert [m.rendered_name() for m in verb_methods] == ["DeliverBirthCertificate()"]

    assert {a.code for a in state.attributes} == {a.code for a in verb.attributes}
    assert [(a.format.value, a.size) for a in state.attributes] == [("Complex", 1)] * 3
    state_methods = [m for m in state.methods if m.kind is MethodKind.EVENT_TRIGGER]
    assert [m.rendered_name() for m in state_methods] == ["DeliverBirthCertificate()"]
    _passed("criterion 5", "verb: 3 Complex/1 attrs + DeliverBirthCertificate(); state inherits")


# --- Criterion 6: property suites (>= 200 generated cases each) -------------


@_timed
@_suite
@given(lexicons())
def test_criterion_6a_round_trip_identity(lexicon):
    text = serialize_lexicon(lexicon)
    reparsed, diagnostics = parse_lexicon(text)
    assert [d for d in diagnostics if d.severity.value == "error"] == []
    assert reparsed == lexicon


@_timed
@_suite
@given(lexicons())
def test_criterion_6b_resolution_idempotent_and_disjoint(lexicon):
    once = resolve_references(lexicon)
    assert resolve_references(once) == once
    for sym in once.symbols:
        for _, _, sentence in sym.entries():
            cursor = 0
            for ref in sentence.resolved_refs:
                assert ref.span_start >= cursor
                cursor = ref.span_end
                assert sentence.text[ref.span_start : ref.span_end] == ref.matched_text


@_timed
@_suite
@given(lexicons(max_symbols=4), words)
def test_criterion_6c_closure_bounds_and_monotonicity(lexicon, extra_word):
    report = check_closure(lexicon)
    for entry in report.per_symbol.values():
        assert Fraction(0) <= entry.ratio <= Fraction(1)

    new_name = f"zz {extra_word}"
    taken = {s.name.casefold() for s in lexicon.symbols} | {
        a.casefold() for s in lexicon.symbols for a in s.aliases
    }
    assume(new_name.casefold() not in taken)
    grown = Lexicon(
        symbols=(
            *lexicon.symbols,
            LexiconSymbol(name=new_name, symbol_type=SymbolType.OBJECT),
        ),
        links=lexicon.links,
    )
    after = check_closure(grown)
    for name, entry in report.per_symbol.items():
        assert after.per_symbol[name].referenced_words >= entry.referenced_words


@_timed
@_suite
@given(lexicons(max_symbols=4))
def test_criterion_6d_transform_invariants(lexicon):
    derived, _ = derive_lexicon(lexicon)
    model = ClassModel(classes=tuple(rule1_classes(derived)))
    model = rule2_rule3_populate(model, derived)
    model = rule4_rule5_associations(model, derived)

    classy = [
        s for s in derived.symbols
        if s.symbol_type in (SymbolType.SUBJECT, SymbolType.OBJECT)
    ]
    assert len(model.classes) == len(classy)

    for cls in model.classes:
        sym = derived.get(cls.origin)
        assert sym.symbol_type in (SymbolType.SUBJECT, SymbolType.OBJECT)
        expected = sorted((a.code, a.format, a.size) for a in sym.attributes)
        actual = sorted(
            (p.name, p.format, p.size)
            for p in cls.properties
            if p.kind is PropertyKind.DATA
        )
        assert actual == expected
        assert [op.name for op in cls.operations] == [
            m.rendered_name() for m in sym.methods
        ]
        for prop in cls.properties:
            if prop.kind is PropertyKind.ASSOCIATION_END:
                assert " " not in prop.name

    end_count = sum(
        1
        for cls in model.classes
        for p in cls.properties
        if p.kind is PropertyKind.ASSOCIATION_END
    )
    assert end_count == 2 * len(model.associations)


@_timed
@_suite
@given(lexicons(max_symbols=4))
def test_criterion_6e_accessor_pairing(lexicon):
    derived, _ = derive_lexicon(lexicon)
    for sym in derived.symbols:
        if sym.symbol_type is not SymbolType.OBJECT:
            continue
        accessors = [
            m for m in sym.methods
            if m.kind in (MethodKind.ACCESSOR, MethodKind.MUTATOR)
        ]
        assert len(accessors) == 2 * len(sym.attributes)
        expected = {
            accessor.name
            for attr in sym.attributes
            for accessor in synthesize_accessors(attr)
        }
        assert {m.name for m in accessors} == expected


@_timed
@_suite
@given(corpora())
def test_criterion_6f_frequencies_match_window_oracle(docs):
    config = ExtractionConfig()
    candidates = extract_candidates(docs, config)

    def oracle(phrase: str) -> int:
        target = phrase.split()
        total = 0
        for doc in docs:
            for sentence in doc.sentences:
                tokens = tokenize(sentence)
                for i in range(len(tokens) - len(target) + 1):
                    if tokens[i : i + len(target)] == target:
                        total += 1
        return total

    for candidate in candidates:
        assert candidate.frequency == oracle(candidate.phrase)
        head, tail = candidate.phrase.split()[0], candidate.phrase.split()[-1]
        assert head not in config.stopwords and tail not in config.stopwords
    scores = [(-c.score, c.phrase) for c in candidates]
    assert scores == sorted(scores)


def test_criterion_6_time_budget():
    total = sum(_PROPERTY_SECONDS)
    assert len(_PROPERTY_SECONDS) >= 6
    assert total < 30.0
    _passed("criterion 6", f"6 property suites x 200 cases in {total:.1f}s")


def test_criterion_7_pipeline_determinism(tmp_path):
    first_dir = tmp_path / "first"
    second_dir = tmp_path / "second"
    assert main(["pipeline", str(LEXICON_PATH), "--out", str(first_dir)]) == 0
    assert main(["pipeline", str(LEXICON_PATH), "--out", str(second_dir)]) == 0
    for name in ("model.json", "model.puml", "circularity.dot"):
        assert (first_dir / name).read_bytes() == (second_dir / name).read_bytes()
    _passed("criterion 7", "model.json/model.puml/circularity.dot byte-identical")


def test_criterion_8_term_extraction_sanity():
    corpus = parse_corpus(CORPUS_PATH.read_text(encoding="utf-8"), label="example1")
    candidates = extract_candidates([corpus])
    top = candidates[:10]
    by_phrase = {c.phrase: c for c in top}
    assert "civil status officer" in by_phrase
    assert "birth certificate" in by_phrase
    assert suggest_type(by_phrase["civil status officer"], [corpus]) is SymbolType.SUBJECT
    assert suggest_type(by_phrase["birth certificate"], [corpus]) is SymbolType.OBJECT
    _passed("criterion 8", "both terms in the top 10 with subject/object suggestions")
