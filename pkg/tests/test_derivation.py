from __future__ import annotations

import pytest

from elel.derivation import (
    DerivationError,
    NoTriggerVerbError,
    Step,
    build_circularity,
    code_from_name,
    default_metadata,
    derive_lexicon,
    derive_state,
    derive_subject_methods,
    derive_verb,
    extract_attribute_candidates,
    render_action_name,
    synthesize_accessors,
)
from elel.lexicon import (
    AttributeSpec,
    FormatKind,
    Lexicon,
    LexiconSymbol,
    MethodKind,
    Sentence,
    SymbolType,
    resolve_references,
)


def _symbol(name, stype=SymbolType.OBJECT, notion=(), behavior=(), attributes=(), aliases=()):
    return LexiconSymbol(
        name=name,
        symbol_type=stype,
        aliases=tuple(aliases),
        notion=tuple(Sentence(s) for s in notion),
        behavior=tuple(Sentence(s) for s in behavior),
        attributes=tuple(attributes),
    )


class TestExtractAttributeCandidates:
    def test_characterized_by_enumeration(self):
        sym = _symbol(
            "Declarant",
            SymbolType.SUBJECT,
            notion=(
                "It is an entity characterized by a name, a first name, an address, "
                "and the quality of the declarant.",
            ),
        )
        lexicon = Lexicon(symbols=(sym,))
        assert extract_attribute_candidates(sym, lexicon) == [
            "name",
            "first name",
            "address",
            "quality of the declarant",
        ]

    def test_no_pattern_means_no_candidates(self):
        sym = _symbol("Form", notion=("This is a plain form for the registry.",))
        lexicon = Lexicon(symbols=(sym,))
        assert extract_attribute_candidates(sym, lexicon) == []

    def test_it_contains_pattern(self):
        sym = _symbol("Form", notion=("It contains the number of the certificate.",))
        lexicon = Lexicon(symbols=(sym,))
        assert extract_attribute_candidates(sym, lexicon) == ["number of the certificate"]

    def test_referencing_fragments_are_relations_not_attributes(self):
        sym = _symbol(
            "Form",
            notion=("It contains the birth Region, the month and the year.",),
        )
        lexicon = Lexicon(symbols=(sym, _symbol("Region")))
        assert extract_attribute_candidates(sym, lexicon) == ["month", "year"]

    def test_rejects_verb_and_state_symbols(self):
        verb = _symbol("To act", SymbolType.VERB)
        lexicon = Lexicon(symbols=(verb,))
        with pytest.raises(DerivationError):
            extract_attribute_candidates(verb, lexicon)


class TestDefaultMetadata:
    def test_year_keyword(self):
        attr = default_metadata("Year")
        assert (attr.code, attr.format, attr.size) == ("year", FormatKind.DIGIT, 4)

    def test_fallback_is_text_25(self):
        attr = default_metadata("X")
        assert (attr.code, attr.format, attr.size) == ("x", FormatKind.TEXT, 25)

    def test_date_keyword(self):
        attr = default_metadata("Birth Date")
        assert (attr.code, attr.format, attr.size) == ("birth_date", FormatKind.DATE, 8)

    def test_number_keyword(self):
        attr = default_metadata("number of the certificate")
        assert (attr.format, attr.size) == (FormatKind.DIGIT, 6)

    def test_hints_override(self):
        attr = default_metadata("Declarant", hints=(FormatKind.COMPLEX, 1))
        assert (attr.code, attr.format, attr.size) == ("declarant", FormatKind.COMPLEX, 1)

    def test_definition_capitalized(self):
        assert default_metadata("quality").definition == "Quality"

    def test_code_normalization(self):
        assert code_from_name("Place of the Certificate!") == "place_of_the_certificate"


class TestSynthesizeAccessors:
    def test_multi_word_code(self):
        attr = AttributeSpec("Month", "birth_month", "Month", FormatKind.DIGIT, 2)
        getter, setter = synthesize_accessors(attr)
        assert (getter.name, setter.name) == ("getBirthMonth", "setBirthMonth")
        assert getter.kind is MethodKind.ACCESSOR and setter.kind is MethodKind.MUTATOR
        assert getter.parameters[0].target == "birth_month"

    def test_single_word_code(self):
        attr = AttributeSpec("X", "x", "X", FormatKind.TEXT, 25)
        getter, setter = synthesize_accessors(attr)
        assert (getter.name, setter.name) == ("getX", "setX")

    def test_date_code(self):
        attr = AttributeSpec("Birth date", "birth_date", "Date", FormatKind.DATE, 8)
        getter, setter = synthesize_accessors(attr)
        assert (getter.rendered_name(), setter.rendered_name()) == (
            "getBirthDate()",
            "setBirthDate()",
        )


class TestDeriveSubjectMethods:
    def test_declare_birth(self):
        sym = _symbol(
            "Process",
            SymbolType.SUBJECT,
            behavior=("It can make it possible to declare the birth.",),
        )
        assert [m.name for m in derive_subject_methods(sym)] == ["DeclareBirth"]

    def test_counting_phrase_inserts_number(self):
        sym = _symbol(
            "Process",
            SymbolType.SUBJECT,
            behavior=(
                "It can make it possible to calculate the days between the date "
                "of the birth declaration and the date of birth.",
            ),
        )
        assert [m.name for m in derive_subject_methods(sym)] == ["CalculateNumberDays"]

    def test_empty_behavior_yields_nothing(self):
        sym = _symbol("Process", SymbolType.SUBJECT)
        assert derive_subject_methods(sym) == []

    def test_enable_us_prefix_variant(self):
        sym = _symbol(
            "Process",
            SymbolType.SUBJECT,
            behavior=("It can enable us to receive the declaration of birth.",),
        )
        assert [m.name for m in derive_subject_methods(sym)] == ["ReceiveDeclaration"]

    def test_rejects_non_subjects(self):
        with pytest.raises(DerivationError):
            derive_subject_methods(_symbol("Form", SymbolType.OBJECT))

    def test_all_methods_are_actions(self, fixture_lexicon):
        declarant = fixture_lexicon.get("Declarant")
        for method in derive_subject_methods(declarant):
            assert method.kind is MethodKind.ACTION

    def test_render_action_name_strips_articles(self):
        assert render_action_name("enter the Region of birth") == "EnterRegion"
        assert render_action_name("request a confirmation from the declarant") == (
            "RequestConfirmation"
        )


class TestDeriveVerb:
    def test_fixture_verb(self, fixture_lexicon):
        verb = fixture_lexicon.get("Issue the birth certificate")
        attributes, method = derive_verb(verb, fixture_lexicon)
        # Participants referenced in the verb's entries, as Complex/size-1.
        assert [(a.format, a.size) for a in attributes] == [(FormatKind.COMPLEX, 1)] * 2
        assert {a.code for a in attributes} == {"civil_status_officer", "declarant"}
        assert method.name == "DeliverBirthCertificate"
        assert method.kind is MethodKind.ACTION

    def test_verb_without_references_still_gets_method(self):
        verb = _symbol(
            "To archive the file",
            SymbolType.VERB,
            notion=("Something happens.",),
            behavior=("Something else happens.",),
        )
        lexicon = Lexicon(symbols=(verb,))
        attributes, method = derive_verb(verb, lexicon)
        assert attributes == []
        assert method.name == "ArchiveFile"

    def test_duplicate_mentions_yield_distinct_attributes(self):
        verb = _symbol(
            "To file the record",
            SymbolType.VERB,
            notion=("The Clerk files it. The Clerk signs it.",),
            behavior=("The Clerk archives it.",),
        )
        clerk = _symbol("Clerk", SymbolType.SUBJECT)
        lexicon = Lexicon(symbols=(verb, clerk))
        attributes, _ = derive_verb(verb, lexicon)

        # Oracle: the set of referenced subject/object names.
        resolved = resolve_references(lexicon)
        referenced = {
            ref.target_symbol
            for _, _, sentence in resolved.get(verb.name).entries()
            for ref in sentence.resolved_refs
        }
        assert referenced == {"Clerk"}
        assert [a.code for a in attributes] == ["clerk"]

    def test_rejects_non_verbs(self, fixture_lexicon):
        with pytest.raises(DerivationError):
            derive_verb(fixture_lexicon.get("Declarant"), fixture_lexicon)


class TestDeriveState:
    def test_fixture_state_inherits_trigger(self, derived_fixture):
        derived, _ = derived_fixture
        state = derived.get("Copy of the birth certificate issued")
        verb = derived.get("Issue the birth certificate")
        attributes, method = derive_state(state, derived)
        assert method.name == "DeliverBirthCertificate"
        assert method.kind is MethodKind.EVENT_TRIGGER
        assert {a.code for a in attributes} == {a.code for a in verb.attributes}

    def test_state_with_attributeless_verb(self):
        verb = _symbol(
            "To expire",
            SymbolType.VERB,
            notion=("Nothing specific.",),
            behavior=("The file is closed.",),
        )
        state = _symbol(
            "File expired",
            SymbolType.STATE,
            notion=("It is conducted by the action to expire.",),
            behavior=("The file rests.",),
        )
        lexicon = Lexicon(symbols=(verb, state))
        attributes, method = derive_state(state, lexicon)
        assert attributes == []
        assert method.name == "CloseFile"
        assert method.kind is MethodKind.EVENT_TRIGGER

    def test_two_verbs_first_referenced_wins(self):
        verb_a = _symbol("To open the case", SymbolType.VERB,
                         notion=("A clerk acts.",), behavior=("The case is opened.",))
        verb_b = _symbol("To close the case", SymbolType.VERB,
                         notion=("A clerk acts.",), behavior=("The case is closed.",))
        state = _symbol(
            "Case settled",
            SymbolType.STATE,
            notion=("It follows to open the case and then to close the case.",),
            behavior=("The case rests.",),
        )
        lexicon = Lexicon(symbols=(verb_a, verb_b, state))
        _, method = derive_state(state, lexicon)
        assert method.name == "OpenCase"

    def test_no_trigger_verb_is_an_error(self):
        state = _symbol(
            "Case settled",
            SymbolType.STATE,
            notion=("Nothing references a verb.",),
            behavior=("The case rests.",),
        )
        lexicon = Lexicon(symbols=(state,))
        with pytest.raises(NoTriggerVerbError):
            derive_state(state, lexicon)

    def test_rejects_non_states(self, fixture_lexicon):
        with pytest.raises(DerivationError):
            derive_state(fixture_lexicon.get("Declarant"), fixture_lexicon)


class TestBuildCircularity:
    def test_single_direction_reference(self):
        lexicon = Lexicon(
            symbols=(
                _symbol("Declarant", SymbolType.SUBJECT, notion=("It provides the Region.",)),
                _symbol("Region"),
            )
        )
        links = build_circularity(lexicon)
        assert [(l.source, l.target) for l in links] == [("Declarant", "Region")]
        assert links[0].name == "Declarant_Region"
        assert links[0].elements[0].occurrence.render() == "0..*"

    def test_self_mentions_make_no_links(self):
        lexicon = Lexicon(
            symbols=(_symbol("Form", notion=("A form about the form itself.",)),)
        )
        assert build_circularity(lexicon) == []

    def test_fixture_matches_pairwise_oracle(self, fixture_lexicon):
        links = build_circularity(fixture_lexicon)

        # Oracle: every unordered pair with at least one cross-mention.
        resolved = resolve_references(fixture_lexicon)
        expected_pairs = set()
        for sym in resolved.symbols:
            for _, _, sentence in sym.entries():
                for ref in sentence.resolved_refs:
                    expected_pairs.add(frozenset((sym.name, ref.target_symbol)))
        assert {frozenset((l.source, l.target)) for l in links} == expected_pairs
        assert len(links) == len(expected_pairs)

    def test_authored_links_win_over_derived(self, fixture_lexicon):
        links = build_circularity(fixture_lexicon)
        by_pair = {frozenset((l.source, l.target)): l for l in links}
        declared = by_pair[frozenset(("Declarant", "Birth certificate declaration form"))]
        assert declared.name == "fills_in"
        assert declared.elements[0].occurrence.render() == "1..1"
        assert declared.elements[1].occurrence.render() == "0..*"


class TestDeriveLexicon:
    def test_idempotent_on_derived_output(self, derived_fixture):
        derived, _ = derived_fixture
        again, traces = derive_lexicon(derived)
        assert again == derived
        artifact_traces = [t for t in traces if not t.produced.startswith("warning")]
        assert artifact_traces == []

    def test_trace_per_derived_artifact(self, fixture_lexicon, derived_fixture):
        derived, traces = derived_fixture
        added_attrs = sum(
            len(d.attributes) - len(o.attributes)
            for o, d in zip(fixture_lexicon.symbols, derived.symbols)
        )
        added_methods = sum(
            len(d.methods) - len(o.methods)
            for o, d in zip(fixture_lexicon.symbols, derived.symbols)
        )
        added_links = len(derived.links) - len(fixture_lexicon.links)
        artifact_traces = [t for t in traces if not t.produced.startswith("warning")]
        assert len(artifact_traces) == added_attrs + added_methods + added_links

    def test_objects_get_accessor_pairs(self, derived_fixture):
        derived, _ = derived_fixture
        for sym in derived.symbols:
            if sym.symbol_type is not SymbolType.OBJECT:
                continue
            accessors = [
                m for m in sym.methods
                if m.kind in (MethodKind.ACCESSOR, MethodKind.MUTATOR)
            ]
            assert len(accessors) == 2 * len(sym.attributes)

    def test_subjects_get_no_accessors(self, derived_fixture):
        derived, _ = derived_fixture
        for sym in derived.symbols:
            if sym.symbol_type is SymbolType.SUBJECT:
                kinds = {m.kind for m in sym.methods}
                assert MethodKind.ACCESSOR not in kinds
                assert MethodKind.MUTATOR not in kinds

    def test_steps_recorded(self, derived_fixture):
        _, traces = derived_fixture
        steps = {t.step for t in traces}
        assert {Step.S5, Step.S6, Step.S8, Step.S9, Step.S10, Step.S13} <= steps
