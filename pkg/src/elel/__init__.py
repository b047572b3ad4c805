"""Lexicon compiler: typed requirement lexicons, lint, derivation, and
UML class-model extraction."""

from .lexicon import (
    AttributeSpec,
    CircularityLink,
    CreatedElement,
    FormatKind,
    Lexicon,
    LexiconSymbol,
    MethodKind,
    MethodSpec,
    OccurrenceBounds,
    ParamRole,
    ParameterRef,
    ReferenceOccurrence,
    Sentence,
    Severity,
    SymbolType,
    lookup,
    resolve_references,
)
from .dsl import ParseDiagnostic, SourceDocument, parse_corpus, parse_lexicon, serialize_lexicon
from .extraction import CandidateTerm, ExtractionConfig, extract_candidates, suggest_type
from .validation import ClosureReport, LintFinding, check_closure, check_typology, lint
from .derivation import (
    DerivationTrace,
    build_circularity,
    default_metadata,
    derive_lexicon,
    derive_state,
    derive_subject_methods,
    derive_verb,
    extract_attribute_candidates,
    synthesize_accessors,
)
from .uml import ClassModel, transform
from .emitters import EmitOptions, emit_circularity_dot, emit_model_json, emit_plantuml

__version__ = "0.1.0"
