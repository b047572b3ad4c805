"""Mechanized lexicon checks: closure ratios, typology lints, link consistency.

The closure and minimal-vocabulary principles are writing principles, not
wellformedness rules, so closure shortfalls surface as warnings with the
measured ratio; structural defects (empty entries, dangling parameters,
links between symbols that never mention each other) are errors.  The
report produced here is the artifact handed to human reviewers for the
inspection and stakeholder-validation stages, which no tool can replace.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import wordlists
from .lexicon import (
    Lexicon,
    MethodKind,
    ParamRole,
    Severity,
    SymbolType,
    find_term_occurrences,
    lookup,
    normalize_term,
    resolve_references,
)

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

#: Registry of every finding the linter can emit.
RULES: dict[str, str] = {
    "CLOSURE-01": "symbol's closure ratio is below the configured threshold",
    "TYPO-01": "notion or behavioral response is empty",
    "TYPO-02": "subject/object symbol has no attributes",
    "TYPO-03": "verb symbol's notion references no subject and no object",
    "TYPO-04": "state symbol's behavior references no other state or verb",
    "TYPO-05": "object symbol has an action method with no declaring verb",
    "LINK-01": "link endpoints never reference each other in their entries",
    "REF-01": "method parameter does not resolve to an attribute code or symbol",
}


@dataclass(frozen=True)
class LintFinding:
    rule_id: str
    symbol: str
    severity: Severity
    message: str
    location: tuple[str, int] | None = None

    def __post_init__(self) -> None:
        if self.rule_id not in RULES:
            raise ValueError(f"unknown rule id {self.rule_id!r}")


@dataclass(frozen=True)
class SymbolClosure:
    referenced_words: int
    content_words: int
    ratio: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.ratio <= 1:
            raise ValueError("closure ratio must lie in [0, 1]")


@dataclass(frozen=True)
class ClosureReport:
    per_symbol: dict[str, SymbolClosure]
    foreign_words: Counter


def _content_tokens(text: str, stopwords: frozenset[str]) -> list[tuple[str, int, int]]:
    return [
        (m.group(0).lower(), m.start(), m.end())
        for m in _WORD_RE.finditer(text)
        if m.group(0).lower() not in stopwords
    ]


def check_closure(
    lexicon: Lexicon, stopwords: frozenset[str] | None = None
) -> ClosureReport:
    """Per-symbol closure ratios plus the multiset of domain-foreign words.

    A content word counts as referenced when it lies inside any
    word-boundary occurrence of another symbol's name or alias, whether or
    not that occurrence survived leftmost-longest selection; this keeps the
    coverage count monotone under symbol addition.  Foreign words are
    content words covered neither by a reference nor by the basic
    vocabulary.
    """
    stop = stopwords if stopwords is not None else wordlists.stopwords()
    basic = wordlists.basic_vocabulary() | lexicon.base_vocabulary
    per_symbol: dict[str, SymbolClosure] = {}
    foreign: Counter = Counter()

    for sym in lexicon.symbols:
        own = {normalize_term(t) for t in sym.terms()}
        other_terms = [
            term
            for other in lexicon.symbols
            if other.name != sym.name
            for term in other.terms()
            if normalize_term(term) not in own
        ]
        referenced = 0
        content = 0
        for _, _, sentence in sym.entries():
            spans = [
                span for term in other_terms
                for span in find_term_occurrences(sentence.text, term)
            ]
            for word, start, end in _content_tokens(sentence.text, stop):
                content += 1
                if any(s <= start and end <= e for s, e in spans):
                    referenced += 1
                elif word not in basic:
                    foreign[word] += 1
        ratio = Fraction(referenced, content) if content else Fraction(0)
        per_symbol[sym.name] = SymbolClosure(referenced, content, ratio)

    return ClosureReport(per_symbol=per_symbol, foreign_words=foreign)


def check_typology(lexicon: Lexicon) -> list[LintFinding]:
    """Completeness checks drawn from the per-type description heuristics."""
    resolved = resolve_references(lexicon)
    by_name = {sym.name: sym for sym in resolved.symbols}
    findings: list[LintFinding] = []

    verb_method_names = {
        normalize_term(m.name)
        for sym in resolved.symbols
        if sym.symbol_type is SymbolType.VERB
        for m in sym.methods
    }

    for sym in resolved.symbols:
        for kind, entry_list in (("notion", sym.notion), ("behavior", sym.behavior)):
            if not entry_list:
                findings.append(
                    LintFinding(
                        "TYPO-01",
                        sym.name,
                        Severity.ERROR,
                        f"{kind} of {sym.name!r} is empty",
                        location=(kind, 0),
                    )
                )

        if sym.symbol_type in (SymbolType.SUBJECT, SymbolType.OBJECT) and not sym.attributes:
            findings.append(
                LintFinding(
                    "TYPO-02",
                    sym.name,
                    Severity.WARNING,
                    f"{sym.symbol_type.value} {sym.name!r} has no attributes; "
                    "expected after derivation",
                )
            )

        if sym.symbol_type is SymbolType.VERB:
            notion_targets = {
                by_name[ref.target_symbol].symbol_type
                for sentence in sym.notion
                for ref in sentence.resolved_refs
            }
            if not notion_targets & {SymbolType.SUBJECT, SymbolType.OBJECT}:
                findings.append(
                    LintFinding(
                        "TYPO-03",
                        sym.name,
                        Severity.WARNING,
                        f"verb {sym.name!r} names neither an intervening subject "
                        "nor a manipulated object in its notion",
                    )
                )

        if sym.symbol_type is SymbolType.STATE:
            behavior_targets = {
                by_name[ref.target_symbol].symbol_type
                for sentence in sym.behavior
                for ref in sentence.resolved_refs
            }
            if not behavior_targets & {SymbolType.STATE, SymbolType.VERB}:
                findings.append(
                    LintFinding(
                        "TYPO-04",
                        sym.name,
                        Severity.WARNING,
                        f"state {sym.name!r} reaches no other state or verb "
                        "in its behavior",
                    )
                )

        if sym.symbol_type is SymbolType.OBJECT:
            for method in sym.methods:
                if method.kind in (MethodKind.ACCESSOR, MethodKind.MUTATOR):
                    continue
                if normalize_term(method.name) not in verb_method_names:
                    findings.append(
                        LintFinding(
                            "TYPO-05",
                            sym.name,
                            Severity.ERROR,
                            f"object {sym.name!r} has action {method.rendered_name()} "
                            "with no declaring verb symbol",
                        )
                    )

    return findings


def _check_parameters(lexicon: Lexicon) -> list[LintFinding]:
    all_codes = {a.code for sym in lexicon.symbols for a in sym.attributes}
    findings = []
    for sym in lexicon.symbols:
        for method in sym.methods:
            for param in method.parameters:
                if param.role is ParamRole.ATTRIBUTE_REF:
                    ok = param.target in all_codes
                else:
                    ok = lookup(lexicon, param.target) is not None
                if not ok:
                    findings.append(
                        LintFinding(
                            "REF-01",
                            sym.name,
                            Severity.ERROR,
                            f"parameter {param.target!r} of {method.rendered_name()} "
                            "does not resolve",
                        )
                    )
    return findings


def _check_links(resolved: Lexicon) -> list[LintFinding]:
    findings = []
    for link in resolved.links:
        endpoints = (
            (resolved.get(link.source), link.target),
            (resolved.get(link.target), link.source),
        )
        mentioned = False
        for sym, other in endpoints:
            if sym is None:
                continue
            for _, _, sentence in sym.entries():
                if any(
                    normalize_term(ref.target_symbol) == normalize_term(other)
                    for ref in sentence.resolved_refs
                ):
                    mentioned = True
        if not mentioned:
            findings.append(
                LintFinding(
                    "LINK-01",
                    link.source,
                    Severity.ERROR,
                    f"link {link.name!r}: {link.source!r} and {link.target!r} "
                    "never reference each other",
                )
            )
    return findings


def lint(
    lexicon: Lexicon,
    closure_threshold: Fraction = Fraction(15, 100),
    stopwords: frozenset[str] | None = None,
) -> tuple[ClosureReport, list[LintFinding]]:
    """Full check suite in a deterministic order: (symbol name, rule id)."""
    resolved = resolve_references(lexicon)
    closure = check_closure(resolved, stopwords=stopwords)
    findings = check_typology(resolved)
    findings += _check_parameters(resolved)
    findings += _check_links(resolved)
    for name, entry in closure.per_symbol.items():
        if entry.content_words and entry.ratio < closure_threshold:
            findings.append(
                LintFinding(
                    "CLOSURE-01",
                    name,
                    Severity.WARNING,
                    f"closure ratio {float(entry.ratio):.2f} below "
                    f"threshold {float(closure_threshold):.2f}",
                )
            )
    findings.sort(key=lambda f: (f.symbol, f.rule_id, f.location or ("", -1), f.message))
    return closure, findings


def has_errors(findings: list[LintFinding]) -> bool:
    return any(f.severity is Severity.ERROR for f in findings)


def report_as_json(closure: ClosureReport, findings: list[LintFinding]) -> str:
    """Canonical JSON rendering: sorted keys, 2-space indent, LF, stable bytes."""
    payload = {
        "findings": [
            {
                "rule": f.rule_id,
                "symbol": f.symbol,
                "severity": f.severity.value,
                "message": f.message,
                "location": list(f.location) if f.location else None,
            }
            for f in findings
        ],
        "closure": {
            "symbols": {
                name: {
                    "referenced_words": entry.referenced_words,
                    "content_words": entry.content_words,
                    "ratio": float(entry.ratio),
                }
                for name, entry in closure.per_symbol.items()
            },
            "foreign_words": dict(sorted(closure.foreign_words.items())),
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_as_table(closure: ClosureReport, findings: list[LintFinding]) -> str:
    lines = ["closure"]
    for name, entry in closure.per_symbol.items():
        lines.append(
            f"  {name}: {entry.referenced_words}/{entry.content_words} "
            f"referenced ({float(entry.ratio):.2f})"
        )
    if closure.foreign_words:
        foreign = ", ".join(
            f"{w} x{n}" for w, n in sorted(closure.foreign_words.items())
        )
        lines.append(f"foreign words: {foreign}")
    lines.append(f"findings ({len(findings)})")
    for f in findings:
        lines.append(f"  {f.severity.value.upper():7} {f.rule_id} {f.symbol}: {f.message}")
    return "\n".join(lines) + "\n"
