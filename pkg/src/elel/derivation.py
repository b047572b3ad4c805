"""Mechanized construction steps: attribute extraction, accessor synthesis,
method derivation for subjects/verbs/states, and circularity-link building.

Derivation never overwrites authored content: attributes and methods
already present on a symbol are kept, and only missing pieces (matched by
name or code) are added, so the tool assists the human authoring stages
instead of replacing them.  Every artifact added here is recorded in a
trace for audit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum

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
    SymbolType,
    normalize_term,
    resolve_references,
)


class DerivationError(ValueError):
    """A derivation step was applied to a symbol of the wrong type."""


class NoTriggerVerbError(DerivationError):
    """A state symbol's notion references no verb symbol."""


class Step(Enum):
    S5 = "S5"
    S6 = "S6"
    S7 = "S7"
    S8 = "S8"
    S9 = "S9"
    S10 = "S10"
    S13 = "S13"


@dataclass(frozen=True)
class DerivationTrace:
    symbol: str
    step: Step
    produced: str
    source_entry: tuple[str, int] | None = None


# Notion phrasings that introduce a characteristics enumeration.
CHARACTERIZATION_PATTERNS = (
    "characterized by",
    "it is made up of",
    "is made up of",
    "made up of",
    "it consists of",
    "consists of",
    "it contains",
)

# Scaffolding that precedes the actual verb phrase in behavioral responses.
ENABLEMENT_PREFIXES = (
    "it can make it possible to",
    "it makes it possible to",
    "it must make it possible to",
    "it can make possible to",
    "it can enable us to",
    "it enables us to",
    "it is possible to",
)

_ARTICLES = frozenset({"a", "an", "the"})
_PARTICLES = frozenset({"in", "out", "up", "down", "off"})
_OBJECT_STOP_WORDS = frozenset(
    "of to from in on at with by for between into during under over through "
    "after before about against that which who whom whose where when and or than".split()
)
_COUNTING_VERBS = frozenset({"calculate", "count", "compute"})

# Past participle -> base form for the common verbs of this register; the
# suffix heuristic below covers the rest approximately.
_PARTICIPLE_LEMMAS = {
    "delivered": "deliver",
    "issued": "issue",
    "received": "receive",
    "made": "make",
    "done": "do",
    "given": "give",
    "taken": "take",
    "written": "write",
    "fixed": "fix",
    "filled": "fill",
    "prepared": "prepare",
    "registered": "register",
    "declared": "declare",
    "confirmed": "confirm",
    "completed": "complete",
    "conducted": "conduct",
    "signed": "sign",
    "entered": "enter",
    "requested": "request",
    "calculated": "calculate",
    "provided": "provide",
    "validated": "validate",
    "verified": "verify",
    "sent": "send",
    "created": "create",
    "recorded": "record",
    "opened": "open",
    "closed": "close",
    "archived": "archive",
    "managed": "manage",
    "stored": "store",
    "named": "name",
    "moved": "move",
    "saved": "save",
    "produced": "produce",
    "charged": "charge",
    "updated": "update",
    "noted": "note",
    "placed": "place",
    "used": "use",
    "shared": "share",
    "changed": "change",
    "removed": "remove",
    "approved": "approve",
    "filed": "file",
    "stated": "state",
    "dated": "date",
}

_AUX_PARTICIPLE_RE = re.compile(r"\b(is|are|was|were)\s+([A-Za-z]+)")


def code_from_name(name: str) -> str:
    """Lowercase identifier: non-alphanumeric runs collapse to single underscores."""
    code = re.sub(r"[^a-z0-9]+", "_", name.lower()).strip("_")
    while code and not code[0].isalpha():
        code = code[1:].lstrip("_")
    return code or "attr"


def default_metadata(
    attribute_name: str, hints: tuple[FormatKind, int] | None = None
) -> AttributeSpec:
    """Attribute spec with code/definition/format/size deduced from the name.

    Keyword defaults: names containing "date" become (Date, 8); counting
    words (number/num/year/month/day/hour/minute) become Digit with a
    keyword-specific size; everything else is (Text, 25).
    """
    if not attribute_name.strip():
        raise ValueError("attribute name must be non-empty")
    name = attribute_name.strip()
    lowered = name.lower()
    if hints is not None:
        fmt, size = hints
    elif "date" in lowered:
        fmt, size = FormatKind.DATE, 8
    else:
        fmt, size = FormatKind.TEXT, 25
        for keyword, digit_size in (
            ("number", 6),
            ("num", 6),
            ("year", 4),
            ("month", 2),
            ("day", 2),
            ("hour", 2),
            ("minute", 2),
        ):
            if keyword in lowered:
                fmt, size = FormatKind.DIGIT, digit_size
                break
    definition = name[0].upper() + name[1:]
    return AttributeSpec(name, code_from_name(name), definition, fmt, size)


def _camel_from_code(code: str) -> str:
    return "".join(part.capitalize() for part in code.split("_") if part)


def synthesize_accessors(attr: AttributeSpec) -> tuple[MethodSpec, MethodSpec]:
    """The get/set method pair for one attribute."""
    camel = _camel_from_code(attr.code)
    param = (ParameterRef(attr.code, ParamRole.ATTRIBUTE_REF),)
    return (
        MethodSpec(f"get{camel}", MethodKind.ACCESSOR, param),
        MethodSpec(f"set{camel}", MethodKind.MUTATOR, param),
    )


def _cap(token: str) -> str:
    return token[:1].upper() + token[1:]


def _clean_token(token: str) -> str:
    return token.strip(".,;:()'\"!?")


def render_action_name(clause: str, third_person: bool = False) -> str:
    """UpperCamelCase verb+object name for a behavior clause.

    The object noun phrase stops at the first preposition or subordinator,
    articles are dropped, and a bare plural object of a counting verb gets
    "Number" prepended ("calculate the days" -> CalculateNumberDays).
    """
    clause = clause.split(",")[0].strip().rstrip(".")
    tokens = [t for t in (_clean_token(tok) for tok in clause.split()) if t]
    if not tokens:
        return ""
    verb = tokens[0].lower()
    if third_person and verb.endswith("s") and not verb.endswith("ss") and len(verb) > 3:
        verb = verb[:-1]
    rest = tokens[1:]
    if rest and rest[0].lower() in _PARTICLES:
        rest = rest[1:]
    obj: list[str] = []
    for token in rest:
        low = token.lower()
        if low in _OBJECT_STOP_WORDS:
            break
        if low in _ARTICLES:
            continue
        obj.append(token)
    if (
        verb in _COUNTING_VERBS
        and obj
        and obj[0].lower().endswith("s")
        and not obj[0].lower().startswith("number")
    ):
        obj.insert(0, "number")
    return _cap(verb) + "".join(_cap(t) for t in obj)


def _strip_enablement(text: str, prefixes: tuple[str, ...]) -> tuple[str, bool]:
    """Remainder after enablement scaffolding, plus whether the verb is 3rd person."""
    lowered = text.lower()
    for prefix in sorted(prefixes, key=len, reverse=True):
        if lowered.startswith(prefix + " "):
            return text[len(prefix) + 1 :], False
    if lowered.startswith("it "):
        return text[3:], True
    return text, True


def _characterization_fragments(sentence) -> list[tuple[str, int, int]]:
    """(fragment, start, end) pieces of the characteristics enumeration, if any."""
    lowered = sentence.text.lower()
    best: tuple[int, int] | None = None
    for pattern in CHARACTERIZATION_PATTERNS:
        idx = lowered.find(pattern)
        if idx < 0:
            continue
        end = idx + len(pattern)
        if best is None or idx < best[0] or (idx == best[0] and end > best[1]):
            best = (idx, end)
    if best is None:
        return []
    predicate_start = best[1]
    fragments: list[tuple[str, int, int]] = []
    cursor = predicate_start
    for sep in re.finditer(r",|;|\band\b", sentence.text[predicate_start:]):
        frag_start = cursor
        frag_end = predicate_start + sep.start()
        fragments.append((sentence.text[frag_start:frag_end], frag_start, frag_end))
        cursor = predicate_start + sep.end()
    fragments.append((sentence.text[cursor:], cursor, len(sentence.text)))

    cleaned: list[tuple[str, int, int]] = []
    for frag, start, end in fragments:
        stripped = frag.strip().rstrip(".").strip()
        if not stripped:
            continue
        offset = frag.find(stripped)
        cleaned.append((stripped, start + offset, start + offset + len(stripped)))
    return cleaned


def _strip_articles(fragment: str) -> str:
    tokens = fragment.split()
    while tokens and tokens[0].lower() in _ARTICLES:
        tokens = tokens[1:]
    return " ".join(tokens)


def _extract_with_sources(symbol: LexiconSymbol) -> list[tuple[str, int]]:
    seen: set[str] = set()
    out: list[tuple[str, int]] = []
    for index, sentence in enumerate(symbol.notion):
        for fragment, start, end in _characterization_fragments(sentence):
            if any(
                ref.span_start < end and ref.span_end > start
                for ref in sentence.resolved_refs
            ):
                continue  # mentions another symbol: a relation, not an attribute
            name = _strip_articles(fragment)
            if not name or normalize_term(name) in seen:
                continue
            seen.add(normalize_term(name))
            out.append((name, index))
    return out


def extract_attribute_candidates(symbol: LexiconSymbol, lexicon: Lexicon) -> list[str]:
    """Attribute names read off the symbol's characterization sentences.

    Fragments that reference another symbol are relations and are skipped;
    the rest are returned article-trimmed, in textual order, deduplicated.
    Only subject and object symbols have extractable characteristics.
    """
    if symbol.symbol_type not in (SymbolType.SUBJECT, SymbolType.OBJECT):
        raise DerivationError(
            f"attribute extraction applies to subjects/objects, not {symbol.symbol_type.value}"
        )
    resolved = resolve_references(lexicon)
    target = resolved.get(symbol.name)
    if target is None:
        raise DerivationError(f"symbol {symbol.name!r} is not in the lexicon")
    return [name for name, _ in _extract_with_sources(target)]


def derive_subject_methods(
    symbol: LexiconSymbol, prefixes: tuple[str, ...] = ENABLEMENT_PREFIXES
) -> list[MethodSpec]:
    """One action method per behavioral-response entry of a subject."""
    if symbol.symbol_type is not SymbolType.SUBJECT:
        raise DerivationError("subject-method derivation applies to subjects only")
    methods: list[MethodSpec] = []
    for sentence in symbol.behavior:
        clause, third_person = _strip_enablement(sentence.text.strip(), prefixes)
        name = render_action_name(clause, third_person=third_person)
        if name:
            methods.append(MethodSpec(name, MethodKind.ACTION))
    return methods


def _lemmatize_participle(word: str) -> str:
    low = word.lower()
    if low in _PARTICIPLE_LEMMAS:
        return _PARTICIPLE_LEMMAS[low]
    if low.endswith("ied"):
        return low[:-3] + "y"
    if low.endswith("ed"):
        stem = low[:-2]
        if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
            return stem[:-1]
        # Letters that do not end bare English verbs: the -e was dropped.
        if stem and stem[-1] in "vucg":
            return stem + "e"
        return stem
    return low


def _passive_method_name(symbol: LexiconSymbol) -> str | None:
    """Method name from the first "<np> is <participle>" statement, if any."""
    for sentence in (*symbol.behavior, *symbol.notion):
        for match in _AUX_PARTICIPLE_RE.finditer(sentence.text):
            participle = match.group(2).lower()
            if participle not in _PARTICIPLE_LEMMAS and not participle.endswith("ed"):
                continue
            np_tokens = [
                t for t in (_clean_token(tok) for tok in sentence.text[: match.start()].split()) if t
            ]
            while np_tokens and np_tokens[0].lower() in _ARTICLES:
                np_tokens = np_tokens[1:]
            obj: list[str] = []
            for token in np_tokens:
                if token.lower() in _OBJECT_STOP_WORDS:
                    break
                if token.lower() in _ARTICLES:
                    continue
                obj.append(token)
            verb = _lemmatize_participle(participle)
            return _cap(verb) + "".join(_cap(t) for t in obj)
    return None


def _verb_fallback_name(symbol: LexiconSymbol) -> str:
    name = symbol.name.strip()
    if name.lower().startswith("to "):
        name = name[3:]
    return render_action_name(name)


def derive_verb(
    symbol: LexiconSymbol, lexicon: Lexicon
) -> tuple[list[AttributeSpec], MethodSpec]:
    """Participants become attributes, the verb's event becomes its method.

    Each distinct subject/object symbol referenced in the verb's entries
    yields one Complex/size-1 attribute; the method name comes from the
    verb's own passive event statement when present, else from the symbol
    name.
    """
    if symbol.symbol_type is not SymbolType.VERB:
        raise DerivationError("verb derivation applies to verbs only")
    resolved = resolve_references(lexicon)
    target = resolved.get(symbol.name)
    if target is None:
        raise DerivationError(f"symbol {symbol.name!r} is not in the lexicon")

    participants: list[str] = []
    for _, _, sentence in target.entries():
        for ref in sentence.resolved_refs:
            other = resolved.get(ref.target_symbol)
            if other is None or other.symbol_type not in (
                SymbolType.SUBJECT,
                SymbolType.OBJECT,
            ):
                continue
            if other.name not in participants:
                participants.append(other.name)

    attributes = [
        default_metadata(name, hints=(FormatKind.COMPLEX, 1)) for name in participants
    ]
    method_name = _passive_method_name(target) or _verb_fallback_name(target)
    method = MethodSpec(
        method_name,
        MethodKind.ACTION,
        tuple(ParameterRef(a.code, ParamRole.ATTRIBUTE_REF) for a in attributes),
    )
    return attributes, method


def trigger_verbs(symbol: LexiconSymbol, lexicon: Lexicon) -> list[str]:
    """Verb symbols referenced in a state's notion, in textual order."""
    resolved = resolve_references(lexicon)
    target = resolved.get(symbol.name)
    if target is None:
        raise DerivationError(f"symbol {symbol.name!r} is not in the lexicon")
    verbs: list[str] = []
    for sentence in target.notion:
        for ref in sentence.resolved_refs:
            other = resolved.get(ref.target_symbol)
            if other is not None and other.symbol_type is SymbolType.VERB:
                if other.name not in verbs:
                    verbs.append(other.name)
    return verbs


def derive_state(
    symbol: LexiconSymbol, lexicon: Lexicon
) -> tuple[list[AttributeSpec], MethodSpec]:
    """A state inherits the triggering verb's method (as an event trigger)
    and copies of that verb's attributes.

    The triggering verb is the first verb symbol referenced in the state's
    notion; when several are referenced, the first one wins.
    """
    if symbol.symbol_type is not SymbolType.STATE:
        raise DerivationError("state derivation applies to states only")
    verbs = trigger_verbs(symbol, lexicon)
    if not verbs:
        raise NoTriggerVerbError(
            f"state {symbol.name!r} references no verb symbol in its notion"
        )
    trigger = lexicon.get(verbs[0])
    assert trigger is not None
    if trigger.attributes or any(m.kind is MethodKind.ACTION for m in trigger.methods):
        attributes = list(trigger.attributes)
        action = next(
            (m for m in trigger.methods if m.kind is MethodKind.ACTION), None
        )
        if action is None:
            _, action = derive_verb(trigger, lexicon)
    else:
        derived_attrs, action = derive_verb(trigger, lexicon)
        attributes = derived_attrs
    method = replace(action, kind=MethodKind.EVENT_TRIGGER)
    return attributes, method


def _link_name(source: str, target: str) -> str:
    return f"{source}_{target}".replace(" ", "_")


def build_circularity(lexicon: Lexicon) -> list[CircularityLink]:
    """Step-13 links: authored links first, then one derived link per
    unordered symbol pair whose entries cross-reference.

    The derived link's source is the symbol whose entries first produce the
    reference, scanning symbols in lexicon order; authored links win over
    derived ones for the same pair.  Bounds default to [0..*].
    """
    resolved = resolve_references(lexicon)
    covered: set[frozenset[str]] = set()
    authored: list[CircularityLink] = []
    for link in lexicon.links:
        pair = frozenset((normalize_term(link.source), normalize_term(link.target)))
        if pair in covered:
            continue
        covered.add(pair)
        authored.append(link)
    derived: list[CircularityLink] = []
    for sym in resolved.symbols:
        for _, _, sentence in sym.entries():
            for ref in sentence.resolved_refs:
                pair = frozenset(
                    (normalize_term(sym.name), normalize_term(ref.target_symbol))
                )
                if len(pair) < 2 or pair in covered:
                    continue
                covered.add(pair)
                target = resolved.get(ref.target_symbol)
                assert target is not None
                derived.append(
                    CircularityLink(
                        name=_link_name(sym.name, target.name),
                        source=sym.name,
                        target=target.name,
                        elements=(
                            CreatedElement(sym.name, sym.name, OccurrenceBounds(0, None)),
                            CreatedElement(target.name, target.name, OccurrenceBounds(0, None)),
                        ),
                    )
                )
    return authored + derived


def _attr_matches(existing: LexiconSymbol, candidate_name: str) -> bool:
    key = normalize_term(candidate_name)
    code = code_from_name(candidate_name)
    return any(
        normalize_term(a.name) == key or a.code == code for a in existing.attributes
    )


def derive_lexicon(lexicon: Lexicon) -> tuple[Lexicon, list[DerivationTrace]]:
    """Run every mechanical construction step over the whole lexicon.

    Returns the enriched lexicon (attributes, methods, merged links) plus
    one trace per derived artifact.  Pure and deterministic: authored
    content is never modified, reruns add nothing new.
    """
    resolved = resolve_references(lexicon)
    traces: list[DerivationTrace] = []
    working: dict[str, LexiconSymbol] = {s.name: s for s in resolved.symbols}

    def describe_attr(attr: AttributeSpec) -> str:
        return (
            f'attribute "{attr.name}" (code={attr.code}, '
            f"format={attr.format.value}, size={attr.size})"
        )

    # Subjects and objects: characteristics become attributes, objects get
    # accessors, subjects get one action method per behavior entry.
    for sym in resolved.symbols:
        if sym.symbol_type not in (SymbolType.SUBJECT, SymbolType.OBJECT):
            continue
        current = working[sym.name]
        step = Step.S5 if sym.symbol_type is SymbolType.SUBJECT else Step.S6
        for name, sentence_index in _extract_with_sources(current):
            if _attr_matches(current, name):
                continue
            attr = default_metadata(name)
            current = replace(current, attributes=(*current.attributes, attr))
            traces.append(
                DerivationTrace(sym.name, step, describe_attr(attr), ("notion", sentence_index))
            )
        if sym.symbol_type is SymbolType.OBJECT:
            method_names = {m.name for m in current.methods}
            for attr in current.attributes:
                for accessor in synthesize_accessors(attr):
                    if accessor.name in method_names:
                        continue
                    method_names.add(accessor.name)
                    current = replace(current, methods=(*current.methods, accessor))
                    traces.append(
                        DerivationTrace(
                            sym.name, Step.S6, f"method {accessor.rendered_name()}"
                        )
                    )
        else:
            method_names = {m.name for m in current.methods}
            for index, method in enumerate(derive_subject_methods(current)):
                if method.name in method_names:
                    continue
                method_names.add(method.name)
                current = replace(current, methods=(*current.methods, method))
                traces.append(
                    DerivationTrace(
                        sym.name, Step.S8, f"method {method.rendered_name()}", ("behavior", index)
                    )
                )
        working[sym.name] = current

    def interim() -> Lexicon:
        return replace(
            resolved, symbols=tuple(working[s.name] for s in resolved.symbols)
        )

    # Verbs: participants become attributes, the event becomes the method.
    for sym in resolved.symbols:
        if sym.symbol_type is not SymbolType.VERB:
            continue
        current = working[sym.name]
        derived_attrs, method = derive_verb(current, interim())
        for attr in derived_attrs:
            if _attr_matches(current, attr.name):
                continue
            current = replace(current, attributes=(*current.attributes, attr))
            traces.append(DerivationTrace(sym.name, Step.S9, describe_attr(attr)))
        if all(m.name != method.name for m in current.methods):
            method = replace(
                method,
                parameters=tuple(
                    ParameterRef(a.code, ParamRole.ATTRIBUTE_REF)
                    for a in current.attributes
                ),
            )
            current = replace(current, methods=(*current.methods, method))
            traces.append(
                DerivationTrace(sym.name, Step.S9, f"method {method.rendered_name()}")
            )
        working[sym.name] = current

    # States: inherit the triggering verb's method and attributes.
    for sym in resolved.symbols:
        if sym.symbol_type is not SymbolType.STATE:
            continue
        current = working[sym.name]
        snapshot = interim()
        try:
            verbs = trigger_verbs(current, snapshot)
            derived_attrs, method = derive_state(current, snapshot)
        except NoTriggerVerbError:
            traces.append(
                DerivationTrace(
                    sym.name, Step.S10, "warning: no trigger verb referenced in notion"
                )
            )
            continue
        if len(verbs) > 1:
            traces.append(
                DerivationTrace(
                    sym.name,
                    Step.S10,
                    f"warning: multiple trigger verbs referenced, using {verbs[0]!r}",
                )
            )
        for attr in derived_attrs:
            if _attr_matches(current, attr.name):
                continue
            current = replace(current, attributes=(*current.attributes, attr))
            traces.append(DerivationTrace(sym.name, Step.S10, describe_attr(attr)))
        if all(m.name != method.name for m in current.methods):
            current = replace(current, methods=(*current.methods, method))
            traces.append(
                DerivationTrace(sym.name, Step.S10, f"method {method.rendered_name()}")
            )
        working[sym.name] = current

    enriched = interim()
    authored_names = {l.name for l in lexicon.links}
    links = build_circularity(enriched)
    for link in links:
        if link.name not in authored_names:
            traces.append(
                DerivationTrace(
                    link.source,
                    Step.S13,
                    f"link {link.name} ({link.source} -> {link.target})",
                )
            )
    final = replace(enriched, links=tuple(links))
    return final, traces


def render_trace_file(traces: list[DerivationTrace]) -> str:
    """One tab-separated record per trace, in derivation order."""
    lines = []
    for t in traces:
        source = f"{t.source_entry[0]}:{t.source_entry[1]}" if t.source_entry else "-"
        lines.append(f"{t.symbol}\t{t.step.value}\t{t.produced}\t{source}")
    return "\n".join(lines) + ("\n" if lines else "")
