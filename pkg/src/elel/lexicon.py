"""Core model for an extended requirements lexicon.

A lexicon is an ordered collection of named symbols, each classified as
subject, object, verb or state.  Every symbol carries two kinds of
natural-language entries (notion sentences saying what it is, behavioral
responses saying what it does or undergoes) and two conceptual enrichments
(attributes and methods).  Symbols mention each other inside their
sentences; reference resolution turns those mentions into explicit,
span-anchored occurrences, which downstream modules use for closure
checking, derivation and linking.

All types here are immutable after construction and validate their own
invariants, so a constructed value is always well formed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class SymbolType(Enum):
    SUBJECT = "subject"
    OBJECT = "object"
    VERB = "verb"
    STATE = "state"


class FormatKind(Enum):
    TEXT = "Text"
    DIGIT = "Digit"
    DATE = "Date"
    COMPLEX = "Complex"


class MethodKind(Enum):
    ACCESSOR = "accessor"
    MUTATOR = "mutator"
    ACTION = "action"
    EVENT_TRIGGER = "event"


class ParamRole(Enum):
    ATTRIBUTE_REF = "attribute"
    SYMBOL_REF = "symbol"


_CODE_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def normalize_term(term: str) -> str:
    """Whitespace-normalized, case-folded form used for name comparison."""
    return " ".join(term.split()).casefold()


@dataclass(frozen=True)
class ReferenceOccurrence:
    """One resolved mention of another symbol inside a sentence."""

    target_symbol: str
    span_start: int
    span_end: int
    matched_text: str


@dataclass(frozen=True)
class Sentence:
    """A single notion or behavioral-response entry.

    ``resolved_refs`` is empty on a freshly parsed sentence and populated by
    :func:`resolve_references`; spans are character offsets into ``text``.
    """

    text: str
    resolved_refs: tuple[ReferenceOccurrence, ...] = ()

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("sentence text must be non-empty")
        prev_end = 0
        for ref in sorted(self.resolved_refs, key=lambda r: r.span_start):
            if not (0 <= ref.span_start < ref.span_end <= len(self.text)):
                raise ValueError(f"reference span out of bounds: {ref}")
            if ref.span_start < prev_end:
                raise ValueError(f"overlapping reference spans in {self.text!r}")
            if self.text[ref.span_start : ref.span_end] != ref.matched_text:
                raise ValueError(f"matched_text does not equal its span: {ref}")
            prev_end = ref.span_end


@dataclass(frozen=True)
class OccurrenceBounds:
    """Min/max occurrence of a linked symbol; ``upper=None`` means unbounded."""

    lower: int
    upper: int | None

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise ValueError("lower bound must be non-negative")
        if self.upper is not None:
            if self.upper < 1:
                raise ValueError("bounded upper must be positive")
            if self.lower > self.upper:
                raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")

    def render(self) -> str:
        return f"{self.lower}..{'*' if self.upper is None else self.upper}"


UNBOUNDED = OccurrenceBounds(0, None)


@dataclass(frozen=True)
class AttributeSpec:
    """A conceptual property of a symbol: name plus code/definition/format/size."""

    name: str
    code: str
    definition: str
    format: FormatKind
    size: int

    def __post_init__(self) -> None:
        if not self.name.strip():
            raise ValueError("attribute name must be non-empty")
        if not _CODE_RE.match(self.code):
            raise ValueError(f"attribute code {self.code!r} is not a valid identifier")
        if self.size < 1:
            raise ValueError("attribute size must be >= 1")


@dataclass(frozen=True)
class ParameterRef:
    """A method parameter pointing at an attribute code or a symbol name."""

    target: str
    role: ParamRole

    def __post_init__(self) -> None:
        if not self.target:
            raise ValueError("parameter target must be non-empty")


@dataclass(frozen=True)
class MethodSpec:
    """An operation attached to a symbol.

    Accessor/mutator methods carry exactly one attribute parameter and use
    the get/set naming prefixes; action and event-trigger methods may carry
    any number of attribute or symbol parameters.
    """

    name: str
    kind: MethodKind
    parameters: tuple[ParameterRef, ...] = ()

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("method name must be non-empty")
        if self.kind is MethodKind.ACCESSOR and not self.name.startswith("get"):
            raise ValueError(f"accessor {self.name!r} must start with 'get'")
        if self.kind is MethodKind.MUTATOR and not self.name.startswith("set"):
            raise ValueError(f"mutator {self.name!r} must start with 'set'")
        if self.kind in (MethodKind.ACCESSOR, MethodKind.MUTATOR):
            if len(self.parameters) != 1 or self.parameters[0].role is not ParamRole.ATTRIBUTE_REF:
                raise ValueError(
                    f"{self.kind.value} {self.name!r} must reference exactly one attribute"
                )

    def rendered_name(self) -> str:
        return f"{self.name}()"


@dataclass(frozen=True)
class LexiconSymbol:
    name: str
    symbol_type: SymbolType
    aliases: tuple[str, ...] = ()
    notion: tuple[Sentence, ...] = ()
    behavior: tuple[Sentence, ...] = ()
    attributes: tuple[AttributeSpec, ...] = ()
    methods: tuple[MethodSpec, ...] = ()

    def __post_init__(self) -> None:
        if not self.name or self.name != self.name.strip():
            raise ValueError(f"symbol name must be non-empty and trimmed: {self.name!r}")
        for alias in self.aliases:
            if not alias.strip():
                raise ValueError(f"empty alias on symbol {self.name!r}")

    def terms(self) -> tuple[str, ...]:
        """Name plus aliases, in declaration order."""
        return (self.name, *self.aliases)

    def entries(self) -> tuple[tuple[str, int, Sentence], ...]:
        """All entries as (entry-kind, index, sentence) in notion-then-behavior order."""
        out = [("notion", i, s) for i, s in enumerate(self.notion)]
        out += [("behavior", i, s) for i, s in enumerate(self.behavior)]
        return tuple(out)


@dataclass(frozen=True)
class CreatedElement:
    """A named participation of a symbol in a circularity link."""

    name: str
    symbol: str
    occurrence: OccurrenceBounds = UNBOUNDED

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("created element name must be non-empty")


@dataclass(frozen=True)
class CircularityLink:
    """A named source -> target relation between two symbols, with the pair
    of created elements carrying occurrence bounds for each end."""

    name: str
    source: str
    target: str
    elements: tuple[CreatedElement, CreatedElement]

    def __post_init__(self) -> None:
        if normalize_term(self.source) == normalize_term(self.target):
            raise ValueError(f"link {self.name!r} may not relate a symbol to itself")
        if (
            self.elements[0].symbol != self.source
            or self.elements[1].symbol != self.target
        ):
            raise ValueError(f"link {self.name!r} elements do not match its endpoints")


@dataclass(frozen=True)
class Lexicon:
    symbols: tuple[LexiconSymbol, ...] = ()
    links: tuple[CircularityLink, ...] = ()
    base_vocabulary: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        seen: dict[str, str] = {}
        for sym in self.symbols:
            key = normalize_term(sym.name)
            if key in seen:
                raise ValueError(f"duplicate symbol name {sym.name!r}")
            seen[key] = sym.name
        alias_owner: dict[str, str] = {}
        for sym in self.symbols:
            for alias in sym.aliases:
                key = normalize_term(alias)
                if key in seen and seen[key] != sym.name:
                    raise ValueError(
                        f"alias {alias!r} of {sym.name!r} equals another symbol's name"
                    )
                if key in alias_owner and alias_owner[key] != sym.name:
                    raise ValueError(f"alias {alias!r} is declared by two symbols")
                alias_owner[key] = sym.name
        for link in self.links:
            for endpoint in (link.source, link.target):
                if normalize_term(endpoint) not in seen:
                    raise ValueError(
                        f"link {link.name!r} endpoint {endpoint!r} is not a symbol"
                    )

    def get(self, name: str) -> LexiconSymbol | None:
        """Symbol with the given name (case-insensitive), ignoring aliases."""
        key = normalize_term(name)
        for sym in self.symbols:
            if normalize_term(sym.name) == key:
                return sym
        return None


def _fold(text: str) -> str:
    """Length-preserving lowercase fold, so match spans stay aligned even
    for characters whose str.lower() expands (e.g. dotted capital I)."""
    return "".join(c.lower()[0] for c in text)


def find_term_occurrences(text: str, term: str) -> list[tuple[int, int]]:
    """All case-insensitive, word-boundary occurrences of ``term`` in ``text``.

    A word boundary is a transition between a letter/digit and anything
    else; occurrences may overlap each other (selection is the caller's
    concern).  Returns (start, end) spans.
    """
    hay = _fold(text)
    needle = _fold(term)
    if not needle:
        return []
    spans: list[tuple[int, int]] = []
    start = 0
    while True:
        i = hay.find(needle, start)
        if i < 0:
            break
        j = i + len(needle)
        left_ok = i == 0 or not (hay[i - 1].isalnum() and hay[i].isalnum())
        right_ok = j == len(hay) or not (hay[j - 1].isalnum() and hay[j].isalnum())
        if left_ok and right_ok:
            spans.append((i, j))
        start = i + 1
    return spans


def _resolve_sentence(
    sentence: Sentence, terms: list[tuple[str, str]]
) -> Sentence:
    candidates: list[tuple[int, int, str]] = []
    for term, target in terms:
        for i, j in find_term_occurrences(sentence.text, term):
            candidates.append((i, j, target))
    # Leftmost-longest, non-overlapping selection.
    candidates.sort(key=lambda c: (c[0], -(c[1] - c[0])))
    refs: list[ReferenceOccurrence] = []
    cursor = 0
    for i, j, target in candidates:
        if i < cursor:
            continue
        refs.append(ReferenceOccurrence(target, i, j, sentence.text[i:j]))
        cursor = j
    return replace(sentence, resolved_refs=tuple(refs))


def resolve_references(lexicon: Lexicon) -> Lexicon:
    """Rebuild every sentence's resolved references from scratch.

    Matching is case-insensitive, word-boundary based and leftmost-longest;
    a symbol's own name and aliases never count inside its own entries.
    Resolution is total and idempotent.
    """
    new_symbols = []
    for sym in lexicon.symbols:
        own = {normalize_term(t) for t in sym.terms()}
        terms: list[tuple[str, str]] = []
        for other in lexicon.symbols:
            if other.name == sym.name:
                continue
            for term in other.terms():
                if normalize_term(term) in own:
                    continue
                terms.append((term, other.name))
        new_symbols.append(
            replace(
                sym,
                notion=tuple(_resolve_sentence(s, terms) for s in sym.notion),
                behavior=tuple(_resolve_sentence(s, terms) for s in sym.behavior),
            )
        )
    return replace(lexicon, symbols=tuple(new_symbols))


def lookup(lexicon: Lexicon, term: str) -> LexiconSymbol | None:
    """Symbol whose name or alias equals ``term`` after normalization."""
    key = normalize_term(term)
    if not key:
        return None
    for sym in lexicon.symbols:
        if any(normalize_term(t) == key for t in sym.terms()):
            return sym
    return None
