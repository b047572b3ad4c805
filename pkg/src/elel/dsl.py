"""Plain-text formats: the lexicon DSL and source-corpus ingestion.

Lexicon files (``.elel``) use a line-oriented grammar so that diagnostics
are line-precise and diffs stay review-friendly:

``symbol "<Name>"``
    Opens a symbol block.
``aliases: <a> | <b>``
    Optional alternative names for the enclosing symbol.
``type: subject|object|verb|state``
    Mandatory classification of the enclosing symbol.
``notion:`` / ``behavior:``
    Followed by one ``- <sentence>`` line per entry.
``attribute "<Name>": code=<id> definition="<text>" format=<Text|Digit|Date|Complex> size=<int>``
    A conceptual property.  The spelling variant ``Digital`` is accepted
    and normalized to ``Digit``.
``method "<Name>": kind=<accessor|mutator|action|event> params=<id,...>``
    An operation; ``params`` is optional.  A trailing ``()`` on the name is
    accepted and stripped.
``link "<Name>": source="<Sym>"[<lo>..<hi|*>] target="<Sym>"[<lo>..<hi|*>]``
    A circularity link with occurrence bounds for both created elements;
    element names default to the symbol names.

Lines whose first non-blank character is ``#`` are comments.  Blank lines
end a ``notion:``/``behavior:`` list.  Indentation is not significant.
Errors in one construct never abort the rest of the file: diagnostics
accumulate and the returned lexicon simply omits the offending construct.

Corpus files (``.uofd.txt``) are plain prose; ingestion splits them into
sentences on ``.``, ``!`` and ``?`` with a digit guard so decimal points
survive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

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
    Sentence,
    Severity,
    SymbolType,
    normalize_term,
)


@dataclass(frozen=True)
class SourceDocument:
    """An ingested source-of-information document, split into sentences."""

    path_label: str
    sentences: tuple[str, ...]

    def __post_init__(self) -> None:
        for s in self.sentences:
            if not s or s != s.strip():
                raise ValueError("corpus sentences must be non-empty and trimmed")


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    severity: Severity
    message: str


_SYMBOL_RE = re.compile(r'^symbol\s+"([^"]+)"\s*$')
_ALIASES_RE = re.compile(r"^aliases:\s*(.+)$")
_TYPE_RE = re.compile(r"^type:\s*(\S+)\s*$")
_NOTION_RE = re.compile(r"^notion:\s*$")
_BEHAVIOR_RE = re.compile(r"^behavior:\s*$")
_ITEM_RE = re.compile(r"^-\s+(.+)$")
_ATTR_RE = re.compile(
    r'^attribute\s+"([^"]+)":\s*code=(\S+)\s+definition="([^"]*)"'
    r"\s+format=(\S+)\s+size=(\S+)\s*$"
)
_METHOD_RE = re.compile(
    r'^method\s+"([^"]+)":\s*kind=(\S+)(?:\s+params=(\S+))?\s*$'
)
_LINK_RE = re.compile(
    r'^link\s+"([^"]+)":\s*source="([^"]+)"\[([^\]]*)\]\s+target="([^"]+)"\[([^\]]*)\]\s*$'
)
_BOUNDS_RE = re.compile(r"^(\d+)\.\.(\d+|\*)$")

_TYPE_KEYWORDS = {t.value: t for t in SymbolType}
_KIND_KEYWORDS = {k.value: k for k in MethodKind}
_FORMAT_KEYWORDS = {f.value.lower(): f for f in FormatKind}
# Spelling variant found in source material; treated as a typo for Digit.
_FORMAT_KEYWORDS["digital"] = FormatKind.DIGIT


class _Block:
    def __init__(self, name: str, line: int) -> None:
        self.name = name
        self.line = line
        self.aliases: list[str] = []
        self.symbol_type: SymbolType | None = None
        self.notion: list[str] = []
        self.behavior: list[str] = []
        self.attributes: list[AttributeSpec] = []
        self.methods: list[tuple[str, MethodKind, list[str]]] = []
        self.broken = False


def _parse_bounds(text: str) -> OccurrenceBounds | None:
    m = _BOUNDS_RE.match(text.strip())
    if not m:
        return None
    lower = int(m.group(1))
    upper = None if m.group(2) == "*" else int(m.group(2))
    if upper is not None and lower > upper:
        return None
    return OccurrenceBounds(lower, upper)


def parse_lexicon(text: str) -> tuple[Lexicon, list[ParseDiagnostic]]:
    """Parse DSL text into a lexicon plus line-numbered diagnostics.

    Parsing is total: no input crashes, the worst case is an empty lexicon
    with error diagnostics.
    """
    diagnostics: list[ParseDiagnostic] = []
    blocks: list[_Block] = []
    raw_links: list[tuple[int, str, str, OccurrenceBounds, str, OccurrenceBounds]] = []
    current: _Block | None = None
    mode: str | None = None

    def error(line: int, message: str) -> None:
        diagnostics.append(ParseDiagnostic(line, Severity.ERROR, message))

    def warn(line: int, message: str) -> None:
        diagnostics.append(ParseDiagnostic(line, Severity.WARNING, message))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            mode = None
            continue
        if line.startswith("#"):
            continue

        m = _SYMBOL_RE.match(line)
        if m:
            symbol_name = m.group(1).strip()
            current = _Block(symbol_name, lineno)
            blocks.append(current)
            if not symbol_name:
                error(lineno, "symbol name must be non-empty")
                current.broken = True
            mode = None
            continue

        m = _LINK_RE.match(line)
        if m:
            name, src, src_bounds, tgt, tgt_bounds = m.groups()
            lo = _parse_bounds(src_bounds)
            hi = _parse_bounds(tgt_bounds)
            if lo is None or hi is None:
                error(lineno, f"malformed occurrence bounds in link {name!r}")
                continue
            raw_links.append((lineno, name, src, lo, tgt, hi))
            mode = None
            continue

        if mode and (m := _ITEM_RE.match(line)):
            sentence = m.group(1).strip()
            if mode == "notion":
                current.notion.append(sentence)  # type: ignore[union-attr]
            else:
                current.behavior.append(sentence)  # type: ignore[union-attr]
            continue

        if current is None:
            error(lineno, f"directive outside a symbol block: {line!r}")
            continue

        if _NOTION_RE.match(line):
            mode = "notion"
            continue
        if _BEHAVIOR_RE.match(line):
            mode = "behavior"
            continue
        mode = None

        m = _ALIASES_RE.match(line)
        if m:
            for alias in (a.strip() for a in m.group(1).split("|")):
                if not alias:
                    warn(lineno, "empty alias entry ignored")
                elif alias in current.aliases:
                    warn(lineno, f"duplicate alias {alias!r} ignored")
                else:
                    current.aliases.append(alias)
            continue

        m = _TYPE_RE.match(line)
        if m:
            keyword = m.group(1).lower()
            if keyword not in _TYPE_KEYWORDS:
                error(lineno, f"unknown symbol type {m.group(1)!r}")
                current.broken = True
            else:
                current.symbol_type = _TYPE_KEYWORDS[keyword]
            continue

        m = _ATTR_RE.match(line)
        if m:
            name, code, definition, format_word, size_word = m.groups()
            fmt = _FORMAT_KEYWORDS.get(format_word.lower())
            if fmt is None:
                error(lineno, f"unknown attribute format {format_word!r}")
                continue
            if not size_word.isdigit() or int(size_word) < 1:
                error(lineno, f"attribute size must be a positive integer: {size_word!r}")
                continue
            try:
                attr = AttributeSpec(name.strip(), code, definition, fmt, int(size_word))
            except ValueError as exc:
                error(lineno, str(exc))
                continue
            if any(a.code == attr.code for a in current.attributes):
                error(lineno, f"duplicate attribute code {attr.code!r}")
                continue
            current.attributes.append(attr)
            continue

        m = _METHOD_RE.match(line)
        if m:
            name, kind_word, params_word = m.groups()
            kind = _KIND_KEYWORDS.get(kind_word.lower())
            if kind is None:
                error(lineno, f"unknown method kind {kind_word!r}")
                continue
            method_name = name.strip()
            if method_name.endswith("()"):
                method_name = method_name[:-2]
            if any(m[0] == method_name for m in current.methods):
                error(lineno, f"duplicate method name {method_name!r}")
                continue
            params = [p for p in (params_word or "").split(",") if p]
            current.methods.append((method_name, kind, params))
            continue

        error(lineno, f"unrecognized line: {line!r}")

    # Assemble symbols, rejecting duplicates and incomplete blocks.
    accepted: list[_Block] = []
    names: dict[str, str] = {}
    for block in blocks:
        if block.broken:
            continue
        if block.symbol_type is None:
            error(block.line, f"symbol {block.name!r} has no type")
            continue
        key = normalize_term(block.name)
        if key in names:
            error(block.line, f"duplicate symbol name {block.name!r}")
            continue
        names[key] = block.name
        accepted.append(block)

    # Alias hygiene needs the full name table, so it runs after assembly.
    alias_owner: dict[str, str] = {}
    block_aliases: dict[str, list[str]] = {}
    for block in accepted:
        kept: list[str] = []
        for alias in block.aliases:
            key = normalize_term(alias)
            if key in names and names[key] != block.name:
                error(block.line, f"alias {alias!r} of {block.name!r} equals another symbol's name")
                continue
            if key in alias_owner:
                if alias_owner[key] != block.name:
                    error(block.line, f"alias {alias!r} already declared by {alias_owner[key]!r}")
                continue
            alias_owner[key] = block.name
            kept.append(alias)
        block_aliases[block.name] = kept

    symbols: list[LexiconSymbol] = []
    for block in accepted:
        symbols.append(
            LexiconSymbol(
                name=block.name,
                symbol_type=block.symbol_type,  # type: ignore[arg-type]
                aliases=tuple(block_aliases[block.name]),
                notion=tuple(Sentence(s) for s in block.notion),
                behavior=tuple(Sentence(s) for s in block.behavior),
                attributes=tuple(block.attributes),
                methods=_build_methods(block, names, alias_owner, error),
            )
        )

    links: list[CircularityLink] = []
    seen_links: set[str] = set()
    for lineno, name, src, lo, tgt, hi in raw_links:
        src_key, tgt_key = normalize_term(src), normalize_term(tgt)
        if src_key not in names or tgt_key not in names:
            missing = src if src_key not in names else tgt
            error(lineno, f"link {name!r} endpoint {missing!r} is not a symbol")
            continue
        if src_key == tgt_key:
            error(lineno, f"link {name!r} relates a symbol to itself")
            continue
        if name in seen_links:
            error(lineno, f"duplicate link name {name!r}")
            continue
        seen_links.add(name)
        source, target = names[src_key], names[tgt_key]
        links.append(
            CircularityLink(
                name=name,
                source=source,
                target=target,
                elements=(
                    CreatedElement(source, source, lo),
                    CreatedElement(target, target, hi),
                ),
            )
        )

    diagnostics.sort(key=lambda d: d.line)
    return Lexicon(symbols=tuple(symbols), links=tuple(links)), diagnostics


def _build_methods(block, names, alias_owner, error):
    attr_codes = {a.code for a in block.attributes}
    methods: list[MethodSpec] = []
    for method_name, kind, params in block.methods:
        refs = []
        for target in params:
            key = normalize_term(target)
            if target in attr_codes:
                role = ParamRole.ATTRIBUTE_REF
            elif key in names or key in alias_owner:
                role = ParamRole.SYMBOL_REF
            else:
                role = ParamRole.ATTRIBUTE_REF
            refs.append(ParameterRef(target, role))
        try:
            methods.append(MethodSpec(method_name, kind, tuple(refs)))
        except ValueError as exc:
            error(block.line, f"invalid method {method_name!r}: {exc}")
    return tuple(methods)


def serialize_lexicon(lexicon: Lexicon) -> str:
    """Emit DSL text that parses back to a model-equal lexicon.

    Symbols appear in insertion order; output uses LF line endings.  The
    empty lexicon serializes to the empty string.
    """
    out: list[str] = []
    for sym in lexicon.symbols:
        out.append(f'symbol "{sym.name}"')
        if sym.aliases:
            out.append(f"  aliases: {' | '.join(sym.aliases)}")
        out.append(f"  type: {sym.symbol_type.value}")
        if sym.notion:
            out.append("  notion:")
            out.extend(f"    - {s.text}" for s in sym.notion)
        if sym.behavior:
            out.append("  behavior:")
            out.extend(f"    - {s.text}" for s in sym.behavior)
        for attr in sym.attributes:
            out.append(
                f'  attribute "{attr.name}": code={attr.code} '
                f'definition="{attr.definition}" format={attr.format.value} size={attr.size}'
            )
        for method in sym.methods:
            line = f'  method "{method.rendered_name()}": kind={method.kind.value}'
            if method.parameters:
                line += f" params={','.join(p.target for p in method.parameters)}"
            out.append(line)
        out.append("")
    for link in lexicon.links:
        out.append(
            f'link "{link.name}": '
            f'source="{link.source}"[{link.elements[0].occurrence.render()}] '
            f'target="{link.target}"[{link.elements[1].occurrence.render()}]'
        )
    if not out:
        return ""
    while out and not out[-1]:
        out.pop()
    return "\n".join(out) + "\n"


def parse_corpus(text: str, label: str) -> SourceDocument:
    """Split prose into trimmed sentences on ``.``/``!``/``?``.

    A period flanked by digits on both sides is not a terminator, so values
    like "3.5" survive.  Internal whitespace runs collapse to single spaces.
    """
    sentences: list[str] = []
    buf: list[str] = []
    for i, ch in enumerate(text):
        if ch in ".!?":
            if (
                ch == "."
                and 0 < i < len(text) - 1
                and text[i - 1].isdigit()
                and text[i + 1].isdigit()
            ):
                buf.append(ch)
                continue
            sentence = " ".join("".join(buf).split())
            if sentence:
                sentences.append(sentence)
            buf = []
        else:
            buf.append(ch)
    tail = " ".join("".join(buf).split())
    if tail:
        sentences.append(tail)
    return SourceDocument(path_label=label, sentences=tuple(sentences))
