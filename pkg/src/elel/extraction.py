"""Statistical candidate-term identification over a source corpus.

Candidates are case-folded n-grams that repeat across the corpus, do not
start or end with a stopword, and are not strict sub-phrases of an equally
frequent longer candidate.  A candidate's score is its frequency times its
length in words, which favors the multiword domain terms this kind of
corpus is full of; recalibrate by post-processing if that bias is wrong
for your material.

Classification suggestions are cue-based and advisory: the human
classification in the lexicon file is always authoritative.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from . import wordlists
from .dsl import SourceDocument
from .lexicon import SymbolType

_TOKEN_RE = re.compile(r"[a-z0-9]+(?:'[a-z0-9]+)*")

# Known irregular past participles for the state-type cue.
_IRREGULAR_PARTICIPLES = frozenset(
    "made done given written held sent taken put set paid sold told "
    "known seen shown born kept built left found brought".split()
)


class EmptyCorpusError(ValueError):
    """Raised when extraction is attempted with no documents at all."""


@dataclass(frozen=True)
class ExtractionConfig:
    min_frequency: int = 2
    max_ngram: int = 3
    stopwords: frozenset[str] = field(default_factory=wordlists.stopwords)

    def __post_init__(self) -> None:
        if self.min_frequency < 1:
            raise ValueError("min_frequency must be >= 1")
        if not 1 <= self.max_ngram <= 4:
            raise ValueError("max_ngram must be in 1..4")
        if not self.stopwords:
            raise ValueError("stopword set must be non-empty")


@dataclass(frozen=True)
class CandidateTerm:
    phrase: str
    frequency: int
    score: int
    suggested_type: SymbolType | None = None

    def __post_init__(self) -> None:
        words = len(self.phrase.split())
        if not 1 <= words <= 4:
            raise ValueError(f"phrase must be 1-4 words: {self.phrase!r}")
        if self.frequency < 1:
            raise ValueError("frequency must be positive")
        if self.score != self.frequency * words:
            raise ValueError("score must equal frequency x word count")


def tokenize(sentence: str) -> list[str]:
    """Lowercased word tokens; apostrophes bind ('officer's' is one token)."""
    return _TOKEN_RE.findall(sentence.lower())


def count_ngrams(docs: list[SourceDocument], max_ngram: int) -> Counter[str]:
    """Window counts of every 1..max_ngram word n-gram, per sentence."""
    counts: Counter[str] = Counter()
    for doc in docs:
        for sentence in doc.sentences:
            tokens = tokenize(sentence)
            for n in range(1, max_ngram + 1):
                for i in range(len(tokens) - n + 1):
                    counts[" ".join(tokens[i : i + n])] += 1
    return counts


def extract_candidates(
    docs: list[SourceDocument], config: ExtractionConfig | None = None
) -> list[CandidateTerm]:
    """Candidate terms sorted by descending score, then ascending phrase."""
    if not docs:
        raise EmptyCorpusError("term extraction needs at least one document")
    config = config or ExtractionConfig()
    counts = count_ngrams(docs, config.max_ngram)

    eligible: dict[str, int] = {}
    for phrase, freq in counts.items():
        if freq < config.min_frequency:
            continue
        words = phrase.split()
        if words[0] in config.stopwords or words[-1] in config.stopwords:
            continue
        eligible[phrase] = freq

    # Subsumption pruning: a phrase that only ever occurs inside one longer
    # surviving candidate (same frequency) adds no information.
    survivors: list[str] = []
    for phrase in sorted(eligible, key=lambda p: (-len(p.split()), p)):
        freq = eligible[phrase]
        subsumed = any(
            eligible[longer] == freq and f" {phrase} " in f" {longer} "
            for longer in survivors
            if len(longer.split()) > len(phrase.split())
        )
        if not subsumed:
            survivors.append(phrase)

    candidates = [
        CandidateTerm(phrase, eligible[phrase], eligible[phrase] * len(phrase.split()))
        for phrase in survivors
    ]
    candidates.sort(key=lambda c: (-c.score, c.phrase))
    return candidates


def _looks_like_participle(word: str) -> bool:
    return word.endswith("ed") or word in _IRREGULAR_PARTICIPLES


def suggest_type(
    term: CandidateTerm,
    docs: list[SourceDocument],
    action_verbs: frozenset[str] | None = None,
) -> SymbolType | None:
    """Cue-based typology suggestion for a candidate, or None if it never occurs.

    A phrase occurs when its words appear in order inside one sentence,
    gaps allowed, so copula-elided phrasings like "birth certificate
    issued" still count against "a birth certificate is issued".  Cue
    priority: verb (infinitive context or known action verb), state (the
    phrase holds a participle used after is/are in the corpus), subject
    (the phrase opens a "The <phrase> <verb> ..." sentence), object
    fallback.
    """
    verbs = action_verbs if action_verbs is not None else wordlists.action_verbs()
    words = term.phrase.split()
    if not words:
        return None

    sentences = [tokenize(s) for doc in docs for s in doc.sentences]
    all_bigrams = {
        (tokens[i], tokens[i + 1]) for tokens in sentences for i in range(len(tokens) - 1)
    }

    def subsequence_of(tokens: list[str]) -> bool:
        position = 0
        for token in tokens:
            if token == words[position]:
                position += 1
                if position == len(words):
                    return True
        return False

    if not any(subsequence_of(tokens) for tokens in sentences):
        return None

    if ("to", words[0]) in all_bigrams or words[0] in verbs:
        return SymbolType.VERB

    for word in words:
        if _looks_like_participle(word) and (
            ("is", word) in all_bigrams or ("are", word) in all_bigrams
        ):
            return SymbolType.STATE

    agent_prefix = ["the", *words]
    for tokens in sentences:
        if tokens[: len(agent_prefix)] == agent_prefix and len(tokens) > len(agent_prefix):
            return SymbolType.SUBJECT

    return SymbolType.OBJECT
