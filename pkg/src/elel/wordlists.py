"""Shipped word lists: stopwords, a basic English vocabulary, action verbs.

All lists are plain UTF-8 files, one word per line, ``#`` comments allowed;
users can substitute their own files wherever a list is accepted.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

_DATA_DIR = Path(__file__).with_name("data")


def load_wordlist(path: str | Path) -> frozenset[str]:
    """Read a one-word-per-line file into a lowercase set."""
    words: set[str] = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        word = raw.strip()
        if word and not word.startswith("#"):
            words.add(word.lower())
    return frozenset(words)


@lru_cache(maxsize=None)
def stopwords() -> frozenset[str]:
    """English function words ignored by term extraction and closure counting."""
    return load_wordlist(_DATA_DIR / "stopwords.txt")


@lru_cache(maxsize=None)
def basic_vocabulary() -> frozenset[str]:
    """Common English words that do not count as domain-foreign in closure reports."""
    return load_wordlist(_DATA_DIR / "basic_words.txt")


@lru_cache(maxsize=None)
def action_verbs() -> frozenset[str]:
    """Cue verbs used by the term-classification suggestions."""
    return load_wordlist(_DATA_DIR / "action_verbs.txt")
