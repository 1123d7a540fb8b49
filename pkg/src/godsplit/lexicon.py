"""Identifier splitting and rule-based lemmatization for the semantic view."""

from __future__ import annotations

import re
from typing import Iterable

DEFAULT_STOP_WORDS = frozenset(
    {"get", "set", "is", "has", "to", "of", "the", "a", "an",
     "new", "free", "init", "create", "destroy"}
)

# acronym run before a capitalised word | capitalised/lower word | digits
_PIECE_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|\d+")


def split_identifier(name: str) -> list[str]:
    """Split on underscores, camel-case humps and digit boundaries.

    >>> split_identifier("getHTTPServerName2")
    ['get', 'HTTP', 'Server', 'Name', '2']
    """
    pieces: list[str] = []
    for chunk in name.split("_"):
        pieces.extend(_PIECE_RE.findall(chunk))
    return pieces


def lemmatize(word: str) -> str:
    """Apply the first matching suffix rule; the table is ordered."""
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("es") and len(word) > 4:
        stem = word[:-2]
        if stem.endswith(("s", "x", "z", "ch", "sh")):
            return stem
        return word[:-1]
    if word.endswith("s") and len(word) > 3 and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    if word.endswith("ing") and len(word) - 3 >= 3:
        return word[:-3]
    if word.endswith("ed") and len(word) - 2 >= 3:
        return word[:-2]
    return word


def tokenize_identifier(name: str, stop_words: Iterable[str] = DEFAULT_STOP_WORDS) -> frozenset[str]:
    stop = frozenset(stop_words)
    words = set()
    for piece in split_identifier(name):
        if piece.isdigit():
            continue
        raw = piece.lower()
        if raw in stop:
            continue
        lemma = lemmatize(raw)
        if len(lemma) < 2 or lemma in stop:
            continue
        words.add(lemma)
    return frozenset(words)
