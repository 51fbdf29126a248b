"""Analyzer chain shared by indexing, querying, and static views.

Pipeline: NFC-normalize, tokenize (letter/digit runs; everything else,
including hyphens and slashes, separates), lowercase, drop stopwords, stem.
Token offsets are byte ranges into the normalized text, so callers slicing
by offset must slice `normalize(text)`, not the raw input.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .porter2 import stem

__all__ = [
    "Token",
    "Term",
    "QueryAnalysis",
    "Analyzer",
    "normalize",
    "tokenize",
    "analyze",
    "analyze_query",
    "stem",
    "DEFAULT_STOPWORDS_PATH",
]

# Letter or digit runs; underscore and all punctuation separate.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

DEFAULT_STOPWORDS_PATH = Path(__file__).parent / "stopwords.txt"


@dataclass(frozen=True)
class Token:
    """One source token: original surface plus position and byte offsets."""

    surface: str
    position: int
    start: int
    end: int


@dataclass(frozen=True)
class Term:
    """One analyzed index term (lowercased, stopword-free, stemmed)."""

    stem: str
    position: int
    start: int
    end: int


@dataclass(frozen=True)
class QueryAnalysis:
    """Analyzed query: full terms plus an optional trailing prefix.

    The prefix Term carries the lowercased, unstemmed surface of the final
    token when the query does not end in a separator; it is matched against
    indexed stems by prefix.
    """

    terms: tuple[Term, ...]
    prefix: Term | None


def normalize(text: str) -> str:
    """Canonical composition form used for tokenizing and offsets."""
    return unicodedata.normalize("NFC", text)


def load_stopwords(path: Path | str) -> frozenset[str]:
    """Load a stopword file: one lowercase word per line, UTF-8, no comments."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word:
                words.add(word)
    return frozenset(words)


class Analyzer:
    """Deterministic analyzer; stopword list path is configurable."""

    def __init__(self, stopwords_path: Path | str = DEFAULT_STOPWORDS_PATH):
        self.stopwords = load_stopwords(stopwords_path)

    def tokenize(self, text: str) -> list[Token]:
        text = normalize(text)
        tokens = []
        byte_pos = 0
        last_char = 0
        for position, match in enumerate(_TOKEN_RE.finditer(text)):
            start_c, end_c = match.span()
            byte_pos += len(text[last_char:start_c].encode("utf-8"))
            start_b = byte_pos
            byte_pos += len(text[start_c:end_c].encode("utf-8"))
            last_char = end_c
            tokens.append(Token(match.group(), position, start_b, byte_pos))
        return tokens

    def analyze(self, text: str) -> list[Term]:
        terms = []
        for token in self.tokenize(text):
            lowered = token.surface.lower()
            if lowered in self.stopwords:
                continue
            terms.append(Term(stem(lowered), token.position, token.start, token.end))
        return terms

    def analyze_query(self, text: str) -> QueryAnalysis:
        normalized = normalize(text)
        tokens = self.tokenize(text)
        prefix = None
        if tokens and text and not _ends_in_separator(normalized):
            last = tokens[-1]
            prefix = Term(last.surface.lower(), last.position, last.start, last.end)
            tokens = tokens[:-1]
        terms = []
        for token in tokens:
            lowered = token.surface.lower()
            if lowered in self.stopwords:
                continue
            terms.append(Term(stem(lowered), token.position, token.start, token.end))
        return QueryAnalysis(terms=tuple(terms), prefix=prefix)


def _ends_in_separator(normalized_text: str) -> bool:
    match = _TOKEN_RE.match(normalized_text[-1:])
    return match is None


_DEFAULT = Analyzer()


def tokenize(text: str) -> list[Token]:
    return _DEFAULT.tokenize(text)


def analyze(text: str) -> list[Term]:
    return _DEFAULT.analyze(text)


def analyze_query(text: str) -> QueryAnalysis:
    return _DEFAULT.analyze_query(text)
