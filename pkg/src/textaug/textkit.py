"""Tokenization, sentence splitting and word-frequency analysis.

The tokenizer splits on Unicode whitespace and detaches punctuation into
single-character tokens.  Sentence splitting is the deliberately naive
period rule (it splits "Dr. Smith" too); translation chunking depends on
that exact behavior, so do not make it smarter.
"""

from __future__ import annotations

import json
import unicodedata
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Set, Tuple, Union


class Pos(Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adj"
    PRONOUN = "pron"
    OTHER = "other"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    pos: Pos = Pos.UNKNOWN

    @property
    def normalized(self) -> str:
        return self.surface.lower()

    def with_pos(self, pos: Pos) -> "Token":
        return replace(self, pos=pos)


@dataclass
class TokenSeq:
    """Tokens plus the source text they index into.

    Spans are non-overlapping and strictly increasing; joining surfaces with
    the inter-token gaps of ``source`` reconstructs ``source`` exactly.
    """

    tokens: List[Token] = field(default_factory=list)
    source: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def detokenize(self) -> str:
        """Rebuild the source text from spans and inter-token gaps."""
        parts = []
        cursor = 0
        for tok in self.tokens:
            parts.append(self.source[cursor:tok.start])
            parts.append(tok.surface)
            cursor = tok.end
        parts.append(self.source[cursor:])
        return "".join(parts)


def is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def is_pure_punctuation(word: str) -> bool:
    return len(word) > 0 and all(is_punctuation(ch) for ch in word)


def tokenize(text: str) -> TokenSeq:
    """Split ``text`` into word and punctuation tokens with character spans.

    Words are maximal runs of non-whitespace, non-punctuation characters;
    each punctuation mark becomes its own single-character token tagged
    ``Pos.OTHER``.  Word tokens start out ``Pos.UNKNOWN`` until tagged.
    """
    tokens: List[Token] = []
    word_start = None
    for i, ch in enumerate(text):
        if ch.isspace() or is_punctuation(ch):
            if word_start is not None:
                tokens.append(Token(text[word_start:i], word_start, i))
                word_start = None
            if is_punctuation(ch):
                tokens.append(Token(ch, i, i + 1, pos=Pos.OTHER))
        else:
            if word_start is None:
                word_start = i
    if word_start is not None:
        tokens.append(Token(text[word_start:], word_start, len(text)))
    return TokenSeq(tokens, text)


def split_sentences(text: str) -> List[str]:
    """Split on '.' only; each piece keeps its terminating period.

    Concatenating the returned pieces reproduces ``text`` exactly.  This is
    intentionally the naive rule, abbreviation failure mode included.
    """
    pieces: List[str] = []
    start = 0
    for i, ch in enumerate(text):
        if ch == ".":
            pieces.append(text[start:i + 1])
            start = i + 1
    if start < len(text):
        pieces.append(text[start:])
    return pieces


@dataclass
class FrequencyTable:
    """Word counts sorted by count descending, then word ascending."""

    entries: List[Tuple[str, int]] = field(default_factory=list)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: (-e[1], e[0]))

    def __len__(self) -> int:
        return len(self.entries)

    def words(self) -> List[str]:
        return [w for w, _ in self.entries]


def word_frequencies(docs: Iterable, stopwords: Set[str], top_k: int) -> FrequencyTable:
    """Count normalized word tokens across documents.

    Stopwords and pure-punctuation tokens are excluded.  At most ``top_k``
    entries are returned, in FrequencyTable order.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    counts: Counter = Counter()
    for doc in docs:
        for tok in tokenize(doc.text):
            word = tok.normalized
            if is_pure_punctuation(word) or word in stopwords:
                continue
            counts[word] += 1
    ranked = sorted(counts.items(), key=lambda e: (-e[1], e[0]))[:top_k]
    return FrequencyTable(ranked)


def load_stopwords(path: Union[str, Path]) -> Set[str]:
    """Read a stopword file: UTF-8, one token per line, '#' comments allowed."""
    words: Set[str] = set()
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if line:
                words.add(line.lower())
    return words


def frequency_csv(table: FrequencyTable) -> str:
    """CSV export (`word,count` header), the word-cloud renderer contract."""
    lines = ["word,count"]
    for word, count in table.entries:
        if "," in word or '"' in word:
            word = '"' + word.replace('"', '""') + '"'
        lines.append(f"{word},{count}")
    return "\n".join(lines) + "\n"


def frequency_json(table: FrequencyTable) -> str:
    """JSON export: array of [word, count] pairs."""
    return json.dumps([[w, c] for w, c in table.entries], ensure_ascii=False)
