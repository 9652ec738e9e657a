"""The augmenter's knowledge: POS lexicon, synonym dictionary, embeddings.

All three resources are immutable after load and every lookup is pure, so
they can be shared freely across workers.  Lookups are case-folded; words
missing from a resource degrade gracefully (Unknown tag, no synonyms,
similarity 0) instead of raising, so a long augmentation batch never aborts
on out-of-vocabulary input.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Union

import numpy as np

from .errors import TextaugError
from .textkit import Pos, TokenSeq, tokenize

POS_TAGS = {
    "noun": Pos.NOUN,
    "verb": Pos.VERB,
    "adj": Pos.ADJECTIVE,
    "pron": Pos.PRONOUN,
    "other": Pos.OTHER,
}


class LexiconFormatError(TextaugError):
    pass


@dataclass
class PosLexicon:
    """Map from lowercase word to grammatical class (never Unknown)."""

    entries: Dict[str, Pos] = field(default_factory=dict)

    def lookup(self, word: str) -> Pos:
        return self.entries.get(word.lower(), Pos.UNKNOWN)


@dataclass
class SynonymDict:
    """Map from lowercase word to an ordered list of single-token synonyms."""

    entries: Dict[str, List[str]] = field(default_factory=dict)

    def lookup(self, word: str) -> List[str]:
        return list(self.entries.get(word.lower(), []))


@dataclass
class EmbeddingTable:
    """Fixed-dimension word vectors keyed by lowercase word."""

    dimension: int
    vectors: Dict[str, np.ndarray] = field(default_factory=dict)

    def get(self, word: str):
        return self.vectors.get(word.lower())


@dataclass
class LexiconBundle:
    pos: PosLexicon
    synonyms: SynonymDict
    embeddings: EmbeddingTable


def tag(seq: TokenSeq, lex: PosLexicon) -> TokenSeq:
    """Set each token's POS from the lexicon, Unknown where absent.

    Surfaces and spans are untouched; tagging twice gives the same result.
    """
    tagged = [tok.with_pos(lex.lookup(tok.normalized)) for tok in seq.tokens]
    return TokenSeq(tagged, seq.source)


def synonyms(word: str, dictionary: SynonymDict) -> List[str]:
    """Synonyms for the lowercased word, in dictionary order; [] if none."""
    return dictionary.lookup(word)


def similarity(a: str, b: str, emb: EmbeddingTable) -> float:
    """Cosine similarity clamped to [0, 1]; 0 when either word is absent.

    Negative cosines mean dissimilarity and must not pass any threshold,
    hence the clamp at 0.
    """
    va = emb.get(a)
    vb = emb.get(b)
    if va is None or vb is None:
        return 0.0
    num = float(np.dot(va, vb))
    den = math.sqrt(float(np.dot(va, va)) * float(np.dot(vb, vb)))
    if den == 0.0:
        return 0.0
    return min(1.0, max(0.0, num / den))


def load_pos_lexicon(path: Union[str, Path]) -> PosLexicon:
    """Read a TSV lexicon: ``word<TAB>pos`` with pos in noun/verb/adj/pron/other."""
    entries: Dict[str, Pos] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LexiconFormatError(f"{path}: line {line_no}: expected 'word<TAB>pos'")
            word, tag_name = parts[0].strip(), parts[1].strip().lower()
            if tag_name not in POS_TAGS:
                raise LexiconFormatError(
                    f"{path}: line {line_no}: unknown pos {tag_name!r} "
                    f"(expected one of {sorted(POS_TAGS)})"
                )
            entries[word.lower()] = POS_TAGS[tag_name]
    return PosLexicon(entries)


def load_synonyms(path: Union[str, Path]) -> SynonymDict:
    """Read a JSON object mapping word -> array of synonyms.

    Multi-word synonyms (anything that does not tokenize to exactly one
    token) are rejected here so the augmenter's token-count invariant holds;
    a headword listed among its own synonyms is also rejected.
    """
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    if not isinstance(raw, dict):
        raise LexiconFormatError(f"{path}: expected a JSON object")
    entries: Dict[str, List[str]] = {}
    for word, syns in raw.items():
        if not isinstance(syns, list):
            raise LexiconFormatError(f"{path}: entry {word!r}: expected an array of strings")
        head = word.lower()
        normalized: List[str] = []
        for syn in syns:
            s = str(syn).lower()
            if len(tokenize(s)) != 1:
                raise LexiconFormatError(
                    f"{path}: entry {word!r}: synonym {syn!r} is not a single token"
                )
            if s == head:
                raise LexiconFormatError(
                    f"{path}: entry {word!r} lists itself as a synonym"
                )
            normalized.append(s)
        entries[head] = normalized
    return SynonymDict(entries)


def load_embeddings(path: Union[str, Path]) -> EmbeddingTable:
    """Read word vectors: first line ``<count> <dimension>``, then one word
    per line followed by its components."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise LexiconFormatError(f"{path}: first line must be '<count> <dimension>'")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError:
            raise LexiconFormatError(f"{path}: first line must be '<count> <dimension>'") from None
        if dim < 1:
            raise LexiconFormatError(f"{path}: dimension must be positive")
        vectors: Dict[str, np.ndarray] = {}
        for line_no, line in enumerate(f, start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != dim + 1:
                raise LexiconFormatError(
                    f"{path}: line {line_no}: expected word plus {dim} components, "
                    f"got {len(parts) - 1}"
                )
            word = parts[0].lower()
            try:
                vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError:
                raise LexiconFormatError(f"{path}: line {line_no}: non-numeric component") from None
            if not np.any(vec):
                raise LexiconFormatError(f"{path}: line {line_no}: all-zero vector for {word!r}")
            vectors[word] = vec
    if len(vectors) != count:
        raise LexiconFormatError(
            f"{path}: header declares {count} vectors, file has {len(vectors)}"
        )
    return EmbeddingTable(dim, vectors)


BUNDLE_FILES = {"pos": "pos.tsv", "synonyms": "synonyms.json", "embeddings": "embeddings.txt"}


def load_bundle(directory: Union[str, Path]) -> LexiconBundle:
    """Load pos.tsv, synonyms.json and embeddings.txt from one directory."""
    directory = Path(directory)
    return LexiconBundle(
        pos=load_pos_lexicon(directory / BUNDLE_FILES["pos"]),
        synonyms=load_synonyms(directory / BUNDLE_FILES["synonyms"]),
        embeddings=load_embeddings(directory / BUNDLE_FILES["embeddings"]),
    )
