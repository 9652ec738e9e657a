"""Sliding-window segmentation and subword encoding for the classifier.

Long documents are cut into overlapping word windows (default 150 words
with a 30-word overlap, so adjacent windows share exactly 30 words).  Each
window is then encoded greedily against a bounded subword vocabulary,
framed with CLS/SEP, truncated at the maximum sequence length and padded to
exactly that length.

The vocabulary is corpus-derived: the most frequent whole words, plus every
single character (bare and "##"-continuation) seen in the corpus as a
closed fallback, so in-alphabet words never need the UNK token.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .errors import TextaugError
from .textkit import is_pure_punctuation, tokenize

PAD, UNK, CLS, SEP = "[PAD]", "[UNK]", "[CLS]", "[SEP]"
SPECIALS = [PAD, UNK, CLS, SEP]
CONTINUATION = "##"
DEFAULT_VOCAB_SIZE = 30000


class VocabFormatError(TextaugError):
    pass


@dataclass
class SubwordVocab:
    """Dense piece-to-id map with the four reserved specials first."""

    pieces: List[str]
    ids: Dict[str, int] = field(init=False)

    def __post_init__(self):
        if self.pieces[: len(SPECIALS)] != SPECIALS:
            raise VocabFormatError(f"first {len(SPECIALS)} pieces must be {SPECIALS}")
        self.ids = {piece: i for i, piece in enumerate(self.pieces)}
        if len(self.ids) != len(self.pieces):
            raise VocabFormatError("duplicate piece in vocabulary")

    def __len__(self) -> int:
        return len(self.pieces)

    @property
    def pad_id(self) -> int:
        return self.ids[PAD]

    @property
    def unk_id(self) -> int:
        return self.ids[UNK]

    @property
    def cls_id(self) -> int:
        return self.ids[CLS]

    @property
    def sep_id(self) -> int:
        return self.ids[SEP]


@dataclass(frozen=True)
class SegmentConfig:
    window_size: int = 150
    overlap: int = 30
    max_seq_len: int = 512

    def __post_init__(self):
        if self.window_size < 1:
            raise ValueError("window_size must be positive")
        if not 0 <= self.overlap < self.window_size:
            raise ValueError("overlap must satisfy 0 <= overlap < window_size")
        if self.max_seq_len < self.window_size:
            # subwording can only lengthen a window, never shorten it
            raise ValueError("max_seq_len must be >= window_size")

    @property
    def stride(self) -> int:
        return self.window_size - self.overlap


@dataclass
class Segment:
    doc_id: str
    index: int
    word_window: List[str]
    ids: List[int]
    attention_len: int


def window_words(words: Sequence[str], cfg: SegmentConfig) -> List[Tuple[int, List[str]]]:
    """Cut a word sequence into overlapping windows.

    Window k covers words[k*stride : k*stride + window_size); emission stops
    once a window has reached the end of the document, so the final window
    may be shorter but no window is ever redundant.
    """
    n = len(words)
    if n == 0:
        return []
    windows: List[Tuple[int, List[str]]] = []
    k = 0
    while True:
        start = k * cfg.stride
        end = start + cfg.window_size
        windows.append((k, list(words[start:end])))
        if end >= n:
            break
        k += 1
    return windows


def subword_tokenize(word: str, vocab: SubwordVocab) -> List[int]:
    """Greedy longest-match-first subword split, whole word -> [UNK] on failure."""
    ids: List[int] = []
    start = 0
    n = len(word)
    while start < n:
        end = n
        match = None
        while start < end:
            piece = word[start:end]
            if start > 0:
                piece = CONTINUATION + piece
            if piece in vocab.ids:
                match = vocab.ids[piece]
                break
            end -= 1
        if match is None:
            return [vocab.unk_id]
        ids.append(match)
        start = end
    return ids


def encode_segment(
    window: Sequence[str],
    vocab: SubwordVocab,
    cfg: SegmentConfig,
    doc_id: str = "",
    index: int = 0,
) -> Segment:
    """Encode a word window as [CLS] + subword ids + [SEP], padded/truncated
    to exactly ``cfg.max_seq_len`` ids (SEP stays last when truncating)."""
    ids = [vocab.cls_id]
    for word in window:
        ids.extend(subword_tokenize(word.lower(), vocab))
    ids.append(vocab.sep_id)
    if len(ids) > cfg.max_seq_len:
        ids = ids[: cfg.max_seq_len - 1] + [vocab.sep_id]
    attention_len = len(ids)
    ids = ids + [vocab.pad_id] * (cfg.max_seq_len - len(ids))
    return Segment(doc_id, index, list(window), ids, attention_len)


def document_words(text: str) -> List[str]:
    """Normalized word tokens of a text, punctuation-only tokens dropped."""
    return [
        tok.normalized
        for tok in tokenize(text)
        if not is_pure_punctuation(tok.surface)
    ]


def segment_document(doc_id: str, text: str, vocab: SubwordVocab, cfg: SegmentConfig) -> List[Segment]:
    """Full pipeline for one document: words -> windows -> encoded segments."""
    words = document_words(text)
    if not words:
        return []
    return [
        encode_segment(window, vocab, cfg, doc_id=doc_id, index=k)
        for k, window in window_words(words, cfg)
    ]


def build_vocab(texts: Iterable[str], size: int = DEFAULT_VOCAB_SIZE) -> SubwordVocab:
    """Derive a subword vocabulary from training texts.

    Layout: the four specials, then every corpus character as a bare piece
    and as a "##" continuation (the closed fallback), then whole words in
    descending frequency until ``size`` pieces in total.
    """
    word_counts: Counter = Counter()
    chars: set = set()
    for text in texts:
        for word in document_words(text):
            word_counts[word] += 1
            chars.update(word)

    pieces = list(SPECIALS)
    for ch in sorted(chars):
        pieces.append(ch)
    for ch in sorted(chars):
        pieces.append(CONTINUATION + ch)

    taken = set(pieces)
    for word, _ in sorted(word_counts.items(), key=lambda e: (-e[1], e[0])):
        if len(pieces) >= size:
            break
        if word not in taken:
            pieces.append(word)
            taken.add(word)
    return SubwordVocab(pieces)


def save_vocab(vocab: SubwordVocab, path: Union[str, Path]) -> None:
    """One piece per line; the line number is the id."""
    with open(path, "w", encoding="utf-8") as f:
        for piece in vocab.pieces:
            f.write(piece + "\n")


def load_vocab(path: Union[str, Path]) -> SubwordVocab:
    pieces: List[str] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            pieces.append(line.rstrip("\n"))
    while pieces and pieces[-1] == "":
        pieces.pop()
    if len(pieces) < len(SPECIALS):
        raise VocabFormatError(f"{path}: vocabulary too small, needs the {len(SPECIALS)} reserved pieces")
    return SubwordVocab(pieces)
