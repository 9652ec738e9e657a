"""Synonym-substitution data augmentation.

Two rules drive every replacement: only nouns are eligible, and a noun is
replaced only when its best synonym scores at least the similarity
threshold (default 0.40).  Everything is deterministic: the best candidate
wins, ties break lexicographically, and no-synonym or below-threshold nouns
pass through unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

from .corpus import Corpus, Document, relabeled, with_documents
from .lexicon import LexiconBundle, similarity, synonyms, tag
from .textkit import Pos, Token, TokenSeq, tokenize

AUGMENTED_ID_SUFFIX = "-aug"


class AugmentMode(str, Enum):
    APPEND = "append"
    REPLACE = "replace"


@dataclass(frozen=True)
class AugmentConfig:
    threshold: float = 0.40
    mode: AugmentMode = AugmentMode.APPEND
    seed: int = 0  # reserved for future stochastic variants

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0,1], got {self.threshold}")


@dataclass(frozen=True)
class Replacement:
    token_index: int
    original: str
    substitute: str
    similarity: float


@dataclass
class AugmentTrace:
    replacements: List[Replacement] = field(default_factory=list)


def _match_leading_case(candidate: str, original_surface: str) -> str:
    if original_surface and original_surface[0].isupper() and candidate:
        return candidate[0].upper() + candidate[1:]
    return candidate


def _best_synonym(word: str, bundle: LexiconBundle) -> Tuple[str, float] | None:
    candidates = synonyms(word, bundle.synonyms)
    if not candidates:
        return None
    scored = [(similarity(word, cand, bundle.embeddings), cand) for cand in candidates]
    best_sim = max(s for s, _ in scored)
    best = min(cand for s, cand in scored if s == best_sim)
    return best, best_sim


def augment_text(seq: TokenSeq, bundle: LexiconBundle, cfg: AugmentConfig) -> Tuple[TokenSeq, AugmentTrace]:
    """Replace qualifying nouns in a tagged token sequence.

    The output sequence has the same token count, with spans recomputed over
    the substituted text; the trace records every substitution made.
    """
    new_surfaces: List[str] = []
    trace = AugmentTrace()
    for i, tok in enumerate(seq.tokens):
        surface = tok.surface
        if tok.pos is Pos.NOUN:
            found = _best_synonym(tok.normalized, bundle)
            if found is not None:
                candidate, sim = found
                if sim >= cfg.threshold:
                    surface = _match_leading_case(candidate, tok.surface)
                    trace.replacements.append(
                        Replacement(i, tok.surface, surface, sim)
                    )
        new_surfaces.append(surface)

    # splice the new surfaces back between the original inter-token gaps
    parts: List[str] = []
    new_tokens: List[Token] = []
    cursor = 0
    offset = 0
    for tok, surface in zip(seq.tokens, new_surfaces):
        parts.append(seq.source[cursor:tok.start])
        start = tok.start + offset
        new_tokens.append(Token(surface, start, start + len(surface), pos=tok.pos))
        parts.append(surface)
        offset += len(surface) - len(tok.surface)
        cursor = tok.end
    parts.append(seq.source[cursor:])
    return TokenSeq(new_tokens, "".join(parts)), trace


def augment_document(doc: Document, bundle: LexiconBundle, cfg: AugmentConfig) -> Tuple[str, AugmentTrace]:
    """Tokenize, tag and augment one document's text."""
    seq = tag(tokenize(doc.text), bundle.pos)
    new_seq, trace = augment_text(seq, bundle, cfg)
    return new_seq.source, trace


def augment_corpus(corpus: Corpus, bundle: LexiconBundle, cfg: AugmentConfig) -> Tuple[Corpus, List[AugmentTrace]]:
    """Augment every document; Append doubles the corpus, Replace keeps size.

    In Append mode the originals come first, followed by one augmented copy
    per document (ids suffixed "-aug") in input order.  Labels, splits and
    languages are copied unchanged.  Traces are returned in input-document
    order, one per input document.
    """
    if len(corpus) == 0:
        raise ValueError("cannot augment an empty corpus")

    augmented: List[Document] = []
    traces: List[AugmentTrace] = []
    for doc in corpus:
        text, trace = augment_document(doc, bundle, cfg)
        traces.append(trace)
        new_id = doc.id + AUGMENTED_ID_SUFFIX if cfg.mode is AugmentMode.APPEND else doc.id
        augmented.append(relabeled(doc, id=new_id, text=text))

    if cfg.mode is AugmentMode.APPEND:
        return with_documents(corpus, list(corpus) + augmented), traces
    return with_documents(corpus, augmented), traces
