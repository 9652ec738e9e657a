"""Shared generators and brute-force oracles for the test suite."""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

import numpy as np

from textaug.corpus import Corpus, Document, Label, Split
from textaug.lexicon import EmbeddingTable, LexiconBundle, PosLexicon, SynonymDict
from textaug.textkit import Pos

# characters for adversarial text generation: whitespace, punctuation,
# accents, non-Latin scripts
TEXT_CHARS = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    "áéíóúãõçÁÉÍÓÚ"
    "первый中文языка"
    " \t\n "
    ".,;:!?\"'()[]-–—…«»"
)


def random_text(rng: random.Random, max_len: int = 80) -> str:
    n = rng.randint(0, max_len)
    return "".join(rng.choice(TEXT_CHARS) for _ in range(n))


def random_word_text(rng: random.Random, words: List[str], n_words: int, punct_prob: float = 0.15) -> str:
    parts = []
    for _ in range(n_words):
        parts.append(rng.choice(words))
        if rng.random() < punct_prob:
            parts.append(rng.choice([".", ",", "!", "?"]))
    return " ".join(parts)


def make_doc(
    doc_id: str,
    text: str,
    label: Label = Label.REAL,
    split: Split = Split.TRAIN,
    language: str = "en",
) -> Document:
    return Document(id=doc_id, text=text, label=label, split=split, language=language)


def make_corpus(texts: List[str], labels: Optional[List[Label]] = None,
                splits: Optional[List[Split]] = None) -> Corpus:
    docs = []
    for i, text in enumerate(texts):
        docs.append(make_doc(
            f"d{i}",
            text,
            labels[i] if labels else Label.REAL,
            splits[i] if splits else Split.TRAIN,
        ))
    return Corpus(docs)


def random_corpus(rng: random.Random, n_docs: int, words: List[str]) -> Corpus:
    docs = []
    for i in range(n_docs):
        docs.append(make_doc(
            f"d{i}",
            random_word_text(rng, words, rng.randint(3, 25)),
            rng.choice([Label.REAL, Label.FAKE]),
            rng.choice([Split.TRAIN, Split.TEST]),
        ))
    return Corpus(docs)


def random_bundle(rng: random.Random, words: List[str], dim: int = 3) -> LexiconBundle:
    """Random POS tags, synonym lists and embeddings over a word pool."""
    pos_entries = {}
    for w in words:
        if rng.random() < 0.7:
            pos_entries[w] = rng.choice([Pos.NOUN, Pos.VERB, Pos.ADJECTIVE, Pos.PRONOUN, Pos.OTHER])
    syn_entries: Dict[str, List[str]] = {}
    for w in words:
        if rng.random() < 0.5:
            candidates = [c for c in words if c != w]
            k = rng.randint(1, min(3, len(candidates)))
            syn_entries[w] = rng.sample(candidates, k)
    vectors = {}
    for w in words:
        if rng.random() < 0.85:
            vec = np.array([rng.gauss(0, 1) for _ in range(dim)])
            if not vec.any():
                vec[0] = 1.0
            vectors[w] = vec
    return LexiconBundle(
        pos=PosLexicon(pos_entries),
        synonyms=SynonymDict(syn_entries),
        embeddings=EmbeddingTable(dim, vectors),
    )


def brute_force_patience(val_accs: List[float], patience: int) -> Tuple[int, int, bool]:
    """Independent simulation of the early-stopping rule.

    Returns (epochs_run, best_epoch, stopped_early), epochs 1-based.  The
    best epoch is the first strict maximum so far; training stops the first
    time `patience` consecutive epochs have passed without improvement.
    """
    best = float("-inf")
    best_epoch = 0
    for epoch, acc in enumerate(val_accs, start=1):
        if acc > best:
            best = acc
            best_epoch = epoch
        elif epoch - best_epoch >= patience:
            return epoch, best_epoch, True
    return len(val_accs), best_epoch, False


# --------------------------------------------------------------------------
# synthetic news generator: two partially separable class vocabularies

REAL_POOL = [
    "study", "hospital", "minister", "official", "data", "research",
    "vaccine", "dose", "trial", "report", "health", "agency", "results",
    "scientists", "patients", "medicine", "approval", "survey",
    "statistics", "committee",
]
FAKE_POOL = [
    "miracle", "conspiracy", "chip", "secret", "cure", "hoax", "exposed",
    "shocking", "truth", "hidden", "plot", "scandal", "leaked",
    "underground", "forbidden", "coverup", "elite", "agenda", "scheme",
    "magnet",
]
SHARED_POOL = [
    "the", "of", "news", "today", "people", "world", "country", "said",
    "new", "about", "this", "that", "week", "city", "government", "time",
    "public", "many", "more", "after",
]

# parallel alternates used as synonyms for the class vocabulary
REAL_ALT = [w + "al" for w in REAL_POOL]
FAKE_ALT = [w + "ic" for w in FAKE_POOL]


def _news_text(rng: random.Random, pool: List[str], n_words: int) -> str:
    words = []
    for _ in range(n_words):
        src = SHARED_POOL if rng.random() < 0.5 else pool
        words.append(rng.choice(src))
    return " ".join(words) + "."


def synthetic_news_corpus(
    seed: int,
    n_train_per_class: int,
    n_test_per_class: int,
    ambiguous_frac: float = 0.04,
    min_words: int = 40,
    max_words: int = 120,
) -> Corpus:
    """Labeled corpus with partially separable class vocabularies.

    A small fraction of documents draw only on the shared pool and get a
    random label; those are genuinely unlearnable and keep accuracies off
    1.0.
    """
    rng = random.Random(seed)
    docs = []
    counter = 0
    for split, per_class in ((Split.TRAIN, n_train_per_class), (Split.TEST, n_test_per_class)):
        for label, pool in ((Label.REAL, REAL_POOL), (Label.FAKE, FAKE_POOL)):
            for _ in range(per_class):
                n_words = rng.randint(min_words, max_words)
                if rng.random() < ambiguous_frac:
                    text = " ".join(rng.choice(SHARED_POOL) for _ in range(n_words)) + "."
                    doc_label = rng.choice([Label.REAL, Label.FAKE])
                else:
                    text = _news_text(rng, pool, n_words)
                    doc_label = label
                docs.append(make_doc(f"n{counter}", text, doc_label, split))
                counter += 1
    return Corpus(docs, provenance=f"synthetic(seed={seed})")


def synthetic_news_bundle(seed: int) -> LexiconBundle:
    """Lexicon bundle matching the synthetic news vocabulary.

    Class-pool words are nouns with one synonym each (its parallel
    alternate); synonym vectors sit close to the original so most pairs
    clear a 0.4 similarity threshold, with a few deliberately below it.
    """
    rng = np.random.default_rng(seed)
    pos_entries = {w: Pos.NOUN for w in REAL_POOL + FAKE_POOL}
    pos_entries.update({w: Pos.OTHER for w in SHARED_POOL})
    syn_entries = {}
    vectors = {}
    dim = 8
    for pool, alts in ((REAL_POOL, REAL_ALT), (FAKE_POOL, FAKE_ALT)):
        for i, (w, alt) in enumerate(zip(pool, alts)):
            syn_entries[w] = [alt]
            base = rng.normal(0, 1, dim)
            vectors[w] = base
            if i % 5 == 4:
                # every fifth pair lands on a dissimilar vector
                vectors[alt] = -base + rng.normal(0, 0.1, dim)
            else:
                vectors[alt] = base + rng.normal(0, 0.2, dim)
    return LexiconBundle(
        pos=PosLexicon(pos_entries),
        synonyms=SynonymDict(syn_entries),
        embeddings=EmbeddingTable(dim, vectors),
    )
