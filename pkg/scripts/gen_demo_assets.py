#!/usr/bin/env python3
"""Regenerate the demo assets under demo/ (fully deterministic).

The demo corpus is a 40-document synthetic bilingual news set: English
source texts whose vocabulary the mock translation map covers, a miniature
lexicon bundle for the augmenter, a stopword list and a pipeline config.
Everything the pipeline command needs to run offline.
"""

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from textaug.corpus import Corpus, Document, Label, Split, save_corpus

DEMO_DIR = Path(__file__).resolve().parents[1] / "demo"

REAL_POOL = ["vaccine", "study", "hospital", "health", "data", "minister",
             "trial", "dose", "research", "official", "report", "agency"]
FAKE_POOL = ["chip", "secret", "miracle", "cure", "plot", "hoax", "exposed",
             "conspiracy", "scandal", "truth", "hidden", "scheme"]
SHARED_POOL = ["the", "news", "today", "people", "said", "about", "new",
               "country", "world", "this"]

SYNONYMS = {
    "vaccine": ["inoculation"],
    "study": ["survey"],
    "cure": ["remedy"],
    "plot": ["conspiracy"],
    "report": ["bulletin"],
    "hoax": ["fraud"],
}

NOUNS = REAL_POOL + ["chip", "secret", "miracle", "cure", "plot", "hoax",
                     "conspiracy", "scandal", "truth", "scheme"]

TRANSLATION_MAP = {
    "vaccine": "vacina", "study": "estudo", "hospital": "hospital",
    "health": "saude", "data": "dados", "minister": "ministro",
    "trial": "ensaio", "dose": "dose", "research": "pesquisa",
    "official": "oficial", "report": "relatorio", "agency": "agencia",
    "chip": "chip", "secret": "segredo", "miracle": "milagre",
    "cure": "cura", "plot": "trama", "hoax": "boato", "exposed": "exposto",
    "conspiracy": "conspiracao", "scandal": "escandalo", "truth": "verdade",
    "hidden": "oculto", "scheme": "esquema",
    "the": "o", "news": "noticias", "today": "hoje", "people": "pessoas",
    "said": "disse", "about": "sobre", "new": "novo", "country": "pais",
    "world": "mundo", "this": "isto",
    "inoculation": "inoculacao", "survey": "levantamento",
    "remedy": "remedio", "bulletin": "boletim", "fraud": "fraude",
}

STOPWORDS = ["the", "this", "about", "o", "a", "de", "que", "e", "isto",
             "sobre", "hoje", "today"]


def doc_text(rng, pool):
    words = []
    n_words = rng.randint(18, 40)
    for i in range(n_words):
        src = SHARED_POOL if rng.random() < 0.5 else pool
        words.append(rng.choice(src))
        if (i + 1) % rng.randint(6, 9) == 0:
            words[-1] += "."
    text = " ".join(words)
    return text if text.endswith(".") else text + "."


def build_corpus():
    rng = random.Random(2024)
    docs = []
    counter = 0
    plan = [(Split.TRAIN, 16), (Split.TEST, 4)]
    for split, per_class in plan:
        for label, pool in ((Label.REAL, REAL_POOL), (Label.FAKE, FAKE_POOL)):
            for _ in range(per_class):
                docs.append(Document(
                    id=f"demo{counter:02d}",
                    text=doc_text(rng, pool),
                    label=label,
                    split=split,
                    language="en",
                ))
                counter += 1
    return Corpus(docs, provenance="demo generator")


def build_embeddings():
    """Vectors with synonym pairs mostly above the 0.4 similarity mark."""
    rng = random.Random(77)
    words = sorted(set(NOUNS) | {s for syns in SYNONYMS.values() for s in syns})
    vectors = {}
    for w in words:
        vectors[w] = [round(rng.gauss(0, 1), 4) for _ in range(4)]
    for head, syns in SYNONYMS.items():
        for i, syn in enumerate(syns):
            base = vectors[head]
            if head == "cure":
                # keep one pair dissimilar so the threshold rule shows both sides
                vectors[syn] = [round(-x, 4) for x in base]
            else:
                vectors[syn] = [round(x + rng.gauss(0, 0.25), 4) for x in base]
    return vectors


def main():
    DEMO_DIR.mkdir(exist_ok=True)
    lexicon_dir = DEMO_DIR / "lexicon"
    lexicon_dir.mkdir(exist_ok=True)

    save_corpus(build_corpus(), DEMO_DIR / "corpus.csv")

    with open(lexicon_dir / "pos.tsv", "w", encoding="utf-8") as f:
        for word in sorted(set(NOUNS)):
            f.write(f"{word}\tnoun\n")
        f.write("said\tverb\nexposed\tverb\nhidden\tadj\nnew\tadj\nthis\tpron\n")

    with open(lexicon_dir / "synonyms.json", "w", encoding="utf-8") as f:
        json.dump(SYNONYMS, f, indent=2, sort_keys=True)
        f.write("\n")

    vectors = build_embeddings()
    with open(lexicon_dir / "embeddings.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(vectors)} 4\n")
        for word in sorted(vectors):
            f.write(word + " " + " ".join(str(x) for x in vectors[word]) + "\n")

    with open(DEMO_DIR / "translation_map.json", "w", encoding="utf-8") as f:
        json.dump(TRANSLATION_MAP, f, indent=2, sort_keys=True)
        f.write("\n")

    with open(DEMO_DIR / "stopwords.txt", "w", encoding="utf-8") as f:
        f.write("# small default English + Portuguese stopword list\n")
        for w in STOPWORDS:
            f.write(w + "\n")

    (DEMO_DIR / "demo.toml").write_text(
        '# demo pipeline: 40-document synthetic bilingual corpus\n'
        '[paths]\n'
        'corpus = "corpus.csv"\n'
        'lexicon = "lexicon"\n'
        'stopwords = "stopwords.txt"\n'
        'out_dir = "out"\n'
        '\n'
        '[augment]\n'
        'threshold = 0.4\n'
        'mode = "append"\n'
        'seed = 13\n'
        '\n'
        '[translate]\n'
        'backend = "mock:translation_map.json"\n'
        'source_lang = "en"\n'
        'target_lang = "pt"\n'
        'max_chars = 5000\n'
        'delay = "0s"\n'
        '\n'
        '[segment]\n'
        'window_size = 150\n'
        'overlap = 30\n'
        'max_seq_len = 512\n'
        '\n'
        '[model]\n'
        'embed_dim = 16\n'
        'dense_dims = [32, 16, 8, 4, 1]\n'
        'dropout_rate = 0.1\n'
        'learning_rate = 0.1\n'
        'seed = 13\n'
        '\n'
        '[train]\n'
        'epochs = 10\n'
        'patience = 3\n'
        'batch_size = 8\n'
        'val_fraction = 0.15\n'
        'vocab_size = 2000\n',
        encoding="utf-8",
    )
    print(f"demo assets written to {DEMO_DIR}")


if __name__ == "__main__":
    main()
