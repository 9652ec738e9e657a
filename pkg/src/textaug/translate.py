"""Sentence-chunked translation through a pluggable, rate-limited backend.

Texts longer than the per-request character limit are split at sentence
boundaries (period rule) and greedily packed into chunks that each fit the
limit; shorter texts go through whole.  The backend never sees an oversize
chunk -- a single sentence that exceeds the limit is refused up front
instead of failing silently mid-run.

Corpus runs are sequential (the rate limit is a global ordering constraint)
and checkpointed after every document so an hour-scale batch can resume
where it stopped.
"""

from __future__ import annotations

import json
import shlex
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from .corpus import Corpus, Document, relabeled, with_documents
from .errors import TextaugError
from .textkit import split_sentences, tokenize

MAX_RETRIES = 3


class TranslateError(TextaugError):
    pass


class OversizeSentence(TranslateError):
    def __init__(self, index: int, length: int, max_chars: int):
        self.index = index
        super().__init__(
            f"sentence {index} is {length} characters, exceeds the {max_chars}-character limit"
        )


class BackendFailure(TranslateError):
    def __init__(self, chunk_index: int, cause: str):
        self.chunk_index = chunk_index
        super().__init__(f"backend failed on chunk {chunk_index} after {MAX_RETRIES} retries: {cause}")


@dataclass(frozen=True)
class TranslateConfig:
    source_lang: str = "en"
    target_lang: str = "pt"
    max_chars: int = 5000
    delay: float = 1.0  # seconds between requests
    per_sentence: bool = False  # one request per sentence for oversize texts

    def __post_init__(self):
        if self.max_chars < 1:
            raise ValueError("max_chars must be >= 1")
        if self.delay < 0:
            raise ValueError("delay must be >= 0")


class TranslationBackend:
    """Interface: translate one chunk, possibly failing transiently.

    Implementations signal failure by raising; the driver retries with a
    doubling delay before giving up.
    """

    def translate(self, chunk: str, source: str, target: str) -> str:
        raise NotImplementedError


class MockBackend(TranslationBackend):
    """Deterministic word-map substitution backend for offline runs.

    Words found in the map (case-folded lookup) are replaced; everything
    else passes through.  Every call is logged with a timestamp, which the
    tests use to assert chunk sizes and pacing.
    """

    def __init__(self, word_map: Optional[Dict[str, str]] = None):
        self.word_map = {k.lower(): v for k, v in (word_map or {}).items()}
        self.calls: List[dict] = []

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "MockBackend":
        with open(path, "r", encoding="utf-8") as f:
            word_map = json.load(f)
        if not isinstance(word_map, dict):
            raise TranslateError(f"{path}: translation map must be a JSON object")
        return cls(word_map)

    def translate(self, chunk: str, source: str, target: str) -> str:
        self.calls.append({"chunk": chunk, "time": time.monotonic()})
        seq = tokenize(chunk)
        parts = []
        cursor = 0
        for tok in seq.tokens:
            parts.append(chunk[cursor:tok.start])
            parts.append(self.word_map.get(tok.normalized, tok.surface))
            cursor = tok.end
        parts.append(chunk[cursor:])
        return "".join(parts)


class CommandBackend(TranslationBackend):
    """Run an external program per chunk: chunk on stdin, translation on stdout.

    Exit status 0 means success; anything else is treated as a transient
    failure and retried by the driver.
    """

    def __init__(self, command: str):
        self.argv = shlex.split(command)

    def translate(self, chunk: str, source: str, target: str) -> str:
        proc = subprocess.run(
            self.argv + [source, target],
            input=chunk.encode("utf-8"),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        if proc.returncode != 0:
            raise TranslateError(
                f"command backend exited {proc.returncode}: {proc.stderr.decode('utf-8', 'replace').strip()}"
            )
        return proc.stdout.decode("utf-8")


def chunk_for_translation(text: str, max_chars: int, per_sentence: bool = False) -> List[str]:
    """Break a text into chunks of at most ``max_chars`` characters.

    Texts at or under the limit come back as a single chunk; longer texts
    are split into sentences and greedily packed.  ``per_sentence`` skips
    the packing and sends one sentence per chunk instead (more requests,
    same correctness contract).  Concatenating the chunks always reproduces
    the input.
    """
    if len(text) <= max_chars:
        return [text]
    sentences = split_sentences(text)
    for i, sentence in enumerate(sentences):
        if len(sentence) > max_chars:
            raise OversizeSentence(i, len(sentence), max_chars)
    if per_sentence:
        return sentences
    chunks: List[str] = []
    current = ""
    for sentence in sentences:
        if len(current) + len(sentence) <= max_chars:
            current += sentence
        else:
            chunks.append(current)
            current = sentence
    if current:
        chunks.append(current)
    return chunks


def _call_with_retries(
    backend: TranslationBackend,
    chunk: str,
    chunk_index: int,
    cfg: TranslateConfig,
    sleep: Callable[[float], None],
) -> str:
    backoff = cfg.delay
    last_error = ""
    for attempt in range(1 + MAX_RETRIES):
        try:
            result = backend.translate(chunk, cfg.source_lang, cfg.target_lang)
            sleep(cfg.delay)
            return result
        except Exception as e:  # transient backend trouble: back off and retry
            last_error = str(e) or type(e).__name__
            backoff *= 2
            if attempt < MAX_RETRIES:
                sleep(backoff)
    raise BackendFailure(chunk_index, last_error)


def translate_document(
    doc: Document,
    backend: TranslationBackend,
    cfg: TranslateConfig,
    sleep: Callable[[float], None] = time.sleep,
) -> Document:
    """Translate one document chunk by chunk, pausing ``cfg.delay`` per request.

    The result keeps id, label and split and switches language to the
    target.  Transient backend failures are retried up to 3 times with a
    doubling delay before ``BackendFailure`` is raised.
    """
    chunks = chunk_for_translation(doc.text, cfg.max_chars, cfg.per_sentence)
    translated = [
        _call_with_retries(backend, chunk, i, cfg, sleep)
        for i, chunk in enumerate(chunks)
    ]
    return relabeled(doc, text="".join(translated), language=cfg.target_lang)


@dataclass
class Checkpoint:
    """Completed-document log: one JSON line per finished document id.

    Each line carries the translated text alongside the id so a resumed run
    can restore finished work without calling the backend again.
    """

    path: Optional[Path] = None
    completed: Dict[str, dict] = field(default_factory=dict)

    @classmethod
    def load(cls, path: Union[str, Path, None]) -> "Checkpoint":
        if path is None:
            return cls(None)
        path = Path(path)
        completed: Dict[str, dict] = {}
        if path.exists():
            with open(path, "r", encoding="utf-8") as f:
                for line in f:
                    if not line.strip():
                        continue
                    entry = json.loads(line)
                    completed[entry["id"]] = entry
        return cls(path, completed)

    def record(self, doc: Document) -> None:
        entry = {"id": doc.id, "text": doc.text, "language": doc.language}
        self.completed[doc.id] = entry
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry, ensure_ascii=False) + "\n")
                f.flush()

    def restore(self, doc: Document) -> Optional[Document]:
        entry = self.completed.get(doc.id)
        if entry is None:
            return None
        return relabeled(doc, text=entry["text"], language=entry["language"])


def translate_corpus(
    corpus: Corpus,
    backend: TranslationBackend,
    cfg: TranslateConfig,
    checkpoint_path: Union[str, Path, None] = None,
    sleep: Callable[[float], None] = time.sleep,
) -> Corpus:
    """Translate all documents sequentially, checkpointing after each one.

    Documents already present in the checkpoint are restored from it and
    never sent to the backend again.
    """
    checkpoint = Checkpoint.load(checkpoint_path)
    out_docs: List[Document] = []
    for doc in corpus:
        restored = checkpoint.restore(doc)
        if restored is not None:
            out_docs.append(restored)
            continue
        translated = translate_document(doc, backend, cfg, sleep=sleep)
        checkpoint.record(translated)
        out_docs.append(translated)
    return with_documents(corpus, out_docs)
