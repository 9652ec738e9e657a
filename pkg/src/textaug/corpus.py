"""Labeled news corpora: ingestion, validation, persistence and holdout splits.

A corpus is an ordered collection of documents, each carrying a binary
real/fake label and a train/test split assignment.  CSV is the canonical
interchange format (RFC-4180 quoting, fixed header); JSONL is supported for
texts where embedded newlines make CSV awkward to inspect.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, List, Tuple, Union

from .errors import TextaugError

CSV_HEADER = ["id", "text", "label", "split", "language"]


class Label(str, Enum):
    REAL = "real"
    FAKE = "fake"


class Split(str, Enum):
    TRAIN = "train"
    TEST = "test"


class CorpusError(TextaugError):
    pass


class MissingColumn(CorpusError):
    def __init__(self, column: str, row: int | None = None):
        self.column = column
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"missing column {column!r}{where}")


class EmptyText(CorpusError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"empty text at row {row}")


class DuplicateId(CorpusError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"duplicate document id {doc_id!r}")


class BadLabel(CorpusError):
    def __init__(self, row: int, value: str):
        self.row = row
        self.value = value
        super().__init__(f"bad label {value!r} at row {row} (expected 'real' or 'fake')")


class BadSplit(CorpusError):
    def __init__(self, row: int, value: str):
        self.row = row
        self.value = value
        super().__init__(f"bad split {value!r} at row {row} (expected 'train' or 'test')")


class BadRecord(CorpusError):
    def __init__(self, row: int, detail: str):
        self.row = row
        super().__init__(f"unreadable record at row {row}: {detail}")


class TooFewDocuments(CorpusError):
    pass


@dataclass(frozen=True)
class Document:
    """One news item. ``text`` must be non-empty after whitespace trimming."""

    id: str
    text: str
    label: Label
    split: Split
    language: str = "en"

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"document {self.id!r} has empty text")


@dataclass
class Corpus:
    """Ordered, duplicate-free list of documents.

    Iteration order is insertion order so that seeded downstream runs stay
    reproducible.
    """

    documents: List[Document] = field(default_factory=list)
    provenance: str = ""

    def __post_init__(self):
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise DuplicateId(doc.id)
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def split_counts(self) -> dict:
        counts: dict = {}
        for doc in self.documents:
            counts[doc.split] = counts.get(doc.split, 0) + 1
        return counts

    def only_split(self, split: Split) -> "Corpus":
        docs = [d for d in self.documents if d.split is split]
        return Corpus(docs, provenance=self.provenance)


def _parse_record(record: dict, row: int) -> Document:
    for key in CSV_HEADER:
        if key not in record or record[key] is None:
            raise MissingColumn(key, row)
    text = str(record["text"])
    if not text.strip():
        raise EmptyText(row)
    label_raw = str(record["label"])
    try:
        label = Label(label_raw)
    except ValueError:
        raise BadLabel(row, label_raw) from None
    split_raw = str(record["split"])
    try:
        split = Split(split_raw)
    except ValueError:
        raise BadSplit(row, split_raw) from None
    return Document(
        id=str(record["id"]),
        text=text,
        label=label,
        split=split,
        language=str(record["language"]),
    )


def load_corpus(path: Union[str, Path], format: str | None = None) -> Corpus:
    """Load and validate a corpus from a CSV or JSONL file.

    ``format`` is "csv" or "jsonl"; when omitted it is inferred from the
    file extension.  Row numbers in errors are 1-based data rows (the CSV
    header is row 0).
    """
    path = Path(path)
    fmt = format or _infer_format(path)
    documents: List[Document] = []
    seen: set = set()

    if fmt == "csv":
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            try:
                header = next(reader)
            except StopIteration:
                raise MissingColumn(CSV_HEADER[0]) from None
            for col in CSV_HEADER:
                if col not in header:
                    raise MissingColumn(col)
            idx = {col: header.index(col) for col in CSV_HEADER}
            for row_no, row in enumerate(reader, start=1):
                if len(row) < len(header):
                    raise BadRecord(row_no, f"expected {len(header)} fields, got {len(row)}")
                record = {col: row[idx[col]] for col in CSV_HEADER}
                doc = _parse_record(record, row_no)
                if doc.id in seen:
                    raise DuplicateId(doc.id)
                seen.add(doc.id)
                documents.append(doc)
    elif fmt == "jsonl":
        with open(path, "r", encoding="utf-8") as f:
            row_no = 0
            for line in f:
                if not line.strip():
                    continue
                row_no += 1
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as e:
                    raise BadRecord(row_no, str(e)) from None
                if not isinstance(record, dict):
                    raise BadRecord(row_no, "expected a JSON object")
                doc = _parse_record(record, row_no)
                if doc.id in seen:
                    raise DuplicateId(doc.id)
                seen.add(doc.id)
                documents.append(doc)
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")

    return Corpus(documents, provenance=str(path))


def save_corpus(corpus: Corpus, path: Union[str, Path], format: str | None = None) -> None:
    """Write a corpus so that ``load_corpus`` reproduces it field-for-field."""
    path = Path(path)
    fmt = format or _infer_format(path)
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_HEADER)
            for doc in corpus:
                writer.writerow([doc.id, doc.text, doc.label.value, doc.split.value, doc.language])
    elif fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as f:
            for doc in corpus:
                record = {
                    "id": doc.id,
                    "text": doc.text,
                    "label": doc.label.value,
                    "split": doc.split.value,
                    "language": doc.language,
                }
                f.write(json.dumps(record, ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")


def _infer_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix in (".jsonl", ".ndjson", ".json"):
        return "jsonl"
    raise ValueError(f"cannot infer corpus format from {path.name!r}; pass format=")


def split_holdout(corpus: Corpus, fraction: float, seed: int) -> Tuple[Corpus, Corpus]:
    """Stratified train/holdout partition.

    Per label, round(fraction * count) documents go to the holdout; the
    selection is drawn with a seeded shuffle so identical inputs always give
    identical partitions.  Both outputs keep the input's document order.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0,1), got {fraction}")

    by_label: dict = {}
    for doc in corpus:
        by_label.setdefault(doc.label, []).append(doc.id)
    for label, ids in by_label.items():
        if len(ids) < 2:
            raise TooFewDocuments(f"label {label.value!r} has {len(ids)} document(s), need at least 2")

    rng = random.Random(seed)
    holdout_ids: set = set()
    for label in sorted(by_label, key=lambda l: l.value):
        ids = list(by_label[label])
        rng.shuffle(ids)
        # round half away from zero, so e.g. 0.1 of 5 docs is 1, not 0
        k = int(fraction * len(ids) + 0.5)
        holdout_ids.update(ids[:k])

    train_docs = [d for d in corpus if d.id not in holdout_ids]
    holdout_docs = [d for d in corpus if d.id in holdout_ids]
    return (
        Corpus(train_docs, provenance=corpus.provenance),
        Corpus(holdout_docs, provenance=corpus.provenance),
    )


def with_documents(corpus: Corpus, documents: Iterable[Document]) -> Corpus:
    """New corpus with the same provenance and the given documents."""
    return Corpus(list(documents), provenance=corpus.provenance)


def relabeled(doc: Document, **changes) -> Document:
    """Copy of ``doc`` with the given fields replaced."""
    return replace(doc, **changes)
