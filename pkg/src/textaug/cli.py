"""Multi-command CLI: ingest, augment, translate, train, eval, classify,
stats and the full pipeline (augment -> translate -> train -> evaluate).

Conventions: data goes to files or stdout, logs go to stderr.  Domain
errors exit 1 with ``ERROR <code>: <detail>`` on stderr; usage errors exit
2.  Every command accepts ``--config`` (TOML or JSON); explicit flags win
over config-file values.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import augment as augment_mod
from . import classifier, corpus as corpus_mod, lexicon as lexicon_mod
from . import segment as segment_mod
from . import textkit
from . import translate as translate_mod
from .errors import TextaugError


def log(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# config handling


class ConfigError(TextaugError):
    pass


class Config:
    """Pipeline config file wrapper; paths resolve relative to the file."""

    def __init__(self, data: dict, base_dir: Path):
        self.data = data
        self.base_dir = base_dir

    @classmethod
    def load(cls, path: Optional[str]) -> "Config":
        if path is None:
            return cls({}, Path.cwd())
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"config file not found: {p}")
        if p.suffix.lower() == ".json":
            with open(p, "r", encoding="utf-8") as f:
                data = json.load(f)
        else:
            try:
                import tomllib  # Python >= 3.11
            except ModuleNotFoundError:
                import tomli as tomllib
            with open(p, "rb") as f:
                data = tomllib.load(f)
        if not isinstance(data, dict):
            raise ConfigError(f"{p}: config root must be a table/object")
        return cls(data, p.parent)

    def get(self, section: str, key: str, default=None):
        return self.data.get(section, {}).get(key, default)

    def path(self, section: str, key: str, default=None) -> Optional[Path]:
        value = self.get(section, key, default)
        if value is None:
            return None
        p = Path(value)
        return p if p.is_absolute() else self.base_dir / p


def pick(flag_value, cfg: Config, section: str, key: str, default):
    """Flag if given, else config value, else hard default."""
    if flag_value is not None:
        return flag_value
    value = cfg.get(section, key)
    return default if value is None else value


def pick_path(flag_value, cfg: Config, section: str, key: str) -> Optional[Path]:
    if flag_value is not None:
        return Path(flag_value)
    return cfg.path(section, key)


def parse_duration(text) -> float:
    """Accept bare seconds ("1", "0.5"), "Ns"/"N s" and "Nms" forms."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    try:
        if s.endswith("ms"):
            return float(s[:-2]) / 1000.0
        if s.endswith("s"):
            return float(s[:-1])
        return float(s)
    except ValueError:
        raise ConfigError(f"cannot parse duration {text!r}") from None


def make_backend(spec: str) -> translate_mod.TranslationBackend:
    if spec.startswith("mock:"):
        return translate_mod.MockBackend.from_file(spec[len("mock:"):])
    if spec.startswith("command:"):
        return translate_mod.CommandBackend(spec[len("command:"):])
    raise ConfigError(f"unknown backend {spec!r} (expected mock:<mapfile> or command:<exe>)")


def require_exists(path: Path, what: str) -> Path:
    if not Path(path).exists():
        raise ConfigError(f"{what} not found: {path}")
    return Path(path)


# ---------------------------------------------------------------------------
# subcommands


def cmd_ingest(args) -> int:
    cfg = Config.load(args.config)
    in_path = pick_path(args.infile, cfg, "paths", "corpus")
    if in_path is None:
        raise ConfigError("ingest needs --in or [paths].corpus in the config")
    c = corpus_mod.load_corpus(in_path, args.informat)
    if args.out:
        corpus_mod.save_corpus(c, args.out, args.outformat)
        log(f"wrote {len(c)} documents to {args.out}")
    summary = {
        "documents": len(c),
        "train": sum(1 for d in c if d.split is corpus_mod.Split.TRAIN),
        "test": sum(1 for d in c if d.split is corpus_mod.Split.TEST),
        "real": sum(1 for d in c if d.label is corpus_mod.Label.REAL),
        "fake": sum(1 for d in c if d.label is corpus_mod.Label.FAKE),
    }
    print(json.dumps(summary, indent=2))
    return 0


def cmd_stats(args) -> int:
    cfg = Config.load(args.config)
    in_path = pick_path(args.infile, cfg, "paths", "corpus")
    if in_path is None:
        raise ConfigError("stats needs --in or [paths].corpus in the config")
    c = corpus_mod.load_corpus(in_path)
    stopwords = set()
    sw_path = pick_path(args.stopwords, cfg, "paths", "stopwords")
    if sw_path is not None:
        stopwords = textkit.load_stopwords(require_exists(sw_path, "stopword file"))
    table = textkit.word_frequencies(list(c), stopwords, args.top)
    if args.format == "json":
        print(textkit.frequency_json(table))
    else:
        sys.stdout.write(textkit.frequency_csv(table))
    return 0


def cmd_augment(args) -> int:
    cfg = Config.load(args.config)
    in_path = pick_path(args.infile, cfg, "paths", "corpus")
    lexicon_dir = pick_path(args.lexicon, cfg, "paths", "lexicon")
    if in_path is None or lexicon_dir is None or args.out is None:
        raise ConfigError("augment needs --in, --out and --lexicon (or config equivalents)")
    bundle = lexicon_mod.load_bundle(require_exists(lexicon_dir, "lexicon directory"))
    acfg = augment_mod.AugmentConfig(
        threshold=float(pick(args.threshold, cfg, "augment", "threshold", 0.40)),
        mode=augment_mod.AugmentMode(pick(args.mode, cfg, "augment", "mode", "append")),
        seed=int(pick(args.seed, cfg, "augment", "seed", 0)),
    )
    c = corpus_mod.load_corpus(in_path)
    out_corpus, traces = augment_mod.augment_corpus(c, bundle, acfg)
    corpus_mod.save_corpus(out_corpus, args.out)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as f:
            for doc, trace in zip(c, traces):
                for r in trace.replacements:
                    f.write(json.dumps({
                        "doc_id": doc.id,
                        "token_index": r.token_index,
                        "original": r.original,
                        "substitute": r.substitute,
                        "similarity": r.similarity,
                    }, ensure_ascii=False) + "\n")
    n_repl = sum(len(t.replacements) for t in traces)
    log(f"augmented {len(c)} documents ({n_repl} replacements) -> {len(out_corpus)} documents")
    return 0


def cmd_translate(args) -> int:
    cfg = Config.load(args.config)
    in_path = pick_path(args.infile, cfg, "paths", "corpus")
    backend_spec = pick(args.backend, cfg, "translate", "backend", None)
    if in_path is None or args.out is None or backend_spec is None:
        raise ConfigError("translate needs --in, --out and --backend (or config equivalents)")
    tcfg = translate_mod.TranslateConfig(
        source_lang=pick(args.src, cfg, "translate", "source_lang", "en"),
        target_lang=pick(args.tgt, cfg, "translate", "target_lang", "pt"),
        max_chars=int(pick(args.max_chars, cfg, "translate", "max_chars", 5000)),
        delay=parse_duration(pick(args.delay, cfg, "translate", "delay", 1.0)),
        per_sentence=bool(pick(args.per_sentence or None, cfg, "translate", "per_sentence", False)),
    )
    backend = make_backend(str(backend_spec))
    c = corpus_mod.load_corpus(in_path)
    out_corpus = translate_mod.translate_corpus(c, backend, tcfg, checkpoint_path=args.checkpoint)
    corpus_mod.save_corpus(out_corpus, args.out)
    log(f"translated {len(c)} documents {tcfg.source_lang}->{tcfg.target_lang} -> {args.out}")
    return 0


def _load_or_build_vocab(vocab_path: Path, train_docs, size: int) -> segment_mod.SubwordVocab:
    if vocab_path.exists():
        return segment_mod.load_vocab(vocab_path)
    vocab = segment_mod.build_vocab((d.text for d in train_docs), size=size)
    segment_mod.save_vocab(vocab, vocab_path)
    log(f"built vocabulary of {len(vocab)} pieces -> {vocab_path}")
    return vocab


def _segment_config(args, cfg: Config) -> segment_mod.SegmentConfig:
    return segment_mod.SegmentConfig(
        window_size=int(pick(getattr(args, "window_size", None), cfg, "segment", "window_size", 150)),
        overlap=int(pick(getattr(args, "overlap", None), cfg, "segment", "overlap", 30)),
        max_seq_len=int(pick(getattr(args, "max_seq_len", None), cfg, "segment", "max_seq_len", 512)),
    )


def cmd_train(args) -> int:
    cfg = Config.load(args.config)
    train_path = pick_path(args.train, cfg, "paths", "corpus")
    vocab_path = pick_path(args.vocab, cfg, "paths", "vocab")
    model_path = pick_path(args.out, cfg, "paths", "model")
    if train_path is None or vocab_path is None or model_path is None:
        raise ConfigError("train needs --train, --vocab and --out (or config equivalents)")

    full = corpus_mod.load_corpus(require_exists(train_path, "training corpus"))
    train_split = full.only_split(corpus_mod.Split.TRAIN)
    if len(train_split) == 0:
        raise classifier.EmptyCorpus("no documents with split=train in the corpus")

    seed = int(pick(args.seed, cfg, "model", "seed", 0))
    mcfg = classifier.ModelConfig(
        embed_dim=int(pick(None, cfg, "model", "embed_dim", 64)),
        dense_dims=tuple(cfg.get("model", "dense_dims", (256, 128, 64, 32, 1))),
        dropout_rate=float(pick(None, cfg, "model", "dropout_rate", 0.1)),
        learning_rate=float(pick(None, cfg, "model", "learning_rate", 1e-3)),
        seed=seed,
    )
    tcfg = classifier.TrainConfig(
        epochs=int(pick(args.epochs, cfg, "train", "epochs", 10)),
        patience=int(pick(args.patience, cfg, "train", "patience", 3)),
        batch_size=int(pick(args.batch_size, cfg, "train", "batch_size", 32)),
    )
    scfg = _segment_config(args, cfg)
    fraction = float(pick(args.val_fraction, cfg, "train", "val_fraction", 0.1))
    vocab_size = int(pick(args.vocab_size, cfg, "train", "vocab_size", segment_mod.DEFAULT_VOCAB_SIZE))

    vocab = _load_or_build_vocab(vocab_path, list(train_split), vocab_size)
    train_part, val_part = corpus_mod.split_holdout(train_split, fraction, seed)
    log(f"training on {len(train_part)} documents, validating on {len(val_part)}")
    params, report = classifier.train(train_part, val_part, vocab, mcfg, tcfg, scfg)
    classifier.save_model(model_path, params, mcfg, vocab)
    log(f"wrote model to {model_path} (best epoch {report.best_epoch}, "
        f"stopped early: {report.stopped_early})")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(classifier.report_json(report))
    print(classifier.report_json(report))
    return 0


def _load_model_and_vocab(model_path, vocab_path):
    params, mcfg, digest = classifier.load_model(require_exists(Path(model_path), "model file"))
    vocab = segment_mod.load_vocab(require_exists(Path(vocab_path), "vocabulary file"))
    classifier.check_vocab_digest(digest, vocab)
    return params, mcfg, vocab


def cmd_eval(args) -> int:
    cfg = Config.load(args.config)
    model_path = pick_path(args.model, cfg, "paths", "model")
    vocab_path = pick_path(args.vocab, cfg, "paths", "vocab")
    test_path = pick_path(args.test, cfg, "paths", "corpus")
    if model_path is None or vocab_path is None or test_path is None:
        raise ConfigError("eval needs --model, --vocab and --test (or config equivalents)")
    params, _, vocab = _load_model_and_vocab(model_path, vocab_path)
    scfg = _segment_config(args, cfg)

    full = corpus_mod.load_corpus(test_path)
    test_split = full.only_split(corpus_mod.Split.TEST)
    if len(test_split) == 0:
        raise classifier.EmptyCorpus("no documents with split=test in the corpus")
    metrics = classifier.evaluate(test_split, params, vocab, scfg)

    if args.misclassified_freq:
        stopwords = set()
        sw_path = pick_path(args.stopwords, cfg, "paths", "stopwords")
        if sw_path is not None:
            stopwords = textkit.load_stopwords(require_exists(sw_path, "stopword file"))
        bad_ids = set(metrics.misclassified_ids)
        bad_docs = [d for d in test_split if d.id in bad_ids]
        table = textkit.FrequencyTable([])
        if bad_docs:
            table = textkit.word_frequencies(bad_docs, stopwords, args.top)
        with open(args.misclassified_freq, "w", encoding="utf-8") as f:
            f.write(textkit.frequency_csv(table))

    tp, fp, tn, fn = metrics.confusion
    print(json.dumps({
        "accuracy": metrics.accuracy,
        "loss": metrics.loss,
        "confusion": {"tp": tp, "fp": fp, "tn": tn, "fn": fn},
        "misclassified_ids": metrics.misclassified_ids,
    }, indent=2))
    return 0


def cmd_classify(args) -> int:
    cfg = Config.load(args.config)
    model_path = pick_path(args.model, cfg, "paths", "model")
    vocab_path = pick_path(args.vocab, cfg, "paths", "vocab")
    if model_path is None or vocab_path is None:
        raise ConfigError("classify needs --model and --vocab (or config equivalents)")
    params, _, vocab = _load_model_and_vocab(model_path, vocab_path)
    scfg = _segment_config(args, cfg)

    if args.text == "-":
        doc_id, text = "stdin", sys.stdin.read()
    else:
        doc_id = args.text
        with open(args.text, "r", encoding="utf-8") as f:
            text = f.read()
    if not text.strip():
        raise classifier.EmptyDocument("no text to classify")
    doc = corpus_mod.Document(
        id=doc_id, text=text, label=corpus_mod.Label.REAL, split=corpus_mod.Split.TEST
    )
    pred = classifier.predict(doc, params, vocab, scfg)
    print(json.dumps({
        "doc_id": pred.doc_id,
        "prob_fake": pred.prob_fake,
        "segment_probs": pred.segment_probs,
        "label": pred.label.value,
    }, indent=2))
    return 0


def cmd_pipeline(args) -> int:
    if args.config is None:
        raise ConfigError("pipeline needs --config")
    cfg = Config.load(args.config)

    corpus_path = require_exists(cfg.path("paths", "corpus"), "corpus")
    lexicon_dir = require_exists(cfg.path("paths", "lexicon"), "lexicon directory")
    for name in lexicon_mod.BUNDLE_FILES.values():
        require_exists(lexicon_dir / name, f"lexicon file {name}")
    out_dir = cfg.path("paths", "out_dir") or (cfg.base_dir / "out")
    vocab_path = cfg.path("paths", "vocab") or (out_dir / "vocab.txt")
    model_path = cfg.path("paths", "model") or (out_dir / "model.taug")
    sw_path = cfg.path("paths", "stopwords")
    if sw_path is not None:
        require_exists(sw_path, "stopword file")
    backend_spec = cfg.get("translate", "backend")
    if backend_spec is None:
        raise ConfigError("pipeline needs [translate].backend")
    if str(backend_spec).startswith("mock:"):
        map_path = Path(str(backend_spec)[len("mock:"):])
        if not map_path.is_absolute():
            map_path = cfg.base_dir / map_path
        require_exists(map_path, "translation map")
        backend_spec = f"mock:{map_path}"
    backend = make_backend(str(backend_spec))

    out_dir.mkdir(parents=True, exist_ok=True)

    full = corpus_mod.load_corpus(corpus_path)
    train_docs = full.only_split(corpus_mod.Split.TRAIN)
    test_docs = full.only_split(corpus_mod.Split.TEST)
    if len(train_docs) == 0 or len(test_docs) == 0:
        raise classifier.EmptyCorpus("pipeline corpus needs both train and test documents")
    log(f"loaded {len(full)} documents ({len(train_docs)} train, {len(test_docs)} test)")

    # 1. augmentation (training split only)
    bundle = lexicon_mod.load_bundle(lexicon_dir)
    acfg = augment_mod.AugmentConfig(
        threshold=float(cfg.get("augment", "threshold", 0.40)),
        mode=augment_mod.AugmentMode(cfg.get("augment", "mode", "append")),
        seed=int(cfg.get("augment", "seed", 0)),
    )
    augmented_train, traces = augment_mod.augment_corpus(train_docs, bundle, acfg)
    n_repl = sum(len(t.replacements) for t in traces)
    log(f"augmentation: {len(train_docs)} -> {len(augmented_train)} documents, {n_repl} replacements")
    staged = corpus_mod.with_documents(full, list(augmented_train) + list(test_docs))
    augmented_path = out_dir / "augmented.csv"
    corpus_mod.save_corpus(staged, augmented_path)

    # 2. translation (whole staged corpus, checkpointed)
    tcfg = translate_mod.TranslateConfig(
        source_lang=cfg.get("translate", "source_lang", "en"),
        target_lang=cfg.get("translate", "target_lang", "pt"),
        max_chars=int(cfg.get("translate", "max_chars", 5000)),
        delay=parse_duration(cfg.get("translate", "delay", 1.0)),
    )
    checkpoint = out_dir / "translate.ckpt.jsonl"
    translated = translate_mod.translate_corpus(staged, backend, tcfg, checkpoint_path=checkpoint)
    translated_path = out_dir / "translated.csv"
    corpus_mod.save_corpus(translated, translated_path)
    log(f"translation: {len(translated)} documents -> {translated_path}")

    # 3. vocabulary + training
    trans_train = translated.only_split(corpus_mod.Split.TRAIN)
    trans_test = translated.only_split(corpus_mod.Split.TEST)
    vocab_size = int(cfg.get("train", "vocab_size", segment_mod.DEFAULT_VOCAB_SIZE))
    vocab = _load_or_build_vocab(vocab_path, list(trans_train), vocab_size)

    seed = int(cfg.get("model", "seed", 0))
    mcfg = classifier.ModelConfig(
        embed_dim=int(cfg.get("model", "embed_dim", 64)),
        dense_dims=tuple(cfg.get("model", "dense_dims", (256, 128, 64, 32, 1))),
        dropout_rate=float(cfg.get("model", "dropout_rate", 0.1)),
        learning_rate=float(cfg.get("model", "learning_rate", 1e-3)),
        seed=seed,
    )
    tcfg_train = classifier.TrainConfig(
        epochs=int(cfg.get("train", "epochs", 10)),
        patience=int(cfg.get("train", "patience", 3)),
        batch_size=int(cfg.get("train", "batch_size", 32)),
    )
    scfg = segment_mod.SegmentConfig(
        window_size=int(cfg.get("segment", "window_size", 150)),
        overlap=int(cfg.get("segment", "overlap", 30)),
        max_seq_len=int(cfg.get("segment", "max_seq_len", 512)),
    )
    fraction = float(cfg.get("train", "val_fraction", 0.1))
    train_part, val_part = corpus_mod.split_holdout(trans_train, fraction, seed)
    log(f"training on {len(train_part)} documents, validating on {len(val_part)}")
    params, report = classifier.train(train_part, val_part, vocab, mcfg, tcfg_train, scfg)
    classifier.save_model(model_path, params, mcfg, vocab)
    report_path = out_dir / "train_report.json"
    with open(report_path, "w", encoding="utf-8") as f:
        f.write(classifier.report_json(report))
    log(f"model -> {model_path}; report -> {report_path}")

    # 4. evaluation + misclassification diagnostics
    metrics = classifier.evaluate(trans_test, params, vocab, scfg)
    stopwords = textkit.load_stopwords(sw_path) if sw_path is not None else set()
    bad_ids = set(metrics.misclassified_ids)
    bad_docs = [d for d in trans_test if d.id in bad_ids]
    table = textkit.word_frequencies(bad_docs, stopwords, int(cfg.get("stats", "top", 20))) \
        if bad_docs else textkit.FrequencyTable([])
    freq_path = out_dir / "misclassified_freq.csv"
    with open(freq_path, "w", encoding="utf-8") as f:
        f.write(textkit.frequency_csv(table))

    tp, fp, tn, fn = metrics.confusion
    metrics_payload = {
        "accuracy": metrics.accuracy,
        "loss": metrics.loss,
        "confusion": {"tp": tp, "fp": fp, "tn": tn, "fn": fn},
        "misclassified_ids": metrics.misclassified_ids,
    }
    metrics_path = out_dir / "eval_metrics.json"
    with open(metrics_path, "w", encoding="utf-8") as f:
        f.write(json.dumps(metrics_payload, indent=2))

    print(json.dumps({
        "model": str(model_path),
        "vocab": str(vocab_path),
        "train_report": str(report_path),
        "eval_metrics": str(metrics_path),
        "misclassified_freq": str(freq_path),
        "test_accuracy": metrics.accuracy,
        "general_accuracy": report.final.general_accuracy,
        "validation_accuracy": report.final.validation_accuracy,
    }, indent=2))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textaug",
        description="Corpus toolkit: synonym augmentation, chunked translation, "
                    "windowed segmentation and a dense-layer news classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", help="TOML or JSON config file; flags override it")

    p = sub.add_parser("ingest", help="validate a corpus file, optionally convert formats")
    p.add_argument("--in", dest="infile")
    p.add_argument("--in-format", dest="informat", choices=["csv", "jsonl"])
    p.add_argument("--out")
    p.add_argument("--out-format", dest="outformat", choices=["csv", "jsonl"])
    add_config(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="word-frequency table of a corpus")
    p.add_argument("--in", dest="infile")
    p.add_argument("--top", type=int, default=20)
    p.add_argument("--stopwords")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_config(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("augment", help="synonym-substitution augmentation")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--lexicon", help="directory with pos.tsv, synonyms.json, embeddings.txt")
    p.add_argument("--threshold", type=float)
    p.add_argument("--mode", choices=["append", "replace"])
    p.add_argument("--seed", type=int)
    p.add_argument("--trace", help="write replacement trace JSONL here")
    add_config(p)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("translate", help="translate a corpus through a backend")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--backend", help="mock:<mapfile> or command:<exe>")
    p.add_argument("--src")
    p.add_argument("--tgt")
    p.add_argument("--max-chars", dest="max_chars", type=int)
    p.add_argument("--delay", help="seconds between requests, e.g. 1s, 500ms, 0.25")
    p.add_argument("--per-sentence", dest="per_sentence", action="store_true",
                   help="one request per sentence for oversize texts (no packing)")
    p.add_argument("--checkpoint", help="JSONL progress log for resuming")
    add_config(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("train", help="train the classifier on split=train documents")
    p.add_argument("--train")
    p.add_argument("--val-fraction", dest="val_fraction", type=float)
    p.add_argument("--vocab", help="vocabulary file; built from the corpus when absent")
    p.add_argument("--vocab-size", dest="vocab_size", type=int)
    p.add_argument("--out", help="model file to write")
    p.add_argument("--epochs", type=int)
    p.add_argument("--patience", type=int)
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--report", help="write the full training report JSON here")
    add_config(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model on split=test documents")
    p.add_argument("--model")
    p.add_argument("--vocab")
    p.add_argument("--test")
    p.add_argument("--misclassified-freq", dest="misclassified_freq",
                   help="write word frequencies of misclassified documents (CSV)")
    p.add_argument("--stopwords")
    p.add_argument("--top", type=int, default=20)
    add_config(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="classify one text (file or - for stdin)")
    p.add_argument("--model")
    p.add_argument("--vocab")
    p.add_argument("--text", required=True, help="text file path, or - for stdin")
    add_config(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pipeline", help="run augment -> translate -> train -> eval")
    add_config(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TextaugError as e:
        print(f"ERROR {e.code}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"ERROR IoError: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"ERROR InvalidValue: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
