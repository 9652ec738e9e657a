"""CLI contract: exit codes, error format, file outputs, idempotence."""

import hashlib
import io
import json
import shutil
import time
from pathlib import Path

import pytest

from textaug.cli import main

REPO_ROOT = Path(__file__).resolve().parents[1]

REAL_WORDS = ["vaccine", "study", "hospital", "data", "trial", "health"]
FAKE_WORDS = ["chip", "secret", "miracle", "plot", "hoax", "scheme"]


def write_tiny_corpus(path, n_train_per_class=8, n_test_per_class=2):
    rows = ["id,text,label,split,language"]
    i = 0
    for split, n in (("train", n_train_per_class), ("test", n_test_per_class)):
        for label, words in (("real", REAL_WORDS), ("fake", FAKE_WORDS)):
            for _ in range(n):
                text = " ".join(words[(i + k) % len(words)] for k in range(10))
                rows.append(f"t{i},{text},{label},{split},en")
                i += 1
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")


def write_lexicon(dirpath):
    dirpath.mkdir()
    (dirpath / "pos.tsv").write_text(
        "vaccine\tnoun\nchip\tnoun\nplot\tnoun\n", encoding="utf-8")
    (dirpath / "synonyms.json").write_text(
        '{"vaccine": ["inoculation"], "plot": ["scheme"]}', encoding="utf-8")
    (dirpath / "embeddings.txt").write_text(
        "4 2\nvaccine 1 0\ninoculation 0.8 0.6\nplot 0 1\nscheme 0 -1\n",
        encoding="utf-8")


@pytest.fixture
def workdir(tmp_path):
    write_tiny_corpus(tmp_path / "corpus.csv")
    write_lexicon(tmp_path / "lexicon")
    (tmp_path / "map.json").write_text(
        '{"vaccine": "vacina", "chip": "chip", "study": "estudo"}', encoding="utf-8")
    (tmp_path / "train.toml").write_text(
        "[model]\n"
        "embed_dim = 8\n"
        "dense_dims = [16, 8, 8, 4, 1]\n"
        "learning_rate = 0.3\n"
        "dropout_rate = 0.0\n"
        "seed = 3\n"
        "[train]\n"
        "epochs = 4\n"
        "patience = 4\n"
        "batch_size = 4\n"
        "val_fraction = 0.2\n"
        "vocab_size = 500\n",
        encoding="utf-8")
    return tmp_path


def sha(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class TestExitCodes:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2

    def test_missing_required_flag_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["classify"])  # --text is required
        assert err.value.code == 2

    def test_domain_error_exits_1_with_error_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,text,label,split,language\na,x,bogus,train,en\n", encoding="utf-8")
        assert main(["stats", "--in", str(bad)]) == 1
        err = capsys.readouterr().err
        assert err.startswith("ERROR BadLabel:")

    def test_missing_file_maps_to_io_error(self, tmp_path, capsys):
        assert main(["stats", "--in", str(tmp_path / "absent.csv")]) == 1
        assert capsys.readouterr().err.startswith("ERROR IoError:")


class TestStats:
    def test_csv_on_stdout(self, workdir, capsys):
        assert main(["stats", "--in", str(workdir / "corpus.csv"), "--top", "5"]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0] == "word,count"
        assert len(lines) == 6  # header + 5 rows

    def test_json_format(self, workdir, capsys):
        assert main(["stats", "--in", str(workdir / "corpus.csv"),
                     "--top", "3", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data) == 3
        assert all(isinstance(w, str) and c >= 1 for w, c in data)

    def test_stopwords_respected(self, workdir, capsys):
        sw = workdir / "stop.txt"
        sw.write_text("vaccine\nchip\n", encoding="utf-8")
        assert main(["stats", "--in", str(workdir / "corpus.csv"),
                     "--top", "50", "--stopwords", str(sw)]) == 0
        out = capsys.readouterr().out
        assert "vaccine" not in out and "chip" not in out


class TestIngest:
    def test_convert_and_summarize(self, workdir, capsys):
        out_path = workdir / "corpus.jsonl"
        assert main(["ingest", "--in", str(workdir / "corpus.csv"),
                     "--out", str(out_path)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary == {"documents": 20, "train": 16, "test": 4, "real": 10, "fake": 10}
        first = json.loads(out_path.read_text(encoding="utf-8").splitlines()[0])
        assert set(first) == {"id", "text", "label", "split", "language"}


class TestAugmentCommand:
    def test_append_with_trace(self, workdir, capsys):
        out_path = workdir / "augmented.csv"
        trace_path = workdir / "trace.jsonl"
        assert main(["augment", "--in", str(workdir / "corpus.csv"),
                     "--out", str(out_path), "--lexicon", str(workdir / "lexicon"),
                     "--threshold", "0.4", "--mode", "append",
                     "--trace", str(trace_path)]) == 0
        from textaug.corpus import load_corpus
        assert len(load_corpus(out_path)) == 40
        entries = [json.loads(line) for line in trace_path.read_text().splitlines()]
        assert entries, "expected at least one replacement"
        assert set(entries[0]) == {"doc_id", "token_index", "original", "substitute", "similarity"}
        assert all(e["similarity"] >= 0.4 for e in entries)

    def test_flag_overrides_config(self, workdir, capsys):
        cfg = workdir / "aug.toml"
        cfg.write_text("[augment]\nthreshold = 0.0\n", encoding="utf-8")
        out_path = workdir / "strict.csv"
        trace_path = workdir / "strict_trace.jsonl"
        # threshold 1.0 on the flag must beat 0.0 in the file
        assert main(["augment", "--in", str(workdir / "corpus.csv"),
                     "--out", str(out_path), "--lexicon", str(workdir / "lexicon"),
                     "--config", str(cfg), "--threshold", "1.0",
                     "--trace", str(trace_path)]) == 0
        assert trace_path.read_text() == ""


class TestTranslateCommand:
    def test_mock_backend_with_checkpoint(self, workdir, capsys):
        out_path = workdir / "translated.csv"
        ckpt = workdir / "ckpt.jsonl"
        assert main(["translate", "--in", str(workdir / "corpus.csv"),
                     "--out", str(out_path),
                     "--backend", f"mock:{workdir / 'map.json'}",
                     "--src", "en", "--tgt", "pt", "--delay", "0s",
                     "--checkpoint", str(ckpt)]) == 0
        from textaug.corpus import load_corpus
        translated = load_corpus(out_path)
        assert all(d.language == "pt" for d in translated)
        assert any("vacina" in d.text for d in translated)
        assert len(ckpt.read_text().splitlines()) == 20

    def test_malformed_backend_spec(self, workdir, capsys):
        assert main(["translate", "--in", str(workdir / "corpus.csv"),
                     "--out", str(workdir / "x.csv"), "--backend", "webapi:foo"]) == 1
        assert capsys.readouterr().err.startswith("ERROR ConfigError:")


class TestTrainEvalClassify:
    def _train(self, workdir, capsys):
        rc = main(["train", "--train", str(workdir / "corpus.csv"),
                   "--vocab", str(workdir / "vocab.txt"),
                   "--out", str(workdir / "model.taug"),
                   "--config", str(workdir / "train.toml")])
        assert rc == 0
        return json.loads(capsys.readouterr().out)

    def test_train_writes_model_vocab_and_report(self, workdir, capsys):
        report = self._train(workdir, capsys)
        assert (workdir / "model.taug").exists()
        assert (workdir / "vocab.txt").exists()
        assert set(report) >= {"general_accuracy", "loss", "validation_accuracy",
                               "validation_loss", "per_epoch", "best_epoch"}
        assert len(report["per_epoch"]["val_acc"]) >= 1

    def test_train_is_idempotent_and_inputs_untouched(self, workdir, capsys):
        before = sha(workdir / "corpus.csv")
        self._train(workdir, capsys)
        first_model = sha(workdir / "model.taug")
        first_vocab = sha(workdir / "vocab.txt")
        self._train(workdir, capsys)
        assert sha(workdir / "model.taug") == first_model
        assert sha(workdir / "vocab.txt") == first_vocab
        assert sha(workdir / "corpus.csv") == before

    def test_eval_metrics_and_misclassified_csv(self, workdir, capsys):
        self._train(workdir, capsys)
        freq_path = workdir / "miss.csv"
        rc = main(["eval", "--model", str(workdir / "model.taug"),
                   "--vocab", str(workdir / "vocab.txt"),
                   "--test", str(workdir / "corpus.csv"),
                   "--misclassified-freq", str(freq_path)])
        assert rc == 0
        metrics = json.loads(capsys.readouterr().out)
        assert set(metrics) == {"accuracy", "loss", "confusion", "misclassified_ids"}
        tp, fp = metrics["confusion"]["tp"], metrics["confusion"]["fp"]
        tn, fn = metrics["confusion"]["tn"], metrics["confusion"]["fn"]
        assert tp + fp + tn + fn == 4
        assert freq_path.read_text(encoding="utf-8").startswith("word,count")

    def test_classify_stdin_emits_prediction_json(self, workdir, capsys, monkeypatch):
        self._train(workdir, capsys)
        monkeypatch.setattr("sys.stdin", io.StringIO("vaccine study hospital data"))
        rc = main(["classify", "--model", str(workdir / "model.taug"),
                   "--vocab", str(workdir / "vocab.txt"), "--text", "-"])
        assert rc == 0
        pred = json.loads(capsys.readouterr().out)
        assert pred["doc_id"] == "stdin"
        assert 0.0 < pred["prob_fake"] < 1.0
        assert pred["label"] in ("real", "fake")
        assert len(pred["segment_probs"]) >= 1

    def test_classify_wrong_vocab_rejected(self, workdir, capsys):
        self._train(workdir, capsys)
        other_vocab = workdir / "other_vocab.txt"
        other_vocab.write_text("[PAD]\n[UNK]\n[CLS]\n[SEP]\nzz\n", encoding="utf-8")
        rc = main(["classify", "--model", str(workdir / "model.taug"),
                   "--vocab", str(other_vocab), "--text", "-"])
        assert rc == 1
        assert capsys.readouterr().err.startswith("ERROR VocabMismatch:")


class TestPipeline:
    def test_demo_pipeline_end_to_end_under_60s(self, tmp_path, capsys):
        demo_src = REPO_ROOT / "demo"
        demo = tmp_path / "demo"
        shutil.copytree(demo_src, demo, ignore=shutil.ignore_patterns("out"))
        started = time.monotonic()
        assert main(["pipeline", "--config", str(demo / "demo.toml")]) == 0
        elapsed = time.monotonic() - started
        summary = json.loads(capsys.readouterr().out)
        out_dir = demo / "out"
        assert (out_dir / "model.taug").exists()
        assert (out_dir / "train_report.json").exists()
        assert (out_dir / "eval_metrics.json").exists()
        assert (out_dir / "misclassified_freq.csv").exists()
        report = json.loads((out_dir / "train_report.json").read_text())
        assert len(report["per_epoch"]["val_acc"]) >= 1
        assert summary["test_accuracy"] >= 0.75
        assert elapsed < 60, f"pipeline took {elapsed:.1f}s"

    def test_pipeline_is_deterministic(self, tmp_path, capsys):
        demo_src = REPO_ROOT / "demo"
        digests = []
        for run in range(2):
            demo = tmp_path / f"run{run}"
            shutil.copytree(demo_src, demo, ignore=shutil.ignore_patterns("out"))
            assert main(["pipeline", "--config", str(demo / "demo.toml")]) == 0
            capsys.readouterr()
            digests.append((sha(demo / "out" / "model.taug"),
                            sha(demo / "out" / "train_report.json"),
                            sha(demo / "out" / "eval_metrics.json")))
        assert digests[0] == digests[1]

    def test_pipeline_fails_fast_on_missing_input(self, tmp_path, capsys):
        cfg = tmp_path / "broken.toml"
        cfg.write_text('[paths]\ncorpus = "nope.csv"\nlexicon = "lex"\n'
                       '[translate]\nbackend = "mock:m.json"\n', encoding="utf-8")
        assert main(["pipeline", "--config", str(cfg)]) == 1
        assert capsys.readouterr().err.startswith("ERROR ConfigError:")
