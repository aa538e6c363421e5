"""End-to-end CLI tests on a tiny synthetic corpus."""

import json
import os

import pytest

from latentlens.cli import main
from latentlens.synthdata import generate_sms_corpus, write_tsv

TINY_CONFIG = {
    "hidden_dims": [32, 24],
    "latent_dim": 16,
    "decoder_dims": [20, 24],
    "epochs": 6,
    "decoder_epochs": 8,
    "batch_size": 16,
    "learning_rate": 1e-3,
    "lime_samples": 150,
    "seed": 0,
    "class_names": ["ham", "spam"],
}


@pytest.fixture(scope="module")
def corpus_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "tiny.tsv"
    write_tsv(path, generate_sms_corpus(n_spam=40, n_ham=160, seed=13))
    return path


@pytest.fixture(scope="module")
def model_dir(tmp_path_factory, corpus_path):
    out = tmp_path_factory.mktemp("model")
    config = dict(TINY_CONFIG, dataset=str(corpus_path), out=str(out))
    cfg_path = out / "config.json"
    cfg_path.write_text(json.dumps(config))
    assert main(["train", "--config", str(cfg_path)]) == 0
    return out


ARTIFACTS = ["vectorizer.json", "predictor.json", "decoder.json", "metrics.json", "meta.json"]


class TestTrain:
    def test_artifacts_written(self, model_dir):
        for name in ARTIFACTS:
            assert (model_dir / name).exists(), name

    def test_metrics_content(self, model_dir):
        metrics = json.loads((model_dir / "metrics.json").read_text())
        assert 0.5 <= metrics["train_accuracy"] <= 1.0
        assert metrics["reconstruction_loss_final"] < metrics["reconstruction_loss_first"]
        assert metrics["n_train"] + metrics["n_val"] == 200

    def test_missing_dataset_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["train"])
        assert exc.value.code == 1

    def test_nonexistent_dataset_is_data_error(self, tmp_path):
        code = main(["train", "--dataset", str(tmp_path / "nope.tsv"), "--out", str(tmp_path)])
        assert code == 2

    def test_rerun_same_seed_byte_identical(self, corpus_path, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            config = dict(TINY_CONFIG, dataset=str(corpus_path), out=str(out), epochs=2,
                          decoder_epochs=2)
            cfg_path = tmp_path / f"cfg_{name}.json"
            cfg_path.write_text(json.dumps(config))
            assert main(["train", "--config", str(cfg_path)]) == 0
            outs.append(out)
        for name in ("vectorizer.json", "predictor.json", "decoder.json"):
            assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes(), name

    def test_unknown_config_key_rejected(self, corpus_path, tmp_path):
        cfg_path = tmp_path / "bad.json"
        cfg_path.write_text(json.dumps({"dataset": str(corpus_path), "typo_key": 1}))
        assert main(["train", "--config", str(cfg_path)]) == 2


class TestExplain:
    def test_latent_method(self, model_dir, tmp_path):
        out = tmp_path / "expl"
        code = main([
            "explain", "--model-dir", str(model_dir), "--out", str(out),
            "--text", "Congratulations you won a free prize, claim now!",
            "--method", "latent", "--top-k", "5",
        ])
        assert code == 0
        data = json.loads((out / "explanation.json").read_text())
        assert data["method"] == "latent"
        assert data["class"] == "spam"
        assert 0.0 <= data["probability"] <= 1.0
        svg = (out / "explanation.svg").read_text()
        assert svg.startswith("<svg")

    def test_lime_method_reproducible(self, model_dir, tmp_path):
        args = [
            "explain", "--model-dir", str(model_dir),
            "--text", "free entry to win a cash prize call now",
            "--method", "lime", "--seed", "7",
        ]
        out1, out2 = tmp_path / "l1", tmp_path / "l2"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert (out1 / "explanation.json").read_bytes() == (out2 / "explanation.json").read_bytes()

    def test_out_of_vocabulary_text(self, model_dir, tmp_path):
        code = main([
            "explain", "--model-dir", str(model_dir), "--out", str(tmp_path / "oov"),
            "--text", "zzzzxq qqqqzx", "--method", "latent",
        ])
        assert code == 2

    def test_top_k_zero_rejected(self, model_dir):
        with pytest.raises(SystemExit) as exc:
            main(["explain", "--model-dir", str(model_dir), "--text", "hi", "--top-k", "0"])
        assert exc.value.code == 1

    def test_model_dir_env_fallback(self, model_dir, tmp_path, monkeypatch):
        monkeypatch.setenv("LATENTLENS_MODEL_DIR", str(model_dir))
        out = tmp_path / "env_out"
        code = main(["explain", "--text", "call me tonight", "--out", str(out)])
        assert code == 0

    def test_no_model_dir_anywhere(self, monkeypatch):
        monkeypatch.delenv("LATENTLENS_MODEL_DIR", raising=False)
        assert main(["explain", "--text", "hello"]) == 2


class TestCompare:
    def test_bundle(self, model_dir, tmp_path):
        out = tmp_path / "cmp"
        code = main([
            "compare", "--model-dir", str(model_dir), "--out", str(out),
            "--text", "Wife.how she knew the time of murder exactly",
        ])
        assert code == 0
        distances = json.loads((out / "distances.json").read_text())
        assert set(distances) == {
            "lime_original", "lime_encoded", "latent_encoded", "latent_decoded",
        }
        table = (out / "distances.txt").read_text()
        assert "Euclidean distance" in table
        assert "LIME: generated on original space" in table
        for name in ("explanation_latent.json", "explanation_lime.json",
                     "explanation_latent.svg", "explanation_lime.svg"):
            assert (out / name).exists(), name

    def test_explanations_carry_methods(self, model_dir, tmp_path):
        out = tmp_path / "cmp2"
        main(["compare", "--model-dir", str(model_dir), "--out", str(out),
              "--text", "are you free for lunch tomorrow"])
        latent = json.loads((out / "explanation_latent.json").read_text())
        lime = json.loads((out / "explanation_lime.json").read_text())
        assert latent["method"] == "latent"
        assert lime["method"] == "lime"
        assert latent["probability"] == pytest.approx(lime["probability"])


class TestEvaluate:
    def test_report_schema(self, model_dir, corpus_path, tmp_path):
        out = tmp_path / "ev"
        code = main([
            "evaluate", "--model-dir", str(model_dir), "--dataset", str(corpus_path),
            "--n-instances", "5", "--seed", "3", "--out", str(out),
        ])
        assert code == 0
        report = json.loads((out / "evaluation.json").read_text())
        assert set(report) == {
            "n_instances", "fidelity_agreement_rate", "mean_surrogate_r2",
            "distance_ordering_win_rate",
        }
        assert report["n_instances"] == 5

    def test_seeded_rerun_identical(self, model_dir, corpus_path, tmp_path):
        args = ["evaluate", "--model-dir", str(model_dir), "--dataset", str(corpus_path),
                "--n-instances", "4", "--seed", "11"]
        out1, out2 = tmp_path / "e1", tmp_path / "e2"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert (out1 / "evaluation.json").read_bytes() == (out2 / "evaluation.json").read_bytes()

    def test_clamps_to_available(self, model_dir, corpus_path, tmp_path, capsys):
        code = main([
            "evaluate", "--model-dir", str(model_dir), "--dataset", str(corpus_path),
            "--n-instances", "500", "--seed", "0", "--out", str(tmp_path / "big"),
        ])
        assert code == 0
        report = json.loads((tmp_path / "big" / "evaluation.json").read_text())
        assert report["n_instances"] < 500

    def test_wrong_dataset_rejected(self, model_dir, tmp_path):
        other = tmp_path / "other.tsv"
        write_tsv(other, generate_sms_corpus(n_spam=5, n_ham=15, seed=99))
        code = main(["evaluate", "--model-dir", str(model_dir), "--dataset", str(other),
                     "--n-instances", "2", "--out", str(tmp_path / "w")])
        assert code == 2


class TestSynthData:
    def test_writes_corpus(self, tmp_path):
        out = tmp_path / "gen.tsv"
        assert main(["synth-data", "--out", str(out), "--n-spam", "6", "--n-ham", "14"]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "label\ttext"
        assert len(lines) == 21


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_bad_method_choice(self, model_dir):
        with pytest.raises(SystemExit) as exc:
            main(["explain", "--model-dir", str(model_dir), "--text", "x",
                  "--method", "shap"])
        assert exc.value.code == 1
