"""Synthetic corpus generator tests: counts, determinism, file format."""

import numpy as np

from latentlens.corpus import load_dataset, preprocess
from latentlens.synthdata import generate_sms_corpus, write_tsv


class TestGenerator:
    def test_default_counts(self):
        rows = generate_sms_corpus()
        assert len(rows) == 5574
        assert sum(1 for label, _ in rows if label == "spam") == 747
        assert sum(1 for label, _ in rows if label == "ham") == 4827

    def test_deterministic(self):
        assert generate_sms_corpus(n_spam=30, n_ham=70, seed=5) == generate_sms_corpus(
            n_spam=30, n_ham=70, seed=5
        )

    def test_seed_changes_output(self):
        a = generate_sms_corpus(n_spam=30, n_ham=70, seed=1)
        b = generate_sms_corpus(n_spam=30, n_ham=70, seed=2)
        assert a != b

    def test_texts_are_tab_free_and_nonempty(self):
        for _, text in generate_sms_corpus(n_spam=50, n_ham=50, seed=3):
            assert "\t" not in text
            assert text.strip()

    def test_preprocessable(self):
        rows = generate_sms_corpus(n_spam=40, n_ham=40, seed=4)
        empty = sum(1 for _, text in rows if not preprocess(text))
        assert empty == 0


class TestTsvRoundTrip:
    def test_loads_back_with_counts(self, tmp_path):
        path = tmp_path / "sms.tsv"
        write_tsv(path, generate_sms_corpus(n_spam=25, n_ham=75, seed=6))
        ds = load_dataset(path, format="tsv")
        assert len(ds) == 100
        assert set(ds.class_names) == {"ham", "spam"}
        spam_idx = ds.class_names.index("spam")
        assert sum(1 for d in ds.documents if d.label == spam_idx) == 25

    def test_full_scale_counts(self, tmp_path):
        path = tmp_path / "sms_full.tsv"
        write_tsv(path, generate_sms_corpus())
        ds = load_dataset(path, format="tsv")
        assert len(ds) == 5574
        spam_idx = ds.class_names.index("spam")
        assert sum(1 for d in ds.documents if d.label == spam_idx) == 747

    def test_headerless_mode(self, tmp_path):
        path = tmp_path / "raw.tsv"
        write_tsv(path, generate_sms_corpus(n_spam=5, n_ham=5, seed=7), header=False)
        ds = load_dataset(path, format="tsv", label_col=0, text_col=1, has_header=False)
        assert len(ds) == 10
