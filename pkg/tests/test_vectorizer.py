"""TF-IDF model tests; idf expectations evaluated from the formula by hand."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latentlens.errors import DataError
from latentlens.vectorizer import TfIdfModel


class TestFit:
    def test_repeated_term(self):
        model = TfIdfModel.fit([["a"], ["a"]])
        assert model.doc_freq["a"] == 2
        # ln((1+2)/(1+2)) + 1 = 1
        assert model.idf[0] == pytest.approx(1.0)

    def test_disjoint_terms(self):
        model = TfIdfModel.fit([["a"], ["b"]])
        expected = math.log(3 / 2) + 1  # ~1.405
        assert model.idf[model.vocabulary["a"]] == pytest.approx(expected)
        assert model.idf[model.vocabulary["b"]] == pytest.approx(expected)

    def test_empty_corpus_rejected(self):
        with pytest.raises(DataError):
            TfIdfModel.fit([])

    def test_single_empty_doc_gives_empty_vocabulary(self):
        model = TfIdfModel.fit([[]])
        assert model.vocabulary_size == 0
        assert model.transform([]).shape == (0,)

    def test_sorted_term_order(self):
        model = TfIdfModel.fit([["zebra", "apple"], ["mango"]])
        assert model.terms == ["apple", "mango", "zebra"]

    def test_fit_independent_of_corpus_order(self):
        docs = [["a", "b"], ["b", "c"], ["c", "a", "a"]]
        m1 = TfIdfModel.fit(docs)
        m2 = TfIdfModel.fit(list(reversed(docs)))
        assert m1.terms == m2.terms
        np.testing.assert_array_equal(m1.idf, m2.idf)
        np.testing.assert_array_equal(m1.transform(["a", "c"]), m2.transform(["a", "c"]))


class TestTransform:
    def test_empty_doc(self):
        model = TfIdfModel.fit([["a"], ["b"]])
        vec = model.transform([])
        assert np.count_nonzero(vec) == 0

    def test_term_count_times_idf(self):
        model = TfIdfModel.fit([["a"], ["a"]], norm="none")
        vec = model.transform(["a", "a"])
        assert vec[0] == pytest.approx(2.0 * model.idf[0])

    def test_unknown_terms_ignored(self):
        model = TfIdfModel.fit([["a"]])
        vec = model.transform(["never-seen", "a"])
        assert np.count_nonzero(vec) == 1

    def test_l2_normalization(self):
        model = TfIdfModel.fit([["a", "b"], ["b", "c"]])
        vec = model.transform(["a", "b", "b"])
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-9)

    def test_nnz_bounded_by_distinct_tokens(self):
        corpus = [["w%d" % i] for i in range(4000)]
        model = TfIdfModel.fit(corpus)
        vec = model.transform(["w1", "w2", "w3", "w4", "w5", "w6"])
        assert np.count_nonzero(vec) <= 6

    @given(
        st.lists(
            st.lists(st.sampled_from("abcdef"), min_size=0, max_size=8),
            min_size=1,
            max_size=8,
        ),
        st.lists(st.sampled_from("abcdefgh"), max_size=12),
    )
    @settings(max_examples=50, deadline=None)
    def test_properties(self, corpus, doc):
        if all(not tokens for tokens in corpus):
            return
        model = TfIdfModel.fit(corpus)
        vec = model.transform(doc)
        assert np.all(vec >= 0)
        assert np.count_nonzero(vec) <= len(set(doc))
        assert np.all(model.idf > 0)
        for term, df in model.doc_freq.items():
            assert df <= model.n_docs


class TestSerialization:
    def test_round_trip(self, tmp_path):
        model = TfIdfModel.fit([["spam", "cash"], ["hello", "cash"]])
        path = tmp_path / "vectorizer.json"
        model.save(path)
        loaded = TfIdfModel.load(path)
        assert loaded.terms == model.terms
        assert loaded.doc_freq == model.doc_freq
        assert loaded.n_docs == model.n_docs
        assert loaded.norm == model.norm
        np.testing.assert_array_equal(loaded.idf, model.idf)
        np.testing.assert_array_equal(
            loaded.transform(["cash", "spam"]), model.transform(["cash", "spam"])
        )

    def test_invalid_norm(self):
        with pytest.raises(ValueError):
            TfIdfModel(terms=["a"], doc_freqs=[1], n_docs=1, norm="l1")
