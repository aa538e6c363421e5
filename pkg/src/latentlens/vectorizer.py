"""TF-IDF vectorization over token lists.

Smoothed idf: ln((1 + n_docs) / (1 + doc_freq)) + 1.  Row vectors are
l2-normalized by default so every feature lands in [0, 1], which the
decoder's cross-entropy output expects.  Vocabulary indices follow sorted
term order for reproducibility.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from pathlib import Path

import numpy as np

from .errors import DataError

SCHEMA_VERSION = 1


class TfIdfModel:
    """Vocabulary, document frequencies and idf weights fitted on a corpus."""

    def __init__(
        self,
        terms: list[str],
        doc_freqs: list[int],
        n_docs: int,
        norm: str = "l2",
    ) -> None:
        if norm not in ("l2", "none"):
            raise ValueError(f"norm must be 'l2' or 'none', got {norm!r}")
        if len(terms) != len(doc_freqs):
            raise ValueError("terms and doc_freqs must align")
        self.terms = list(terms)
        self.vocabulary = {term: i for i, term in enumerate(self.terms)}
        self.doc_freq = dict(zip(self.terms, doc_freqs))
        self.n_docs = int(n_docs)
        self.norm = norm
        self.idf = np.array(
            [math.log((1 + self.n_docs) / (1 + df)) + 1.0 for df in doc_freqs],
            dtype=np.float64,
        )

    @property
    def vocabulary_size(self) -> int:
        return len(self.terms)

    @classmethod
    def fit(cls, corpus: list[list[str]], norm: str = "l2") -> "TfIdfModel":
        """Fit vocabulary and idf weights on a corpus of token lists."""
        if not corpus:
            raise DataError("cannot fit tf-idf on an empty corpus")
        df = Counter()
        for tokens in corpus:
            df.update(set(tokens))
        terms = sorted(df)
        return cls(terms, [df[t] for t in terms], n_docs=len(corpus), norm=norm)

    def transform(self, tokens: list[str]) -> np.ndarray:
        """Map a token list to a dense tf-idf vector; unknown terms are ignored."""
        vec = np.zeros(self.vocabulary_size, dtype=np.float64)
        for term, count in Counter(tokens).items():
            idx = self.vocabulary.get(term)
            if idx is not None:
                vec[idx] = count * self.idf[idx]
        if self.norm == "l2":
            length = np.linalg.norm(vec)
            if length > 0:
                vec /= length
        return vec

    def transform_many(self, docs: list[list[str]]) -> np.ndarray:
        return np.stack([self.transform(tokens) for tokens in docs]) if docs else \
            np.zeros((0, self.vocabulary_size))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "terms": self.terms,
            "doc_freqs": [self.doc_freq[t] for t in self.terms],
            "n_docs": self.n_docs,
            "norm": self.norm,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TfIdfModel":
        return cls(
            terms=data["terms"],
            doc_freqs=data["doc_freqs"],
            n_docs=data["n_docs"],
            norm=data["norm"],
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TfIdfModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
