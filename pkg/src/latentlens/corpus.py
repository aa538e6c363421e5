"""Labeled text datasets and the normalization pipeline that feeds the vectorizer.

The pipeline is: lowercase, stem, expand contractions, strip punctuation,
stem again, whitespace-split.  Stemming passes only touch purely alphabetic
tokens so that contraction patterns survive until expansion.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError
from .stemming import identity, stem

# phrase rewrites applied to lowercased text, longest pattern first
CONTRACTIONS: tuple[tuple[str, str], ...] = (
    ("what's", "what is"),
    ("don't", "do not"),
    ("doesn't", "does not"),
    ("that's", "that is"),
    ("aren't", "are not"),
    ("'s", " is"),
    ("isn't", "is not"),
    ("%", " percent"),
    ("e-mail", "email"),
    ("i'm", "i am"),
    ("he's", "he is"),
    ("she's", "she is"),
    ("it's", "it is"),
    ("'ve", " have"),
    ("'re", " are"),
    ("'d", " would"),
    ("'ll", " will"),
)

_ORDERED_CONTRACTIONS = sorted(CONTRACTIONS, key=lambda kv: len(kv[0]), reverse=True)

_NON_ALNUM = re.compile(r"[^a-z0-9 ]")
_PURE_ALPHA = re.compile(r"^[a-z]+$")

NORMALIZERS = {"snowball": stem, "none": identity}


@dataclass(frozen=True)
class Document:
    """One labeled text. ``label`` indexes the owning dataset's class names."""

    id: str
    raw_text: str
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label!r}")


@dataclass
class Dataset:
    """An ordered collection of binary-labeled documents."""

    documents: list[Document]
    class_names: list[str]
    positive_class: int = 1

    def __post_init__(self) -> None:
        if len(self.class_names) != 2:
            raise ValueError(f"exactly two class names required, got {self.class_names!r}")
        for doc in self.documents:
            if doc.label >= len(self.class_names):
                raise ValueError(f"document {doc.id} label {doc.label} out of range")

    def __len__(self) -> int:
        return len(self.documents)

    def texts(self) -> list[str]:
        return [doc.raw_text for doc in self.documents]

    def labels(self) -> list[int]:
        return [doc.label for doc in self.documents]


def expand_contractions(text: str) -> str:
    """Replace every tabled phrase with its expansion, longest pattern first."""
    for pattern, replacement in _ORDERED_CONTRACTIONS:
        text = text.replace(pattern, replacement)
    return text


def _normalize_tokens(text: str, normalize) -> str:
    return " ".join(
        normalize(tok) if _PURE_ALPHA.match(tok) else tok for tok in text.split()
    )


def preprocess(text: str, normalizer: str = "snowball") -> list[str]:
    """Normalize raw text to a token list.

    Args:
        text: Arbitrary unicode text.
        normalizer: ``snowball`` for suffix-stripping, ``none`` to keep
            tokens verbatim.

    Returns:
        Lowercase alphanumeric tokens with contractions expanded and
        punctuation removed.
    """
    try:
        normalize = NORMALIZERS[normalizer]
    except KeyError:
        raise ValueError(f"unknown normalizer {normalizer!r}") from None
    text = text.lower().replace("’", "'")
    text = _normalize_tokens(text, normalize)
    text = expand_contractions(text)
    # replace rather than delete so punctuation-joined words stay separate tokens
    text = _NON_ALNUM.sub(" ", text)
    text = _normalize_tokens(text, normalize)
    return text.split()


def load_dataset(
    path: str | Path,
    format: str = "tsv",
    text_col: str | int = "text",
    label_col: str | int = "label",
    has_header: bool = True,
    class_names: list[str] | None = None,
) -> Dataset:
    """Load a two-class text dataset from a delimited file.

    Args:
        path: CSV or TSV file, UTF-8.
        format: ``csv`` or ``tsv``.
        text_col, label_col: Column names (with header) or 0-based indices
            (headerless).
        has_header: Whether the first row names the columns.
        class_names: Optional explicit label-to-index order; by default
            classes are numbered in first-seen order.

    Raises:
        DataError: Missing file, empty file, malformed row, or more than
            two distinct labels.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")
    if format not in ("csv", "tsv"):
        raise DataError(f"unsupported format {format!r}, expected csv or tsv")
    delimiter = "\t" if format == "tsv" else ","
    quoting = csv.QUOTE_NONE if format == "tsv" else csv.QUOTE_MINIMAL

    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, delimiter=delimiter, quoting=quoting)
        rows = list(reader)
    rows = [(i + 1, row) for i, row in enumerate(rows) if row]
    if not rows:
        raise DataError(f"no rows in {path}")

    if has_header:
        header_line, header = rows[0]
        try:
            text_idx = header.index(str(text_col))
            label_idx = header.index(str(label_col))
        except ValueError:
            raise DataError(
                f"{path}:{header_line}: header {header!r} lacks "
                f"column {text_col!r} or {label_col!r}"
            ) from None
        body = rows[1:]
        if not body:
            raise DataError(f"no rows in {path}")
    else:
        text_idx = int(text_col) if not isinstance(text_col, int) else text_col
        label_idx = int(label_col) if not isinstance(label_col, int) else label_col
        body = rows

    label_map: dict[str, int] = {}
    if class_names is not None:
        label_map = {name: i for i, name in enumerate(class_names)}

    documents: list[Document] = []
    for line_no, row in body:
        if len(row) <= max(text_idx, label_idx):
            raise DataError(f"{path}:{line_no}: expected at least "
                            f"{max(text_idx, label_idx) + 1} columns, got {len(row)}")
        raw_label = row[label_idx].strip()
        if raw_label not in label_map:
            if class_names is not None:
                raise DataError(f"{path}:{line_no}: unknown label {raw_label!r}")
            if len(label_map) == 2:
                raise DataError(
                    f"{path}:{line_no}: more than two distinct labels "
                    f"({sorted(label_map)} then {raw_label!r})"
                )
            label_map[raw_label] = len(label_map)
        documents.append(
            Document(id=f"row{line_no}", raw_text=row[text_idx], label=label_map[raw_label])
        )

    if class_names is None:
        if len(label_map) < 2:
            raise DataError(f"{path}: needs two classes, found {sorted(label_map)}")
        class_names = [name for name, _ in sorted(label_map.items(), key=lambda kv: kv[1])]
    return Dataset(documents=documents, class_names=list(class_names))
