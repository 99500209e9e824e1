"""Labeled comment corpus: CSV ingestion, label distribution, splits and folds."""

import csv
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

import numpy as np

from .exceptions import EmptyCorpusError, MalformedRowError


class Sentiment(IntEnum):
    """Ternary sentiment label with stable integer codes used as matrix indices."""

    NEGATIVE = 0
    NEUTRAL = 1
    POSITIVE = 2

    @classmethod
    def parse(cls, label):
        """Parse a label string case-insensitively; anything else is an error."""
        key = label.strip().lower()
        try:
            return _LABELS[key]
        except KeyError:
            raise ValueError(f"unknown sentiment label {label!r}") from None

    @property
    def label(self):
        return self.name.lower()


_LABELS = {s.name.lower(): s for s in Sentiment}

LABEL_NAMES = tuple(s.label for s in Sentiment)


@dataclass(frozen=True)
class LabeledComment:
    text: str
    label: Sentiment
    row_id: int


@dataclass(frozen=True)
class Corpus:
    """Immutable ordered collection of labeled comments."""

    records: tuple
    source_path: str = ""
    dedup_applied: bool = False

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def labels(self):
        return np.array([r.label for r in self.records], dtype=np.int64)

    def _replace_records(self, records):
        return Corpus(tuple(records), self.source_path, self.dedup_applied)


@dataclass(frozen=True)
class SplitResult:
    train: Corpus
    test: Corpus
    seed: int
    train_ratio: float


def load_csv(path, *, has_header=True, dedup=True, skip_bad_rows=False):
    """Load a comment,sentiment[,ignored] CSV file into a Corpus.

    Each data row needs at least two fields: the comment text and a
    sentiment label. Any further fields are discarded. Rows with empty
    text or an unparseable label abort the load with their line numbers
    unless ``skip_bad_rows`` is set. With ``dedup``, exact (text, label)
    duplicates beyond the first occurrence are dropped.
    """
    records = []
    bad_rows = []
    seen = set()
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except FileNotFoundError:
        raise FileNotFoundError(f"dataset file not found: {path}") from None
    with handle:
        reader = csv.reader(handle)
        row_id = 0
        for i, row in enumerate(reader):
            if has_header and i == 0:
                continue
            if not row:
                continue
            line = reader.line_num
            current_id = row_id
            row_id += 1
            if len(row) < 2:
                bad_rows.append((line, "expected at least 2 fields"))
                continue
            text = row[0].strip()
            if not text:
                bad_rows.append((line, "empty comment text"))
                continue
            try:
                label = Sentiment.parse(row[1])
            except ValueError:
                bad_rows.append((line, f"unknown sentiment label {row[1]!r}"))
                continue
            if dedup:
                key = (text, label)
                if key in seen:
                    continue
                seen.add(key)
            records.append(LabeledComment(text, label, current_id))
    if bad_rows and not skip_bad_rows:
        listing = "; ".join(f"line {ln}: {why}" for ln, why in bad_rows)
        raise MalformedRowError(
            f"{len(bad_rows)} malformed row(s) in {path} ({listing})", bad_rows
        )
    if not records:
        raise EmptyCorpusError(f"no valid records in {path}")
    return Corpus(tuple(records), str(path), dedup)


def label_distribution(corpus):
    """Per-class record counts and fractions; counts sum to ``len(corpus)``."""
    if len(corpus) == 0:
        raise EmptyCorpusError("label_distribution of an empty corpus")
    counts = np.bincount(corpus.labels(), minlength=len(Sentiment))
    n = len(corpus)
    return {
        s: {"count": int(counts[s]), "fraction": counts[s] / n} for s in Sentiment
    }


def _train_size(train_ratio, n):
    # Exact rational floor: float multiplication could land on the wrong
    # side of an integer boundary.
    return int(math.floor(Fraction(train_ratio) * n))


def split(corpus, train_ratio, seed):
    """Seeded shuffle-and-cut split; train gets floor(train_ratio * n) records."""
    if not 0.0 < train_ratio < 1.0:
        raise ValueError(f"train_ratio must be in (0, 1), got {train_ratio}")
    n = len(corpus)
    if n < 2:
        raise EmptyCorpusError(f"corpus too small to split ({n} records)")
    order = np.random.default_rng(seed).permutation(n)
    cut = _train_size(train_ratio, n)
    train = corpus._replace_records(corpus[i] for i in order[:cut])
    test = corpus._replace_records(corpus[i] for i in order[cut:])
    return SplitResult(train, test, seed, train_ratio)


def kfold(corpus, k, seed):
    """Seeded k-fold partition: k (train, test) pairs whose test folds
    are disjoint, cover the corpus, and differ in size by at most one
    (the first ``n mod k`` folds carry the extra record)."""
    n = len(corpus)
    if not 2 <= k <= n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    order = np.random.default_rng(seed).permutation(n)
    base, extra = divmod(n, k)
    pairs = []
    start = 0
    for fold in range(k):
        size = base + (1 if fold < extra else 0)
        test_idx = order[start : start + size]
        start += size
        mask = np.zeros(n, dtype=bool)
        mask[test_idx] = True
        train = corpus._replace_records(corpus[i] for i in order if not mask[i])
        test = corpus._replace_records(corpus[i] for i in test_idx)
        pairs.append((train, test))
    return pairs
