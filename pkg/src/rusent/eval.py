"""Confusion matrices, derived metrics, repeated-run evaluation and
k-fold cross-validation of the full pipeline."""

from dataclasses import dataclass

import numpy as np

from .base import N_CLASSES
from .corpus import LABEL_NAMES, kfold, split
from .exceptions import EmptyCorpusError
from .features import TfidfVectorizer
from .models import make_classifier
from .preprocess import preprocess_corpus
from .seeding import derive_seed


def confusion_matrix(y_true, y_pred):
    """3x3 count matrix: cell[i][j] = records with true class i predicted j."""
    y_true = np.asarray(y_true, dtype=np.int64).ravel()
    y_pred = np.asarray(y_pred, dtype=np.int64).ravel()
    if y_true.shape[0] != y_pred.shape[0]:
        raise ValueError(
            f"length mismatch: {y_true.shape[0]} truths vs {y_pred.shape[0]} predictions"
        )
    if y_true.shape[0] == 0:
        raise ValueError("cannot build a confusion matrix from zero records")
    for name, arr in (("truth", y_true), ("prediction", y_pred)):
        if arr.min() < 0 or arr.max() >= N_CLASSES:
            raise ValueError(f"{name} labels must be class codes in [0, {N_CLASSES})")
    cm = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


def _check_matrix(cm):
    cm = np.asarray(cm, dtype=np.int64)
    if cm.shape != (N_CLASSES, N_CLASSES):
        raise ValueError(f"confusion matrix must be {N_CLASSES}x{N_CLASSES}")
    if cm.min() < 0:
        raise ValueError("confusion matrix cells must be non-negative")
    if cm.sum() < 1:
        raise ValueError("confusion matrix is empty")
    return cm


def accuracy(cm):
    cm = _check_matrix(cm)
    return float(np.trace(cm) / cm.sum())


@dataclass(frozen=True)
class MetricsReport:
    """Accuracy plus per-class and averaged precision/recall/F1.

    ``undefined`` lists metrics whose denominator was zero and that were
    resolved to the zero-division policy value.
    """

    accuracy: float
    precision: tuple
    recall: tuple
    f1: tuple
    macro_precision: float
    macro_recall: float
    macro_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    supports: tuple
    undefined: tuple

    def scalar_metrics(self):
        """Flat metric name -> value map used for aggregation and CSV export."""
        out = {
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "weighted_precision": self.weighted_precision,
            "weighted_recall": self.weighted_recall,
            "weighted_f1": self.weighted_f1,
        }
        for i, name in enumerate(LABEL_NAMES):
            out[f"precision_{name}"] = self.precision[i]
            out[f"recall_{name}"] = self.recall[i]
            out[f"f1_{name}"] = self.f1[i]
        return out

    def as_dict(self):
        return {
            "accuracy": self.accuracy,
            "per_class": [
                {
                    "class": name,
                    "precision": self.precision[i],
                    "recall": self.recall[i],
                    "f1": self.f1[i],
                    "support": self.supports[i],
                }
                for i, name in enumerate(LABEL_NAMES)
            ],
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "weighted_precision": self.weighted_precision,
            "weighted_recall": self.weighted_recall,
            "weighted_f1": self.weighted_f1,
            "undefined": list(self.undefined),
        }


def metrics(cm, zero_division=0.0):
    """Derive the full metric report from a confusion matrix.

    precision_j = cm[j][j] / column j sum, recall_i = cm[i][i] / row i sum,
    F1 the harmonic mean; zero denominators resolve to ``zero_division``
    and are flagged. Macro averages are unweighted over the three classes,
    weighted averages scale by true-class support.
    """
    cm = _check_matrix(cm)
    total = cm.sum()
    row_sums = cm.sum(axis=1)
    col_sums = cm.sum(axis=0)
    diag = np.diag(cm)
    undefined = []
    precision = np.empty(N_CLASSES)
    recall = np.empty(N_CLASSES)
    f1 = np.empty(N_CLASSES)
    for c, name in enumerate(LABEL_NAMES):
        if col_sums[c] == 0:
            precision[c] = zero_division
            undefined.append(f"precision:{name}")
        else:
            precision[c] = diag[c] / col_sums[c]
        if row_sums[c] == 0:
            recall[c] = zero_division
            undefined.append(f"recall:{name}")
        else:
            recall[c] = diag[c] / row_sums[c]
        if precision[c] + recall[c] == 0.0:
            f1[c] = 0.0
            undefined.append(f"f1:{name}")
        else:
            f1[c] = 2.0 * precision[c] * recall[c] / (precision[c] + recall[c])
    weights = row_sums / total
    return MetricsReport(
        accuracy=float(np.trace(cm) / total),
        precision=tuple(float(p) for p in precision),
        recall=tuple(float(r) for r in recall),
        f1=tuple(float(v) for v in f1),
        macro_precision=float(precision.mean()),
        macro_recall=float(recall.mean()),
        macro_f1=float(f1.mean()),
        weighted_precision=float(precision @ weights),
        weighted_recall=float(recall @ weights),
        weighted_f1=float(f1 @ weights),
        supports=tuple(int(s) for s in row_sums),
        undefined=tuple(undefined),
    )


@dataclass(frozen=True)
class RunAggregate:
    """Per-run reports with mean/sample-std per metric and, when the runs
    partition the corpus (k-fold), the pooled confusion matrix."""

    per_run: tuple
    mean: dict
    std: dict
    runs: int
    seeds: tuple
    pooled_confusion: np.ndarray


def _aggregate(reports, seeds, pooled):
    keys = reports[0].scalar_metrics().keys()
    table = {k: np.array([r.scalar_metrics()[k] for r in reports]) for k in keys}
    mean = {k: float(v.mean()) for k, v in table.items()}
    if len(reports) > 1:
        std = {k: float(v.std(ddof=1)) for k, v in table.items()}
    else:
        std = {k: 0.0 for k in keys}
    return RunAggregate(
        per_run=tuple(reports),
        mean=mean,
        std=std,
        runs=len(reports),
        seeds=tuple(seeds),
        pooled_confusion=pooled,
    )


def _labels_of(docs):
    return np.array([d.label for d in docs], dtype=np.int64)


def _evaluate_split(spec, train_docs, test_docs, *, fit_on_all, max_features, train_seed):
    if not train_docs:
        raise EmptyCorpusError("empty training partition")
    if not test_docs:
        raise EmptyCorpusError("empty test partition")
    vectorizer = TfidfVectorizer(max_features=max_features)
    if fit_on_all:
        vectorizer.fit(list(train_docs) + list(test_docs))
    else:
        vectorizer.fit(train_docs)
    X_train = vectorizer.transform(train_docs)
    X_test = vectorizer.transform(test_docs)
    model = make_classifier(spec, seed=train_seed)
    model.fit(X_train, _labels_of(train_docs))
    cm = confusion_matrix(_labels_of(test_docs), model.predict(X_test))
    return cm, metrics(cm)


def evaluate_once(
    spec,
    corpus,
    stopwords,
    *,
    train_ratio=0.8,
    fit_on_all=False,
    max_features=3000,
    strip_punct=False,
    seed=0,
):
    """Run the full pipeline once: split, preprocess, vectorize (train-only
    vocabulary unless ``fit_on_all``), train, score the held-out part."""
    result = split(corpus, train_ratio, derive_seed(seed, "split"))
    train_docs = preprocess_corpus(result.train, stopwords, strip_punct)
    test_docs = preprocess_corpus(result.test, stopwords, strip_punct)
    return _evaluate_split(
        spec,
        train_docs,
        test_docs,
        fit_on_all=fit_on_all,
        max_features=max_features,
        train_seed=derive_seed(seed, f"train:{spec.kind}"),
    )


def evaluate_repeated(
    spec,
    corpus,
    stopwords,
    *,
    runs=10,
    base_seed=0,
    train_ratio=0.8,
    fit_on_all=False,
    max_features=3000,
    strip_punct=False,
):
    """Repeat ``evaluate_once`` with seeds base_seed .. base_seed+runs-1 and
    aggregate; the pooled confusion matrix sums the per-run matrices."""
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    reports = []
    seeds = []
    pooled = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    for r in range(runs):
        seed = base_seed + r
        cm, report = evaluate_once(
            spec,
            corpus,
            stopwords,
            train_ratio=train_ratio,
            fit_on_all=fit_on_all,
            max_features=max_features,
            strip_punct=strip_punct,
            seed=seed,
        )
        pooled += cm
        reports.append(report)
        seeds.append(seed)
    return _aggregate(reports, seeds, pooled)


def cross_validate(
    spec,
    corpus,
    stopwords,
    *,
    k=10,
    fit_on_all=False,
    max_features=3000,
    strip_punct=False,
    seed=0,
):
    """k-fold cross-validation; the pooled confusion matrix covers every
    corpus record exactly once."""
    folds = kfold(corpus, k, derive_seed(seed, "kfold"))
    reports = []
    seeds = []
    pooled = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    for fold_index, (train_c, test_c) in enumerate(folds):
        train_docs = preprocess_corpus(train_c, stopwords, strip_punct)
        test_docs = preprocess_corpus(test_c, stopwords, strip_punct)
        fold_seed = derive_seed(seed, f"fold{fold_index}:train:{spec.kind}")
        cm, report = _evaluate_split(
            spec,
            train_docs,
            test_docs,
            fit_on_all=fit_on_all,
            max_features=max_features,
            train_seed=fold_seed,
        )
        pooled += cm
        reports.append(report)
        seeds.append(fold_seed)
    return _aggregate(reports, seeds, pooled)
