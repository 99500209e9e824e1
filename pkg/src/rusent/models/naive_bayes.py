"""Multinomial naive Bayes over fractional tf-idf weights."""

import numpy as np
from scipy.special import softmax

from ..base import N_CLASSES, ClassifierBase, check_feature_matrix, check_labels
from ..exceptions import MissingClassError


class MultinomialNaiveBayes(ClassifierBase):
    """Weighted multinomial naive Bayes with Laplace-style smoothing.

    Class priors are empirical label frequencies; per-term likelihoods are
    (class feature-weight sum + alpha) / (class total weight + alpha * V),
    stored as logs. Training sets missing a class are rejected unless
    ``allow_missing_class`` is set, in which case the absent class keeps a
    zero prior and uniform likelihoods.
    """

    kind = "naive_bayes"

    def __init__(self, alpha=1.0, allow_missing_class=False):
        self.alpha = alpha
        self.allow_missing_class = allow_missing_class

    def fit(self, X, y):
        if self.alpha is None or self.alpha <= 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        X = check_feature_matrix(X)
        y = check_labels(y, X.shape[0])
        if X.shape[0] == 0:
            raise ValueError("cannot fit on an empty feature matrix")
        counts = np.bincount(y, minlength=N_CLASSES)
        if np.any(counts == 0) and not self.allow_missing_class:
            missing = [int(c) for c in np.flatnonzero(counts == 0)]
            raise MissingClassError(
                f"training data is missing class code(s) {missing}; "
                "pass allow_missing_class=True to permit this"
            )
        n, V = X.shape
        with np.errstate(divide="ignore"):
            self.class_log_prior_ = np.log(counts / n)
        weight_sums = np.zeros((N_CLASSES, V))
        for c in range(N_CLASSES):
            rows = np.flatnonzero(y == c)
            if rows.size:
                weight_sums[c] = np.asarray(X[rows].sum(axis=0)).ravel()
        smoothed = weight_sums + self.alpha
        self.feature_log_prob_ = np.log(smoothed) - np.log(
            smoothed.sum(axis=1, keepdims=True)
        )
        self.class_count_ = counts
        self.n_features_ = V
        return self

    def decision_scores(self, X):
        """Class posterior probabilities (rows sum to 1)."""
        X = self._validate_input(X)
        joint = X @ self.feature_log_prob_.T + self.class_log_prior_
        return softmax(joint, axis=1)

    def to_payload(self):
        # -inf log priors (allow_missing_class) become null to keep the
        # document strict JSON.
        priors = [p if np.isfinite(p) else None for p in self.class_log_prior_]
        return {
            "class_log_prior": priors,
            "feature_log_prob": self.feature_log_prob_.tolist(),
            "class_count": self.class_count_.tolist(),
        }

    def _restore(self, payload, n_features):
        self.class_log_prior_ = np.array(
            [-np.inf if p is None else p for p in payload["class_log_prior"]],
            dtype=np.float64,
        )
        self.feature_log_prob_ = np.array(
            payload["feature_log_prob"], dtype=np.float64
        )
        self.class_count_ = np.array(payload["class_count"], dtype=np.int64)
        self.n_features_ = n_features
        return self
