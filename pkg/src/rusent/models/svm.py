"""Linear SVM: three one-vs-rest hinge-loss classifiers trained by
seeded, shuffled per-sample subgradient descent."""

import numpy as np

from ..base import N_CLASSES, ClassifierBase, check_feature_matrix, check_labels

# Refold the lazily scaled weight vector before the scale underflows.
_SCALE_FLOOR = 1e-100


def hinge_objective(w, b, X, y_signed, C):
    """(1/2)||w||^2 + C * mean hinge loss, with its (sub)gradient.

    ``y_signed`` holds +/-1 labels. At points where some margin equals 1
    exactly the hinge term is non-differentiable; the subgradient used
    here treats those samples as inactive.
    """
    n = X.shape[0]
    margins = y_signed * (X @ w + b)
    slack = np.maximum(0.0, 1.0 - margins)
    value = 0.5 * float(w @ w) + C * float(slack.mean())
    active = margins < 1.0
    coeff = np.where(active, -y_signed, 0.0)
    grad_w = w + (C / n) * (X.T @ coeff)
    grad_b = (C / n) * float(coeff.sum())
    return value, grad_w, grad_b


def _sgd_binary(rows, y_signed, V, lr, epochs, C, rng):
    """Per-sample subgradient descent on one one-vs-rest problem.

    The objective splits into n per-sample pieces
    f_i = (1/2n)*||w||^2 + (C/n)*max(0, 1 - y_i*(w.x_i + b)), so one
    shuffled pass over the data moves like a single full-batch subgradient
    step of size lr. The regularization shrink is applied through a lazy
    scale factor, keeping each step O(nnz(row)). Plain Python floats beat
    numpy here: rows hold only a handful of nonzeros.
    """
    v = [0.0] * V
    scale = 1.0
    b = 0.0
    n = len(rows)
    shrink = 1.0 - lr / n
    push = lr * C / n
    labels = [float(t) for t in y_signed]
    for _ in range(epochs):
        for i in rng.permutation(n).tolist():
            pairs = rows[i]
            dot = 0.0
            for j, val in pairs:
                dot += v[j] * val
            yi = labels[i]
            margin = yi * (scale * dot + b)
            scale *= shrink
            if scale < _SCALE_FLOOR:
                v = [entry * scale for entry in v]
                scale = 1.0
            if margin < 1.0:
                step = push * yi / scale
                for j, val in pairs:
                    v[j] += step * val
                b += push * yi
    return scale * np.array(v), b


class LinearSVM(ClassifierBase):
    """One-vs-rest linear SVM; prediction is the argmax of the three raw
    decision values.

    ``lr`` must lie in (0, 1) so the per-step weight shrink stays positive
    for any training-set size. ``C`` weights the mean hinge loss against
    the (1/2)||w||^2 regularizer; C=0 degenerates to pure shrinkage of the
    weights toward zero.
    """

    kind = "linear_svm"

    def __init__(self, lr=0.1, epochs=300, C=1.0, seed=0):
        self.lr = lr
        self.epochs = epochs
        self.C = C
        self.seed = seed

    def fit(self, X, y):
        if self.lr is None or not 0.0 < self.lr < 1.0:
            raise ValueError(f"lr must be in (0, 1), got {self.lr}")
        if self.epochs is None or self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")
        if self.C is None or self.C < 0.0:
            raise ValueError(f"C must be >= 0, got {self.C}")
        X = check_feature_matrix(X)
        y = check_labels(y, X.shape[0])
        if X.shape[0] == 0:
            raise ValueError("cannot fit on an empty feature matrix")
        n, V = X.shape
        indices = X.indices.tolist()
        data = X.data.tolist()
        rows = [
            list(zip(indices[X.indptr[i] : X.indptr[i + 1]],
                     data[X.indptr[i] : X.indptr[i + 1]]))
            for i in range(n)
        ]
        W = np.zeros((N_CLASSES, V))
        intercepts = np.zeros(N_CLASSES)
        objectives = []
        for c in range(N_CLASSES):
            y_signed = np.where(y == c, 1.0, -1.0)
            rng = np.random.default_rng([self.seed, c])
            w, b = _sgd_binary(rows, y_signed, V, self.lr, self.epochs, self.C, rng)
            W[c] = w
            intercepts[c] = b
            objectives.append(hinge_objective(w, b, X, y_signed, self.C)[0])
        self.coef_ = W
        self.intercept_ = intercepts
        self.objective_per_class_ = objectives
        self.epochs_ = self.epochs
        self.final_loss_ = float(np.mean(objectives))
        self.n_features_ = V
        return self

    def decision_scores(self, X):
        """Raw one-vs-rest decision values (not probabilities)."""
        X = self._validate_input(X)
        return X @ self.coef_.T + self.intercept_

    def to_payload(self):
        return {
            "coef": self.coef_.tolist(),
            "intercept": self.intercept_.tolist(),
            "epochs_run": self.epochs_,
            "final_loss": self.final_loss_,
        }

    def _restore(self, payload, n_features):
        self.coef_ = np.array(payload["coef"], dtype=np.float64)
        self.intercept_ = np.array(payload["intercept"], dtype=np.float64)
        self.epochs_ = payload["epochs_run"]
        self.final_loss_ = payload["final_loss"]
        self.objective_per_class_ = None
        self.n_features_ = n_features
        return self
