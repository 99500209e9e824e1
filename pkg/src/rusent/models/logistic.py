"""Multinomial (softmax) logistic regression trained by full-batch
gradient descent."""

import numpy as np
from scipy.special import logsumexp, softmax

from ..base import N_CLASSES, ClassifierBase, check_feature_matrix, check_labels


def softmax_objective(W, b, X, y, l2):
    """Mean cross-entropy of softmax(X W^T + b) plus (l2/2)*||W||^2.

    Returns (loss, grad_W, grad_b). The bias is not regularized.
    """
    n = X.shape[0]
    logits = X @ W.T + b
    loss = float(np.mean(logsumexp(logits, axis=1) - logits[np.arange(n), y]))
    loss += 0.5 * l2 * float(np.sum(W * W))
    probs = softmax(logits, axis=1)
    probs[np.arange(n), y] -= 1.0
    grad_W = (X.T @ probs).T / n + l2 * W
    grad_b = probs.mean(axis=0)
    return loss, grad_W, grad_b


class LogisticRegression(ClassifierBase):
    """Softmax classifier minimized from zero-initialized weights.

    Full-batch gradient descent; with a suitable learning rate the
    objective is non-increasing over epochs. ``seed`` exists for interface
    uniformity; the optimizer itself draws no random numbers.
    """

    kind = "logistic_regression"

    def __init__(self, lr=0.5, epochs=300, l2=1e-4, seed=0):
        self.lr = lr
        self.epochs = epochs
        self.l2 = l2
        self.seed = seed

    def fit(self, X, y):
        if self.lr is None or self.lr <= 0.0:
            raise ValueError(f"lr must be > 0, got {self.lr}")
        if self.epochs is None or self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")
        if self.l2 is None or self.l2 < 0.0:
            raise ValueError(f"l2 must be >= 0, got {self.l2}")
        X = check_feature_matrix(X)
        y = check_labels(y, X.shape[0])
        if X.shape[0] == 0:
            raise ValueError("cannot fit on an empty feature matrix")
        n, V = X.shape
        W = np.zeros((N_CLASSES, V))
        b = np.zeros(N_CLASSES)
        curve = []
        for _ in range(self.epochs):
            loss, grad_W, grad_b = softmax_objective(W, b, X, y, self.l2)
            curve.append(loss)
            W -= self.lr * grad_W
            b -= self.lr * grad_b
        final_loss, _, _ = softmax_objective(W, b, X, y, self.l2)
        curve.append(final_loss)
        self.coef_ = W
        self.intercept_ = b
        self.loss_curve_ = curve
        self.epochs_ = self.epochs
        self.final_loss_ = final_loss
        self.n_features_ = V
        return self

    def decision_scores(self, X):
        """Softmax probabilities (rows sum to 1)."""
        X = self._validate_input(X)
        return softmax(X @ self.coef_.T + self.intercept_, axis=1)

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
        self.loss_curve_ = None
        self.n_features_ = n_features
        return self
