"""k-nearest-neighbor classifier over cosine distance."""

import numpy as np
import scipy.sparse as sp

from ..base import N_CLASSES, ClassifierBase, check_feature_matrix, check_labels

_CHUNK = 512


class KNeighborsClassifier(ClassifierBase):
    """Lazy learner: stores the training matrix and votes over the k
    nearest neighbors by cosine distance (1 - dot product; rows are
    l2-normalized or zero, so this is monotone in Euclidean distance).

    Equidistant neighbors at the k boundary are resolved toward the lower
    training-row index. A tied majority vote falls back to the label of
    the single nearest neighbor.
    """

    kind = "knn"

    def __init__(self, k=5):
        self.k = k

    def fit(self, X, y):
        X = check_feature_matrix(X)
        y = check_labels(y, X.shape[0])
        if X.shape[0] == 0:
            raise ValueError("cannot fit on an empty feature matrix")
        if self.k is None or not 1 <= self.k <= X.shape[0]:
            raise ValueError(
                f"k must be in [1, {X.shape[0]}], got {self.k}"
            )
        self.X_ = X
        self.y_ = y
        self.n_features_ = X.shape[1]
        return self

    def _neighbors(self, X):
        """Indices of the k nearest training rows per query row, ordered by
        (distance, training index)."""
        out = np.empty((X.shape[0], self.k), dtype=np.int64)
        for start in range(0, X.shape[0], _CHUNK):
            chunk = X[start : start + _CHUNK]
            distances = 1.0 - (chunk @ self.X_.T).toarray()
            # stable argsort keeps lower training indices first among ties
            order = np.argsort(distances, axis=1, kind="stable")
            out[start : start + chunk.shape[0]] = order[:, : self.k]
        return out

    def decision_scores(self, X):
        """Per-class vote fractions among the k nearest neighbors."""
        X = self._validate_input(X)
        neighbors = self._neighbors(X)
        votes = self.y_[neighbors]
        scores = np.empty((X.shape[0], N_CLASSES))
        for i in range(X.shape[0]):
            scores[i] = np.bincount(votes[i], minlength=N_CLASSES) / self.k
        return scores

    def predict(self, X):
        X = self._validate_input(X)
        neighbors = self._neighbors(X)
        predictions = np.empty(X.shape[0], dtype=np.int64)
        for i in range(X.shape[0]):
            counts = np.bincount(self.y_[neighbors[i]], minlength=N_CLASSES)
            top = counts.max()
            if np.count_nonzero(counts == top) == 1:
                predictions[i] = counts.argmax()
            else:
                predictions[i] = self.y_[neighbors[i, 0]]
        return predictions

    def to_payload(self):
        return {
            "matrix": {
                "indptr": self.X_.indptr.tolist(),
                "indices": self.X_.indices.tolist(),
                "data": self.X_.data.tolist(),
                "shape": list(self.X_.shape),
            },
            "labels": self.y_.tolist(),
        }

    def _restore(self, payload, n_features):
        m = payload["matrix"]
        self.X_ = sp.csr_matrix(
            (m["data"], m["indices"], m["indptr"]), shape=tuple(m["shape"])
        )
        self.y_ = np.array(payload["labels"], dtype=np.int64)
        self.n_features_ = n_features
        return self
