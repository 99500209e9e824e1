"""Estimator base class and input validation helpers.

Estimators follow the scikit-learn parameter conventions (constructor
arguments stored verbatim, ``get_params``/``set_params``, fitted attributes
carrying a trailing underscore) so they compose with pipeline tooling that
relies on those conventions, without this package depending on scikit-learn.
"""

import inspect

import numpy as np
import scipy.sparse as sp

from .exceptions import NotFittedError

N_CLASSES = 3


class BaseEstimator:
    """Minimal scikit-learn-compatible parameter handling."""

    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [name for name in sig.parameters if name != "self"]

    def get_params(self, deep=True):
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


def check_is_fitted(estimator, *attributes):
    for attr in attributes:
        if getattr(estimator, attr, None) is None:
            raise NotFittedError(
                f"{type(estimator).__name__} is not fitted; call fit() first"
            )


def check_feature_matrix(X):
    """Coerce ``X`` to a float64 CSR matrix with canonical (sorted) indices."""
    if sp.issparse(X):
        X = X.tocsr()
        if X.dtype != np.float64:
            X = X.astype(np.float64)
        X.sum_duplicates()
        X.sort_indices()
        return X
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got {arr.ndim}-D")
    return sp.csr_matrix(arr)


def check_labels(y, n_rows=None):
    y = np.asarray(y, dtype=np.int64).ravel()
    if n_rows is not None and y.shape[0] != n_rows:
        raise ValueError(
            f"label count {y.shape[0]} does not match row count {n_rows}"
        )
    if y.size and (y.min() < 0 or y.max() >= N_CLASSES):
        raise ValueError(f"labels must be class codes in [0, {N_CLASSES})")
    return y


def check_dimension(X, n_features):
    if X.shape[1] != n_features:
        raise ValueError(
            f"dimension mismatch: input has {X.shape[1]} features, "
            f"model expects {n_features}"
        )


class ClassifierBase(BaseEstimator):
    """Shared prediction surface for the five classifier kinds.

    ``decision_scores`` returns one row of three per-class scores per input
    row (class-code order); ``predict`` takes the argmax, breaking exact
    ties toward the lowest class code.
    """

    def decision_scores(self, X):
        raise NotImplementedError

    def predict(self, X):
        return np.argmax(self.decision_scores(X), axis=1).astype(np.int64)

    def _validate_input(self, X):
        check_is_fitted(self, "n_features_")
        X = check_feature_matrix(X)
        check_dimension(X, self.n_features_)
        return X
