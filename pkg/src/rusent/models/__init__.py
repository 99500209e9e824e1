"""The five classifier kinds behind one fit/predict surface, plus
JSON model persistence."""

import json
from dataclasses import dataclass, field

from .knn import KNeighborsClassifier
from .logistic import LogisticRegression
from .mlp import MLPClassifier
from .naive_bayes import MultinomialNaiveBayes
from .svm import LinearSVM

_REGISTRY = {
    cls.kind: cls
    for cls in (
        MultinomialNaiveBayes,
        LogisticRegression,
        LinearSVM,
        KNeighborsClassifier,
        MLPClassifier,
    )
}

CLASSIFIER_KINDS = tuple(sorted(_REGISTRY))


def classifier_class(kind):
    try:
        return _REGISTRY[kind]
    except KeyError:
        raise ValueError(
            f"unknown classifier kind {kind!r}; expected one of {CLASSIFIER_KINDS}"
        ) from None


def classifier_param_defaults(kind):
    """Constructor parameter names and defaults for a classifier kind."""
    cls = classifier_class(kind)
    return {name: getattr(cls(), name) for name in cls._param_names()}


@dataclass(frozen=True)
class ClassifierSpec:
    """A classifier kind with hyperparameter overrides and an optional
    fixed training seed (None means the caller derives one)."""

    kind: str
    hyperparams: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        classifier_class(self.kind)  # validates the kind eagerly


def make_classifier(spec, seed=None):
    """Instantiate the estimator for ``spec``.

    The training seed precedence is: explicit ``seed`` hyperparameter,
    then ``spec.seed``, then the caller-supplied (usually derived) seed.
    """
    defaults = classifier_param_defaults(spec.kind)
    params = dict(defaults)
    for name, value in spec.hyperparams.items():
        if name not in params:
            raise ValueError(
                f"unknown hyperparameter {name!r} for {spec.kind} "
                f"(accepted: {sorted(params)})"
            )
        params[name] = value
    if "seed" in defaults and "seed" not in spec.hyperparams:
        effective = spec.seed if spec.seed is not None else seed
        if effective is not None:
            params["seed"] = effective
    return classifier_class(spec.kind)(**params)


def model_to_dict(model):
    """Self-describing JSON payload: kind, hyperparams, dimension, parameters."""
    return {
        "kind": model.kind,
        "hyperparams": model.get_params(),
        "dimension": model.n_features_,
        "parameters": model.to_payload(),
    }


def model_from_dict(payload):
    cls = classifier_class(payload["kind"])
    model = cls(**payload["hyperparams"])
    return model._restore(payload["parameters"], payload["dimension"])


def save_model(model, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model_to_dict(model), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_model(path):
    try:
        handle = open(path, "r", encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"model file not found: {path}") from None
    with handle:
        return model_from_dict(json.load(handle))
