"""Flat key=value run configuration with typo-safe validation.

The file format is one ``key = value`` per line, '#' comments, blank lines
ignored. Classifier hyperparameters are overridden with qualified keys,
e.g. ``mlp.hidden_units = 64``. Unknown keys are rejected.
"""

from dataclasses import dataclass, field, replace

from .exceptions import ConfigError
from .models import CLASSIFIER_KINDS, classifier_param_defaults

PROTOCOLS = ("repeated", "kfold")

_SCHEMA = {
    "dataset": str,
    "stopwords": str,
    "has_header": bool,
    "dedup": bool,
    "skip_bad_rows": bool,
    "strip_punct": bool,
    "max_features": int,
    "protocol": str,
    "train_ratio": float,
    "runs": int,
    "folds": int,
    "fit_on_all": bool,
    "allow_missing_class": bool,
    "seed": int,
    "out": str,
}


@dataclass(frozen=True)
class RunConfig:
    dataset: str | None = None
    stopwords: str | None = None
    has_header: bool = True
    dedup: bool = True
    skip_bad_rows: bool = False
    strip_punct: bool = False
    max_features: int = 3000
    protocol: str = "repeated"
    train_ratio: float = 0.8
    runs: int = 10
    folds: int = 10
    fit_on_all: bool = False
    allow_missing_class: bool = False
    seed: int = 0
    out: str = "out"
    overrides: dict = field(default_factory=dict)

    def classifier_overrides(self, kind):
        return dict(self.overrides.get(kind, {}))


def _convert(key, raw, target_type):
    if target_type is bool:
        low = raw.lower()
        if low in ("true", "false"):
            return low == "true"
        raise ConfigError(f"config key {key!r} expects true or false, got {raw!r}")
    if target_type is int:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(
                f"config key {key!r} expects an integer, got {raw!r}"
            ) from None
    if target_type is float:
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(
                f"config key {key!r} expects a number, got {raw!r}"
            ) from None
    return raw


def _convert_override(kind, param, raw):
    defaults = classifier_param_defaults(kind)
    if param not in defaults:
        raise ConfigError(
            f"unknown config key '{kind}.{param}' "
            f"(accepted parameters for {kind}: {sorted(defaults)})"
        )
    default = defaults[param]
    target = type(default) if default is not None else str
    if isinstance(default, bool):
        target = bool
    return _convert(f"{kind}.{param}", raw, target)


def parse_config_file(path):
    """Parse a config file into a RunConfig (file values over defaults)."""
    try:
        handle = open(path, "r", encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    values = {}
    overrides = {}
    with handle:
        for ln, raw_line in enumerate(handle, start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{ln}: expected 'key = value', got {line!r}")
            key, _, raw = line.partition("=")
            key = key.strip()
            raw = raw.strip()
            if "." in key:
                kind, _, param = key.partition(".")
                if kind not in CLASSIFIER_KINDS:
                    raise ConfigError(
                        f"unknown config key {key!r} "
                        f"(classifier kinds: {CLASSIFIER_KINDS})"
                    )
                overrides.setdefault(kind, {})[param] = _convert_override(
                    kind, param, raw
                )
            elif key in _SCHEMA:
                values[key] = _convert(key, raw, _SCHEMA[key])
            else:
                raise ConfigError(f"unknown config key {key!r}")
    return validate(RunConfig(**values, overrides=overrides))


def validate(config):
    if config.protocol not in PROTOCOLS:
        raise ConfigError(
            f"protocol must be one of {PROTOCOLS}, got {config.protocol!r}"
        )
    if not 0.0 < config.train_ratio < 1.0:
        raise ConfigError(f"train_ratio must be in (0, 1), got {config.train_ratio}")
    if config.runs < 1:
        raise ConfigError(f"runs must be >= 1, got {config.runs}")
    if config.folds < 2:
        raise ConfigError(f"folds must be >= 2, got {config.folds}")
    if config.max_features < 1:
        raise ConfigError(f"max_features must be >= 1, got {config.max_features}")
    if config.seed < 0:
        raise ConfigError(f"seed must be non-negative, got {config.seed}")
    for kind, params in config.overrides.items():
        if kind not in CLASSIFIER_KINDS:
            raise ConfigError(f"unknown classifier kind {kind!r} in overrides")
        accepted = classifier_param_defaults(kind)
        for param in params:
            if param not in accepted:
                raise ConfigError(f"unknown config key '{kind}.{param}'")
    return config


def apply_cli_values(config, **cli_values):
    """Overlay non-None CLI flag values onto a config."""
    updates = {k: v for k, v in cli_values.items() if v is not None}
    return validate(replace(config, **updates)) if updates else validate(config)
