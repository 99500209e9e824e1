"""Command-line pipeline: ingest, preprocess, fit-features, train, predict,
evaluate, and the five-classifier compare benchmark.

Stages communicate through files in the output directory; every stage
reads its predecessor's artifact. All randomness derives from the single
configured base seed, so reruns with the same config are byte-identical.
"""

import argparse
import csv
import json
import os
import sys

from . import __version__
from .config import RunConfig, apply_cli_values, parse_config_file
from .corpus import Corpus, LabeledComment, Sentiment, label_distribution, load_csv, split
from .eval import confusion_matrix, cross_validate, evaluate_repeated, metrics
from .exceptions import ConfigError, RusentError
from .features import TfidfVectorizer, load_tfidf, save_tfidf, write_word_frequencies
from .models import CLASSIFIER_KINDS, ClassifierSpec, load_model, make_classifier, save_model
from .preprocess import TokenizedComment, default_stopwords, load_stopwords, preprocess_corpus
from .seeding import derive_seed

CORPUS_FILE = "corpus.csv"
DISTRIBUTION_FILE = "label_distribution.json"
PREPROCESSED_FILE = "preprocessed.csv"
TFIDF_FILE = "tfidf.json"
WORD_FREQ_FILE = "word_frequencies.csv"


def _round6(obj):
    if isinstance(obj, float):
        return round(obj, 6)
    if isinstance(obj, dict):
        return {k: _round6(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round6(v) for v in obj]
    return obj


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_round6(payload), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _open_csv_writer(path):
    fh = open(path, "w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def _require_artifact(path, producer):
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"missing artifact {path}; run the '{producer}' stage first"
        )


def _info(message):
    print(message, file=sys.stderr)


def _load_stopword_list(config):
    if config.stopwords:
        return load_stopwords(config.stopwords)
    return default_stopwords()


def _distribution_payload(corpus):
    dist = label_distribution(corpus)
    return {
        s.label: {"count": d["count"], "fraction": d["fraction"]}
        for s, d in dist.items()
    }


def _distribution_line(corpus):
    dist = label_distribution(corpus)
    return " ".join(f"{s.label} {dist[s]['fraction']:.1%}" for s in Sentiment)


def _spec_for(config, kind):
    overrides = config.classifier_overrides(kind)
    if kind == "naive_bayes" and config.allow_missing_class:
        overrides.setdefault("allow_missing_class", True)
    return ClassifierSpec(kind, overrides)


def _read_preprocessed(path):
    """Rebuild (corpus, docs) from a preprocessed CSV; row ids are the
    artifact's own data-row ordinals."""
    records = []
    docs = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header_skipped = False
        i = 0
        for row in reader:
            if not header_skipped:
                header_skipped = True
                continue
            if not row:
                continue
            text, label_str, text_final = row[0], row[1], row[2]
            label = Sentiment.parse(label_str)
            records.append(LabeledComment(text, label, i))
            docs.append(TokenizedComment(i, tuple(text_final.split()), label))
            i += 1
    return Corpus(tuple(records), str(path)), docs


def _staged_split(config, corpus, docs):
    """The single train/test split shared by fit-features, train and predict."""
    result = split(corpus, config.train_ratio, derive_seed(config.seed, "split"))
    by_id = {d.row_id: d for d in docs}
    train_docs = [by_id[r.row_id] for r in result.train]
    test_docs = [by_id[r.row_id] for r in result.test]
    return result, train_docs, test_docs


def cmd_ingest(config, args):
    if not config.dataset:
        raise ConfigError("no dataset configured; set 'dataset' or pass --dataset")
    corpus = load_csv(
        config.dataset,
        has_header=config.has_header,
        dedup=config.dedup,
        skip_bad_rows=config.skip_bad_rows,
    )
    os.makedirs(config.out, exist_ok=True)
    out_path = os.path.join(config.out, CORPUS_FILE)
    fh, writer = _open_csv_writer(out_path)
    with fh:
        writer.writerow(["comment", "sentiment"])
        for record in corpus:
            writer.writerow([record.text, record.label.label])
    payload = _distribution_payload(corpus)
    _write_json(os.path.join(config.out, DISTRIBUTION_FILE), payload)
    print(json.dumps(_round6(payload), sort_keys=True))
    _info(f"ingested {len(corpus)} records -> {out_path}")
    return 0


def cmd_preprocess(config, args):
    corpus_path = os.path.join(config.out, CORPUS_FILE)
    _require_artifact(corpus_path, "ingest")
    corpus = load_csv(corpus_path, has_header=True, dedup=False)
    stopwords = _load_stopword_list(config)
    docs = preprocess_corpus(corpus, stopwords, config.strip_punct)
    out_path = os.path.join(config.out, PREPROCESSED_FILE)
    fh, writer = _open_csv_writer(out_path)
    with fh:
        writer.writerow(["comment", "sentiment", "text_final"])
        for record, doc in zip(corpus, docs):
            writer.writerow([record.text, record.label.label, doc.text_final])
    emptied = sum(1 for d in docs if d.is_empty)
    _info(
        f"preprocessed {len(docs)} records ({emptied} emptied by stop-word "
        f"removal) -> {out_path}"
    )
    return 0


def cmd_fit_features(config, args):
    pre_path = os.path.join(config.out, PREPROCESSED_FILE)
    _require_artifact(pre_path, "preprocess")
    corpus, docs = _read_preprocessed(pre_path)
    if config.fit_on_all:
        fit_docs = docs
    else:
        result, fit_docs, _ = _staged_split(config, corpus, docs)
        _info(f"vocabulary fit on train split: {_distribution_line(result.train)}")
    vectorizer = TfidfVectorizer(max_features=config.max_features).fit(fit_docs)
    model_path = os.path.join(config.out, TFIDF_FILE)
    save_tfidf(vectorizer, model_path)
    write_word_frequencies(vectorizer, os.path.join(config.out, WORD_FREQ_FILE))
    _info(f"fitted tf-idf vocabulary of {vectorizer.n_features_} terms -> {model_path}")
    return 0


def cmd_train(config, args):
    pre_path = os.path.join(config.out, PREPROCESSED_FILE)
    tfidf_path = os.path.join(config.out, TFIDF_FILE)
    _require_artifact(pre_path, "preprocess")
    _require_artifact(tfidf_path, "fit-features")
    corpus, docs = _read_preprocessed(pre_path)
    result, train_docs, _ = _staged_split(config, corpus, docs)
    _info(f"train split: {_distribution_line(result.train)}")
    _info(f"test split:  {_distribution_line(result.test)}")
    vectorizer = load_tfidf(tfidf_path)
    X = vectorizer.transform(train_docs)
    y = result.train.labels()
    spec = _spec_for(config, args.classifier)
    model = make_classifier(spec, seed=derive_seed(config.seed, f"train:{spec.kind}"))
    model.fit(X, y)
    model_path = os.path.join(config.out, f"model_{spec.kind}.json")
    save_model(model, model_path)
    _info(f"trained {spec.kind} on {X.shape[0]} records -> {model_path}")
    return 0


def cmd_predict(config, args):
    pre_path = os.path.join(config.out, PREPROCESSED_FILE)
    tfidf_path = os.path.join(config.out, TFIDF_FILE)
    model_path = os.path.join(config.out, f"model_{args.classifier}.json")
    _require_artifact(pre_path, "preprocess")
    _require_artifact(tfidf_path, "fit-features")
    _require_artifact(model_path, "train")
    corpus, docs = _read_preprocessed(pre_path)
    result, _, test_docs = _staged_split(config, corpus, docs)
    vectorizer = load_tfidf(tfidf_path)
    model = load_model(model_path)
    predictions = model.predict(vectorizer.transform(test_docs))
    out_path = os.path.join(config.out, f"predictions_{args.classifier}.csv")
    fh, writer = _open_csv_writer(out_path)
    with fh:
        writer.writerow(["row_id", "truth", "predicted"])
        for record, pred in zip(result.test, predictions):
            writer.writerow(
                [record.row_id, record.label.label, Sentiment(int(pred)).label]
            )
    _info(f"predicted {len(test_docs)} test records -> {out_path}")
    return 0


def cmd_evaluate(config, args):
    pred_path = os.path.join(config.out, f"predictions_{args.classifier}.csv")
    _require_artifact(pred_path, "predict")
    truths = []
    preds = []
    with open(pred_path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        for row in reader:
            if not row:
                continue
            truths.append(Sentiment.parse(row[1]))
            preds.append(Sentiment.parse(row[2]))
    cm = confusion_matrix(truths, preds)
    report = metrics(cm)
    payload = {
        "classifier": args.classifier,
        "count": int(cm.sum()),
        "confusion": cm.tolist(),
        **report.as_dict(),
    }
    out_path = os.path.join(config.out, f"metrics_{args.classifier}.json")
    _write_json(out_path, payload)
    _info(f"accuracy {report.accuracy:.6f} -> {out_path}")
    return 0


def _ranking(results):
    order = sorted(results, key=lambda kind: (-results[kind].mean["accuracy"], kind))
    return [
        {"classifier": kind, "mean_accuracy": results[kind].mean["accuracy"]}
        for kind in order
    ]


def _write_compare_outputs(config, results, protocol_payload):
    os.makedirs(config.out, exist_ok=True)
    ranking = _ranking(results)
    payload = {
        "protocol": protocol_payload,
        "classifiers": {
            kind: {
                "runs": agg.runs,
                "seeds": list(agg.seeds),
                "mean": agg.mean,
                "std": agg.std,
                "per_run": [r.as_dict() for r in agg.per_run],
                "pooled_confusion": agg.pooled_confusion.tolist(),
            }
            for kind, agg in results.items()
        },
        "ranking": ranking,
    }
    _write_json(os.path.join(config.out, "metrics.json"), payload)

    fh, writer = _open_csv_writer(os.path.join(config.out, "metrics.csv"))
    with fh:
        writer.writerow(["classifier", "metric", "mean", "std"])
        for kind in sorted(results):
            agg = results[kind]
            for metric_name in sorted(agg.mean):
                writer.writerow(
                    [kind, metric_name, f"{agg.mean[metric_name]:.6f}",
                     f"{agg.std[metric_name]:.6f}"]
                )

    for kind, agg in results.items():
        fh, writer = _open_csv_writer(
            os.path.join(config.out, f"confusion_{kind}.csv")
        )
        with fh:
            writer.writerow(["true_class", "negative", "neutral", "positive"])
            for s in Sentiment:
                writer.writerow([s.label] + agg.pooled_confusion[s].tolist())

    lines = [f"{'rank':>4}  {'classifier':<20} {'mean_accuracy':>13} {'std':>9}"]
    for position, entry in enumerate(ranking, start=1):
        kind = entry["classifier"]
        lines.append(
            f"{position:>4}  {kind:<20} {results[kind].mean['accuracy']:>13.6f} "
            f"{results[kind].std['accuracy']:>9.6f}"
        )
    table = "\n".join(lines) + "\n"
    with open(os.path.join(config.out, "ranking.txt"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(table)
    print(table, end="")


def cmd_compare(config, args):
    if not config.dataset:
        raise ConfigError("no dataset configured; set 'dataset' or pass --dataset")
    corpus = load_csv(
        config.dataset,
        has_header=config.has_header,
        dedup=config.dedup,
        skip_bad_rows=config.skip_bad_rows,
    )
    stopwords = _load_stopword_list(config)
    _info(f"corpus: {len(corpus)} records, {_distribution_line(corpus)}")
    if config.protocol == "repeated":
        for r in range(config.runs):
            seed = config.seed + r
            result = split(corpus, config.train_ratio, derive_seed(seed, "split"))
            _info(
                f"[seed {seed}] train: {_distribution_line(result.train)} | "
                f"test: {_distribution_line(result.test)}"
            )
        protocol_payload = {
            "name": "repeated",
            "train_ratio": config.train_ratio,
            "runs": config.runs,
            "fit_on_all": config.fit_on_all,
            "max_features": config.max_features,
            "seed": config.seed,
        }
    else:
        protocol_payload = {
            "name": "kfold",
            "folds": config.folds,
            "fit_on_all": config.fit_on_all,
            "max_features": config.max_features,
            "seed": config.seed,
        }
    results = {}
    for kind in CLASSIFIER_KINDS:
        spec = _spec_for(config, kind)
        if config.protocol == "repeated":
            agg = evaluate_repeated(
                spec,
                corpus,
                stopwords,
                runs=config.runs,
                base_seed=config.seed,
                train_ratio=config.train_ratio,
                fit_on_all=config.fit_on_all,
                max_features=config.max_features,
                strip_punct=config.strip_punct,
            )
        else:
            agg = cross_validate(
                spec,
                corpus,
                stopwords,
                k=config.folds,
                fit_on_all=config.fit_on_all,
                max_features=config.max_features,
                strip_punct=config.strip_punct,
                seed=config.seed,
            )
        _info(
            f"{kind}: mean accuracy {agg.mean['accuracy']:.6f} "
            f"(std {agg.std['accuracy']:.6f})"
        )
        results[kind] = agg
    _write_compare_outputs(config, results, protocol_payload)
    return 0


_COMMANDS = {
    "ingest": cmd_ingest,
    "preprocess": cmd_preprocess,
    "fit-features": cmd_fit_features,
    "train": cmd_train,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a key=value config file")
    common.add_argument("--dataset", help="dataset CSV (comment,sentiment[,ignored])")
    common.add_argument("--stopwords", help="stop-word file (one word per line)")
    common.add_argument("--seed", type=int, help="base seed for all randomness")
    common.add_argument("--out", help="output directory for stage artifacts")
    common.add_argument(
        "--protocol", choices=["repeated", "kfold"], help="evaluation protocol"
    )
    common.add_argument(
        "--max-features", type=int, dest="max_features",
        help="vocabulary size cap (default 3000)",
    )
    common.add_argument(
        "--fit-on-all", action="store_true", default=None, dest="fit_on_all",
        help="fit the tf-idf vocabulary on train+test instead of train only",
    )
    common.add_argument(
        "--skip-bad-rows", action="store_true", default=None, dest="skip_bad_rows",
        help="skip malformed dataset rows instead of aborting",
    )
    common.add_argument(
        "--allow-missing-class", action="store_true", default=None,
        dest="allow_missing_class",
        help="let naive Bayes train on data missing a class",
    )
    common.add_argument(
        "--strip-punct", action="store_true", default=None, dest="strip_punct",
        help="strip leading/trailing punctuation from tokens",
    )

    parser = argparse.ArgumentParser(
        prog="rusent",
        description="Roman Urdu sentiment classification benchmark toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("ingest", "preprocess", "fit-features", "compare"):
        sub.add_parser(name, parents=[common])
    for name in ("train", "predict", "evaluate"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument(
            "--classifier", required=True, choices=list(CLASSIFIER_KINDS),
            help="classifier kind the stage operates on",
        )
    return parser


def build_config(args):
    if args.config:
        config = parse_config_file(args.config)
    else:
        config = RunConfig()
    return apply_cli_values(
        config,
        dataset=args.dataset,
        stopwords=args.stopwords,
        seed=args.seed,
        out=args.out,
        protocol=args.protocol,
        max_features=args.max_features,
        fit_on_all=args.fit_on_all,
        skip_bad_rows=args.skip_bad_rows,
        allow_missing_class=args.allow_missing_class,
        strip_punct=args.strip_punct,
    )


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        config = build_config(args)
        return _COMMANDS[args.command](config, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (RusentError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
