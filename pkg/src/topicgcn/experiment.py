"""End-to-end experiment orchestration.

Inputs
------
An INI config (sections ``[data] [topics] [graph] [training] [run]``)
or an :class:`ExperimentConfig` built in code.

Outputs
-------
A run directory containing ``metrics.txt``, ``history.csv``,
``checkpoint.json``, ``topics.csv``, ``edges.tsv`` (all byte-
deterministic for a fixed config and seed) plus ``timing.txt`` (wall
clock, excluded from determinism guarantees).  A failed run removes
whatever it had written, so either all report files exist or none.

Pipeline: ingest -> topics (one LDA fit per cluster count) -> graphs
(topic dictionaries, tf-idf re-embedding, top-K linking) -> split ->
train -> evaluate -> report.  Each stage failure is rethrown as
:class:`~topicgcn.errors.StageError` naming the stage.

Derived seeds keep the stages decoupled: the LDA fit for cluster count
``c`` uses ``seed + 100000 + c``, the train/test split uses
``seed + 1``, and parameter initialization uses ``seed + 2``.

Sweeps rerun the pipeline per row, sharing the ingested corpus and an
in-process LDA cache keyed by (corpus digest, sampler config).
"""

from __future__ import annotations

import base64
import configparser
import csv
import hashlib
import io
import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from typing import Sequence

import numpy as np

from .corpus import (
    LABEL_PROFILES,
    Corpus,
    builtin_stopwords,
    load_posts,
    load_stopwords,
    preprocess,
)
from .errors import ConfigError, StageError
from .gcn import MultiGraphGcn, GcnLayerParams, predict_proba
from .graphs import TopicGraph, build_topic_graph
from .lda import LdaConfig, TopicModel, fit_lda
from .metrics import Metrics, evaluate
from .tfidf import fit_tfidf
from .topic_words import rank_topic_words, select_topic_words
from .training import TrainConfig, TrainHistory, stratified_split, train

_CHECKPOINT_VERSION = 1


@dataclass
class ExperimentConfig:
    """Every knob of one experiment; see module docstring for the INI map."""

    data_path: str
    data_format: str = "jsonl"
    label_profile: str = "twitter"
    stopwords: str = "builtin"
    normalizer: str = "stem"
    clusters: tuple[int, ...] = (8, 16, 32)
    ratio: float = 0.1
    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 500
    top_k: int = 5
    epochs: int = 300
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    split_ratio: float = 0.9
    eval_every: int = 10
    seed: int = 0
    out_dir: str = "runs/latest"

    def validate(self) -> None:
        if not self.data_path:
            raise ConfigError("data.path is required")
        if self.data_format not in ("jsonl", "tsv"):
            raise ConfigError(f"unknown data.format: {self.data_format!r}")
        if self.label_profile not in LABEL_PROFILES:
            raise ConfigError(f"unknown data.label_profile: {self.label_profile!r}")
        if self.normalizer not in ("stem", "none"):
            raise ConfigError(f"unknown data.normalizer: {self.normalizer!r}")
        if not self.clusters:
            raise ConfigError("topics.clusters must be nonempty")
        if any(c < 1 for c in self.clusters):
            raise ConfigError("topics.clusters entries must be >= 1")
        if list(self.clusters) != sorted(set(self.clusters)):
            raise ConfigError("topics.clusters must be strictly increasing")
        if not 0.0 < self.ratio <= 1.0:
            raise ConfigError(f"topics.ratio must lie in (0, 1], got {self.ratio}")
        if self.alpha is not None and self.alpha <= 0.0:
            raise ConfigError(f"topics.alpha must be positive, got {self.alpha}")
        if self.beta <= 0.0:
            raise ConfigError(f"topics.beta must be positive, got {self.beta}")
        if self.iterations < 1:
            raise ConfigError("topics.iterations must be >= 1")
        if not 0 <= self.burn_in < self.iterations:
            raise ConfigError("topics.burn_in must lie in [0, iterations)")
        if self.top_k < 1:
            raise ConfigError(f"graph.top_k must be >= 1, got {self.top_k}")
        if self.epochs < 1:
            raise ConfigError("training.epochs must be >= 1")
        if self.lr <= 0.0:
            raise ConfigError("training.lr must be positive")
        if not 0.0 < self.split_ratio < 1.0:
            raise ConfigError("training.split_ratio must lie strictly in (0, 1)")
        if self.eval_every < 1:
            raise ConfigError("training.eval_every must be >= 1")


def _parse_int(text: str) -> int:
    return int(text)


def _parse_float(text: str) -> float:
    return float(text)


def _parse_alpha(text: str) -> float | None:
    return None if text.strip().lower() == "auto" else float(text)


def _parse_clusters(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty cluster list")
    return tuple(int(p) for p in parts)


_FIELDS: dict[str, tuple[str, object]] = {
    "data.path": ("data_path", str),
    "data.format": ("data_format", str),
    "data.label_profile": ("label_profile", str),
    "data.stopwords": ("stopwords", str),
    "data.normalizer": ("normalizer", str),
    "topics.clusters": ("clusters", _parse_clusters),
    "topics.ratio": ("ratio", _parse_float),
    "topics.alpha": ("alpha", _parse_alpha),
    "topics.beta": ("beta", _parse_float),
    "topics.iterations": ("iterations", _parse_int),
    "topics.burn_in": ("burn_in", _parse_int),
    "graph.top_k": ("top_k", _parse_int),
    "training.epochs": ("epochs", _parse_int),
    "training.lr": ("lr", _parse_float),
    "training.beta1": ("beta1", _parse_float),
    "training.beta2": ("beta2", _parse_float),
    "training.epsilon": ("epsilon", _parse_float),
    "training.split_ratio": ("split_ratio", _parse_float),
    "training.eval_every": ("eval_every", _parse_int),
    "run.seed": ("seed", _parse_int),
    "run.out_dir": ("out_dir", str),
}


def config_from_ini(path: str) -> ExperimentConfig:
    """Parse and validate an INI config file.

    Unknown sections or keys raise :class:`ConfigError` so typos fail
    loudly instead of silently using defaults.
    """
    parser = configparser.ConfigParser()
    try:
        read_ok = parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    if not read_ok:
        raise ConfigError(f"cannot read config file: {path}")
    values: dict[str, object] = {}
    for section in parser.sections():
        for key, raw in parser[section].items():
            full = f"{section}.{key}"
            if full not in _FIELDS:
                raise ConfigError(f"unknown config key: {full}")
            attr, convert = _FIELDS[full]
            try:
                values[attr] = convert(raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for {full}: {raw!r} ({exc})") from exc
    if "data_path" not in values:
        raise ConfigError("data.path is required")
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


def apply_overrides(cfg: ExperimentConfig, pairs: Sequence[str]) -> ExperimentConfig:
    """Apply ``section.key=value`` override strings onto a config."""
    updates: dict[str, object] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override must look like section.key=value: {pair!r}")
        full, raw = pair.split("=", 1)
        full = full.strip()
        if full not in _FIELDS:
            raise ConfigError(f"unknown config key: {full}")
        attr, convert = _FIELDS[full]
        try:
            updates[attr] = convert(raw.strip())
        except ValueError as exc:
            raise ConfigError(f"bad value for {full}: {raw!r} ({exc})") from exc
    out = replace(cfg, **updates)
    out.validate()
    return out


def lda_seed(seed: int, num_topics: int) -> int:
    return seed + 100000 + num_topics


def split_seed(seed: int) -> int:
    return seed + 1


def init_seed(seed: int) -> int:
    return seed + 2


def corpus_digest(corpus: Corpus) -> str:
    """Stable content hash over documents (ids, tokens, labels)."""
    payload = json.dumps(
        [[d.id, d.tokens, d.label] for d in corpus.documents],
        separators=(",", ":"),
    ).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, str(exc)) from exc


def load_corpus(cfg: ExperimentConfig) -> Corpus:
    """Ingest stage: read posts and run the cleaning pipeline."""
    with _stage("ingest"):
        posts = load_posts(cfg.data_path, cfg.data_format)
        if cfg.stopwords == "builtin":
            stopwords = builtin_stopwords()
        elif cfg.stopwords == "none":
            stopwords = frozenset()
        else:
            stopwords = load_stopwords(cfg.stopwords)
        return preprocess(
            posts, LABEL_PROFILES[cfg.label_profile], stopwords, cfg.normalizer
        )


def build_topics(
    cfg: ExperimentConfig,
    corpus: Corpus,
    lda_cache: dict | None = None,
) -> list[tuple[int, TopicModel]]:
    """Topics stage: one LDA fit per requested cluster count."""
    with _stage("topics"):
        digest = corpus_digest(corpus)
        models = []
        for c in cfg.clusters:
            lda_cfg = LdaConfig(
                num_topics=c,
                alpha=cfg.alpha,
                beta=cfg.beta,
                iterations=cfg.iterations,
                burn_in=cfg.burn_in,
                seed=lda_seed(cfg.seed, c),
            )
            key = (digest, lda_cfg)
            if lda_cache is not None and key in lda_cache:
                model = lda_cache[key]
            else:
                model = fit_lda(corpus, lda_cfg)
                if lda_cache is not None:
                    lda_cache[key] = model
            models.append((c, model))
        return models


def build_all_graphs(
    cfg: ExperimentConfig,
    corpus: Corpus,
    topic_models: Sequence[tuple[int, TopicModel]],
) -> tuple[list[TopicGraph], list[dict]]:
    """Graphs stage: topic dictionaries, re-embedding, top-K linking.

    Returns the graphs (ordered by cluster count, then topic id) and a
    meta record per graph with the data a checkpoint needs to re-embed.
    """
    with _stage("graphs"):
        graphs: list[TopicGraph] = []
        meta: list[dict] = []
        for c, model in topic_models:
            topic_dicts = select_topic_words(model, cfg.ratio)
            for td in topic_dicts:
                graph = build_topic_graph(corpus, td, cfg.top_k)
                idf = fit_tfidf(corpus, td.dictionary).idf
                graphs.append(graph)
                meta.append(
                    {
                        "clusters": c,
                        "topic": td.topic_id,
                        "tokens": list(td.dictionary.tokens),
                        "idf": idf,
                        "edge_count": len(graph.edges),
                        "weights": td.weights,
                        "edges": graph.edges,
                    }
                )
        return graphs, meta


def _encode_array(arr: np.ndarray) -> dict:
    data = np.ascontiguousarray(arr, dtype="<f8")
    return {
        "shape": list(data.shape),
        "data": base64.b64encode(data.tobytes()).decode("ascii"),
    }


def _decode_array(obj: dict) -> np.ndarray:
    flat = np.frombuffer(base64.b64decode(obj["data"]), dtype="<f8")
    return flat.reshape(obj["shape"]).copy()


def _config_echo(cfg: ExperimentConfig) -> dict[str, str]:
    # out_dir is excluded: two runs into different directories must
    # still produce byte-identical reports.
    echo = {}
    for f in fields(cfg):
        if f.name == "out_dir":
            continue
        value = getattr(cfg, f.name)
        if f.name == "clusters":
            echo[f.name] = ",".join(str(c) for c in value)
        elif value is None:
            echo[f.name] = "auto"
        elif isinstance(value, float):
            echo[f.name] = repr(value)
        else:
            echo[f.name] = str(value)
    return echo


def checkpoint_payload(
    cfg: ExperimentConfig, model: MultiGraphGcn, meta: Sequence[dict]
) -> str:
    """Deterministic JSON text with parameters, dictionaries, and idf."""
    payload = {
        "version": _CHECKPOINT_VERSION,
        "config": _config_echo(cfg),
        "graphs": [
            {
                "clusters": m["clusters"],
                "topic": m["topic"],
                "tokens": m["tokens"],
                "idf": _encode_array(m["idf"]),
            }
            for m in meta
        ],
        "model": {
            "encoders": [
                [
                    {
                        "weight": _encode_array(layer.weight),
                        "bias": _encode_array(layer.bias),
                    }
                    for layer in encoder
                ]
                for encoder in model.encoders
            ],
            "head": {
                "weight": _encode_array(model.head.weight),
                "bias": _encode_array(model.head.bias),
            },
        },
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def load_checkpoint(path: str) -> tuple[MultiGraphGcn, list[dict], dict]:
    """Rebuild the model, graph meta (with idf arrays), and config echo."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("version") != _CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version: {payload.get('version')}")
    encoders = [
        [GcnLayerParams(_decode_array(l["weight"]), _decode_array(l["bias"])) for l in enc]
        for enc in payload["model"]["encoders"]
    ]
    head = GcnLayerParams(
        _decode_array(payload["model"]["head"]["weight"]),
        _decode_array(payload["model"]["head"]["bias"]),
    )
    meta = [
        {
            "clusters": g["clusters"],
            "topic": g["topic"],
            "tokens": g["tokens"],
            "idf": _decode_array(g["idf"]),
        }
        for g in payload["graphs"]
    ]
    return MultiGraphGcn(encoders, head), meta, payload["config"]


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _metrics_text(
    cfg: ExperimentConfig,
    metrics: Metrics,
    n_nodes: int,
    n_train: int,
    n_graphs: int,
    embedding_width: int,
    mean_degree: float,
) -> str:
    lines = [
        f"accuracy = {_fmt(metrics.accuracy)}",
        f"precision = {_fmt(metrics.precision)}",
        f"recall = {_fmt(metrics.recall)}",
        f"f1 = {_fmt(metrics.f1)}",
        f"auc = {_fmt(metrics.auc)}",
    ]
    for cls in (0, 1):
        cm = metrics.per_class[cls]
        lines.append(f"class{cls}.precision = {_fmt(cm.precision)}")
        lines.append(f"class{cls}.recall = {_fmt(cm.recall)}")
        lines.append(f"class{cls}.f1 = {_fmt(cm.f1)}")
    conf = metrics.confusion
    lines.append(f"confusion.tn = {conf[0, 0]}")
    lines.append(f"confusion.fp = {conf[0, 1]}")
    lines.append(f"confusion.fn = {conf[1, 0]}")
    lines.append(f"confusion.tp = {conf[1, 1]}")
    lines.append(f"node_count = {n_nodes}")
    lines.append(f"train_count = {n_train}")
    lines.append(f"test_count = {metrics.support}")
    lines.append(f"graph_count = {n_graphs}")
    lines.append(f"embedding_width = {embedding_width}")
    lines.append(f"mean_degree = {_fmt(mean_degree)}")
    for key, value in _config_echo(cfg).items():
        lines.append(f"config.{key} = {value}")
    return "\n".join(lines) + "\n"


def _history_csv(history: TrainHistory) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["epoch", "loss", "train_acc", "test_acc", "test_f1", "test_auc"])
    for rec in history.records:
        if rec.test_metrics is None:
            tail = ["", "", ""]
        else:
            tm = rec.test_metrics
            tail = [_fmt(tm.accuracy), _fmt(tm.f1), "" if tm.auc is None else _fmt(tm.auc)]
        writer.writerow([rec.epoch, _fmt(rec.loss), _fmt(rec.train_accuracy)] + tail)
    return buf.getvalue()


def _topics_csv(meta: Sequence[dict]) -> str:
    # "topic" is the pooled graph index: clusters expanded in order, so
    # H = [2, 4] yields topics 0..5.
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["topic", "rank", "token", "weight"])
    for topic, m in enumerate(meta):
        ranked = sorted(m["weights"].items(), key=lambda kv: (-kv[1], kv[0]))
        for rank, (token, weight) in enumerate(ranked, start=1):
            writer.writerow([topic, rank, token, _fmt(weight)])
    return buf.getvalue()


def _edges_tsv(meta: Sequence[dict]) -> str:
    lines = ["topic_id\ti\tj\tsimilarity"]
    for topic, m in enumerate(meta):
        edges = m["edges"]
        for i, j in edges.pairs():
            lines.append(f"{topic}\t{i}\t{j}\t{_fmt(edges.similarity[(i, j)])}")
    return "\n".join(lines) + "\n"


@dataclass
class RunResult:
    out_dir: str
    metrics: Metrics
    history: TrainHistory
    model: MultiGraphGcn
    graph_meta: list[dict]
    mean_degree: float
    files: list[str]


def run_experiment(
    cfg: ExperimentConfig,
    corpus: Corpus | None = None,
    lda_cache: dict | None = None,
) -> RunResult:
    """Execute the full pipeline and write the report directory.

    ``corpus`` and ``lda_cache`` let sweeps share work across rows; both
    default to a cold start.
    """
    cfg.validate()
    total_start = time.perf_counter()
    if corpus is None:
        corpus = load_corpus(cfg)
    topic_models = build_topics(cfg, corpus, lda_cache)
    graphs, meta = build_all_graphs(cfg, corpus, topic_models)

    labels = corpus.labels()
    n = len(corpus)
    with _stage("split"):
        masks = stratified_split(labels, cfg.split_ratio, split_seed(cfg.seed))
    with _stage("train"):
        train_cfg = TrainConfig(
            epochs=cfg.epochs,
            lr=cfg.lr,
            beta1=cfg.beta1,
            beta2=cfg.beta2,
            epsilon=cfg.epsilon,
            eval_every=cfg.eval_every,
            seed=init_seed(cfg.seed),
        )
        model, history = train(graphs, labels, masks, train_cfg)
    with _stage("evaluate"):
        probs = predict_proba(model, graphs)
        metrics = evaluate(probs, labels, masks.test)

    mean_degree = float(
        np.mean([2.0 * m["edge_count"] / n for m in meta]) if meta else 0.0
    )
    with _stage("report"):
        embedding_width = model.head.weight.shape[0]
        contents = {
            "metrics.txt": _metrics_text(
                cfg, metrics, n, int(masks.train.sum()), len(graphs),
                embedding_width, mean_degree,
            ),
            "history.csv": _history_csv(history),
            "checkpoint.json": checkpoint_payload(cfg, model, meta),
            "topics.csv": _topics_csv(meta),
            "edges.tsv": _edges_tsv(meta),
            "timing.txt": (
                f"train_seconds = {history.duration_seconds!r}\n"
                f"total_seconds = {time.perf_counter() - total_start!r}\n"
            ),
        }
        files = _write_outputs(cfg.out_dir, contents)
    return RunResult(cfg.out_dir, metrics, history, model, meta, mean_degree, files)


def _write_outputs(out_dir: str, contents: dict[str, str]) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written: list[str] = []
    try:
        for name, text in contents.items():
            path = os.path.join(out_dir, name)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            written.append(path)
    except Exception:
        for path in written:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise
    return written


@dataclass
class SweepRow:
    label: str
    metrics: Metrics | None
    mean_degree: float | None
    train_seconds: float | None
    error: str | None


@dataclass
class SweepResult:
    rows: list[SweepRow]
    csv_path: str

    @property
    def ok(self) -> bool:
        return all(row.error is None for row in self.rows)


def _sweep_cells(row: SweepRow, fields: Sequence[str]) -> list[str]:
    if row.error is not None:
        return [row.label] + [""] * len(fields) + [row.error]
    values = {
        "accuracy": row.metrics.accuracy,
        "f1": row.metrics.f1,
        "auc": row.metrics.auc,
        "train_seconds": row.train_seconds,
        "mean_degree": row.mean_degree,
    }
    cells = [row.label]
    for field in fields:
        value = values[field]
        cells.append("" if value is None else _fmt(value))
    return cells + [""]


def _sweep_csv(rows: Sequence[SweepRow], label_column: str, fields: Sequence[str],
               path: str) -> None:
    # A trailing error column keeps failed rows in the artifact; it is
    # empty on every successful row.
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([label_column, *fields, "error"])
    for row in rows:
        writer.writerow(_sweep_cells(row, fields))
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())


def sweep_clusters(
    cfg: ExperimentConfig, combinations: Sequence[Sequence[int]]
) -> SweepResult:
    """One full run per cluster combination, sharing corpus and LDA fits.

    Writes ``sweep_clusters.csv`` under ``cfg.out_dir``; per-row reports
    land in ``H_<combo>`` subdirectories.  A failed row is recorded with
    its error and does not stop later rows.
    """
    if not combinations:
        raise ConfigError("at least one cluster combination is required")
    for combo in combinations:
        if not combo:
            raise ConfigError("cluster combinations must be nonempty")
        if list(combo) != sorted(set(combo)) or any(c < 1 for c in combo):
            raise ConfigError(f"bad cluster combination: {list(combo)}")
    corpus = load_corpus(cfg)
    cache: dict = {}
    rows = []
    for combo in combinations:
        label = "+".join(str(c) for c in combo)
        sub = replace(
            cfg,
            clusters=tuple(combo),
            out_dir=os.path.join(cfg.out_dir, f"H_{'_'.join(str(c) for c in combo)}"),
        )
        try:
            result = run_experiment(sub, corpus=corpus, lda_cache=cache)
            rows.append(
                SweepRow(label, result.metrics, result.mean_degree,
                         result.history.duration_seconds, None)
            )
        except StageError as exc:
            rows.append(SweepRow(label, None, None, None, str(exc)))
    csv_path = os.path.join(cfg.out_dir, "sweep_clusters.csv")
    _sweep_csv(rows, "combination", ("accuracy", "f1", "auc", "train_seconds"), csv_path)
    return SweepResult(rows, csv_path)


def sweep_topk(cfg: ExperimentConfig, k_values: Sequence[int]) -> SweepResult:
    """One full run per neighbour count K, sharing corpus and LDA fits.

    LDA depends only on the corpus and cluster counts, so every row
    reuses the same fits; only linking and training repeat.  Writes
    ``sweep_topk.csv`` under ``cfg.out_dir``.
    """
    if not k_values:
        raise ConfigError("at least one k value is required")
    if any(k < 1 for k in k_values):
        raise ConfigError(f"k values must be >= 1: {list(k_values)}")
    if len(set(k_values)) != len(k_values):
        raise ConfigError(f"duplicate k values: {list(k_values)}")
    corpus = load_corpus(cfg)
    cache: dict = {}
    rows = []
    for k in k_values:
        sub = replace(cfg, top_k=k, out_dir=os.path.join(cfg.out_dir, f"K_{k}"))
        try:
            result = run_experiment(sub, corpus=corpus, lda_cache=cache)
            rows.append(
                SweepRow(str(k), result.metrics, result.mean_degree,
                         result.history.duration_seconds, None)
            )
        except StageError as exc:
            rows.append(SweepRow(str(k), None, None, None, str(exc)))
    csv_path = os.path.join(cfg.out_dir, "sweep_topk.csv")
    _sweep_csv(rows, "k", ("f1", "accuracy", "auc", "mean_degree"), csv_path)
    return SweepResult(rows, csv_path)


def dump_topics_csv(
    cfg: ExperimentConfig, top_m: int, corpus: Corpus | None = None
) -> str:
    """Standalone diagnostic: top words per topic without training."""
    if top_m < 1:
        raise ConfigError(f"top_m must be >= 1, got {top_m}")
    if corpus is None:
        corpus = load_corpus(cfg)
    topic_models = build_topics(cfg, corpus, None)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["topic", "rank", "token", "weight"])
    pooled = 0
    for c, model in topic_models:
        for topic in range(c):
            ranked = rank_topic_words(model, topic)[:top_m]
            for rank, (token, weight) in enumerate(ranked, start=1):
                writer.writerow([pooled, rank, token, _fmt(weight)])
            pooled += 1
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, "topics.csv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())
    return path


def dump_graph_tsv(cfg: ExperimentConfig, corpus: Corpus | None = None) -> str:
    """Standalone diagnostic: every edge of every topic graph."""
    if corpus is None:
        corpus = load_corpus(cfg)
    topic_models = build_topics(cfg, corpus, None)
    _, meta = build_all_graphs(cfg, corpus, topic_models)
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, "edges.tsv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_edges_tsv(meta))
    return path
