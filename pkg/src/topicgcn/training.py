"""Transductive training loop with a stratified train/test split.

Every document participates in propagation on every epoch; the loss and
the parameter updates see only train-mask rows, so held-out labels can
never influence the learned parameters.  Test metrics recorded during
training are reporting only.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .gcn import (
    MultiGraphGcn,
    adam_step,
    forward,
    init_adam_state,
    init_model,
    loss_and_grad,
)
from .graphs import TopicGraph
from .metrics import Metrics, evaluate


@dataclass
class SplitMasks:
    """Complementary boolean masks over the node set."""

    train: np.ndarray
    test: np.ndarray


@dataclass
class TrainConfig:
    epochs: int = 300
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    eval_every: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.eval_every < 1:
            raise ValueError(f"eval_every must be >= 1, got {self.eval_every}")
        if self.lr <= 0.0:
            raise ValueError(f"lr must be positive, got {self.lr}")


@dataclass
class EpochRecord:
    epoch: int
    loss: float
    train_accuracy: float
    test_metrics: Metrics | None


@dataclass
class TrainHistory:
    records: list[EpochRecord] = field(default_factory=list)
    duration_seconds: float = 0.0


def stratified_split(labels: np.ndarray, ratio: float, seed: int) -> SplitMasks:
    """Per-class random split with ``ratio`` of each class in train.

    The per-class train count is ``ratio * count`` with any fractional
    remainder rounded up into train, clamped so both sides keep at least
    one document.  Requires both classes present with at least 2
    documents each; ``ratio`` must lie strictly between 0 and 1.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    train = np.zeros(labels.shape[0], dtype=bool)
    for cls in (0, 1):
        members = np.flatnonzero(labels == cls)
        if members.size < 2:
            raise ValueError(
                f"class {cls} has {members.size} documents; need at least 2"
            )
        n_train = min(math.ceil(ratio * members.size), members.size - 1)
        chosen = rng.permutation(members)[:n_train]
        train[chosen] = True
    return SplitMasks(train=train, test=~train)


def train(
    graphs: list[TopicGraph],
    labels: np.ndarray,
    masks: SplitMasks,
    config: TrainConfig,
) -> tuple[MultiGraphGcn, TrainHistory]:
    """Fit a fresh model on ``graphs``; returns it with the epoch log.

    Initialization uses ``config.seed``; Adam runs one full-batch step
    per epoch.  Each record reports the loss and accuracies of the
    forward pass that produced that epoch's update.  Test metrics appear
    every ``eval_every`` epochs and on the final epoch.
    """
    if not graphs:
        raise ValueError("at least one graph is required")
    n = graphs[0].features.shape[0]
    if labels.shape[0] != n:
        raise ValueError(f"{labels.shape[0]} labels for {n} nodes")
    model = init_model([g.features.shape[1] for g in graphs], config.seed)
    state = init_adam_state(
        model, lr=config.lr, beta1=config.beta1, beta2=config.beta2,
        epsilon=config.epsilon,
    )
    train_idx = np.flatnonzero(masks.train)
    history = TrainHistory()
    started = time.perf_counter()
    for epoch in range(1, config.epochs + 1):
        cache = forward(model, graphs)
        try:
            loss, grads = loss_and_grad(cache, labels, masks.train, model, graphs)
        except FloatingPointError as exc:
            raise FloatingPointError(f"epoch {epoch}: {exc}") from None
        adam_step(model, grads, state)

        # Same tie rule as evaluate(): a 0.5/0.5 row predicts class 1.
        preds = (cache.probs[train_idx, 1] >= cache.probs[train_idx, 0]).astype(int)
        train_acc = float((preds == labels[train_idx]).mean())
        test_metrics = None
        if epoch % config.eval_every == 0 or epoch == config.epochs:
            test_metrics = evaluate(cache.probs, labels, masks.test)
        history.records.append(EpochRecord(epoch, loss, train_acc, test_metrics))
    history.duration_seconds = time.perf_counter() - started
    return model, history
