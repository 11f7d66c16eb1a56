"""Binary classification metrics over a node subset.

Headline precision/recall/F1 treat class 1 as positive; per-class
variants swap the positive class.  Zero denominators yield 0.0 rather
than an error.  AUC is the probability that a uniformly random positive
outranks a uniformly random negative (ties count half); the production
path computes it from average ranks, and an independent pairwise
counting oracle is kept alongside for verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass
class Metrics:
    """Headline numbers plus per-class breakdown and confusion counts.

    ``confusion[actual][predicted]`` over classes (0, 1).  ``auc`` is
    None when the evaluated subset contains a single class.
    """

    accuracy: float
    precision: float
    recall: float
    f1: float
    auc: float | None
    per_class: dict[int, ClassMetrics]
    confusion: np.ndarray
    support: int


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0.0 else 0.0


def _prf(tp: int, fp: int, fn: int) -> ClassMetrics:
    precision = _safe_div(tp, tp + fp)
    recall = _safe_div(tp, tp + fn)
    f1 = _safe_div(2.0 * precision * recall, precision + recall)
    return ClassMetrics(precision, recall, f1)


def auc_rank(scores: np.ndarray, labels: np.ndarray) -> float:
    """AUC from the rank-sum statistic with average ranks on ties."""
    pos = labels == 1
    n_pos = int(pos.sum())
    n_neg = labels.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs both classes present")
    ranks = rankdata(scores)
    rank_sum = float(ranks[pos].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def auc_pairwise_oracle(scores: np.ndarray, labels: np.ndarray) -> float:
    """AUC by direct enumeration of every (positive, negative) pair.

    Counts 1 for a strictly higher positive score, 0.5 for a tie.
    Quadratic; used to cross-check :func:`auc_rank`.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = scores[labels == 1]
    neg = scores[labels != 1]
    if pos.size == 0 or neg.size == 0:
        raise ValueError("AUC needs both classes present")
    wins = (pos[:, None] > neg[None, :]).sum()
    ties = (pos[:, None] == neg[None, :]).sum()
    return (float(wins) + 0.5 * float(ties)) / (pos.size * neg.size)


def evaluate(probs: np.ndarray, labels: np.ndarray, mask) -> Metrics:
    """Score hard predictions (argmax, ties to class 1) on masked nodes."""
    arr = np.asarray(mask)
    idx = np.flatnonzero(arr) if arr.dtype == np.bool_ else arr.astype(np.int64)
    if idx.size == 0:
        raise ValueError("mask selects no nodes")
    y = labels[idx]
    p1 = probs[idx, 1]
    preds = (p1 >= probs[idx, 0]).astype(np.int64)

    confusion = np.zeros((2, 2), dtype=np.int64)
    for actual, predicted in zip(y, preds):
        confusion[actual, predicted] += 1
    tn, fp = int(confusion[0, 0]), int(confusion[0, 1])
    fn, tp = int(confusion[1, 0]), int(confusion[1, 1])

    headline = _prf(tp, fp, fn)
    per_class = {
        0: _prf(tn, fn, fp),  # class 0 as positive
        1: headline,
    }
    auc = None
    if 0 < int((y == 1).sum()) < y.shape[0]:
        auc = auc_rank(p1, y)
    return Metrics(
        accuracy=_safe_div(tp + tn, idx.size),
        precision=headline.precision,
        recall=headline.recall,
        f1=headline.f1,
        auc=auc,
        per_class=per_class,
        confusion=confusion,
        support=int(idx.size),
    )
