"""Topic dictionaries: the highest-weight words of each LDA topic.

Each topic keeps its top ``ceil(ratio * |W|)`` words by topic-word
weight, ties broken by ascending token order, so selection is
deterministic.  The kept words form a sorted sub-dictionary used to
re-embed documents per topic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import Dictionary
from .lda import TopicModel


@dataclass
class TopicDictionary:
    """Selected vocabulary of one topic plus the selection weights."""

    topic_id: int
    dictionary: Dictionary
    weights: dict[str, float]


def rank_topic_words(model: TopicModel, topic: int) -> list[tuple[str, float]]:
    """All dictionary words of ``topic`` ordered by descending weight.

    Ties fall back to ascending token order.  The full ranking is
    returned; callers slice off the prefix they need.
    """
    row = model.topic_word[topic]
    # Dictionary tokens are sorted, so a stable sort on descending
    # weight yields the lexicographic tie-break for free.
    order = np.argsort(-row, kind="stable")
    tokens = model.dictionary.tokens
    return [(tokens[i], float(row[i])) for i in order]


def select_topic_words(model: TopicModel, ratio: float) -> list[TopicDictionary]:
    """Build one :class:`TopicDictionary` per topic.

    ``ratio`` is the kept fraction of the vocabulary, in (0, 1]; the
    kept count is ``ceil(ratio * |W|)``, so every topic dictionary is
    nonempty.
    """
    if not 0.0 < ratio <= 1.0:
        raise ValueError(f"ratio must lie in (0, 1], got {ratio}")
    vocab_size = len(model.dictionary)
    n_keep = math.ceil(ratio * vocab_size)
    out = []
    for topic in range(model.config.num_topics):
        ranked = rank_topic_words(model, topic)[:n_keep]
        weights = {token: weight for token, weight in ranked}
        out.append(
            TopicDictionary(
                topic_id=topic,
                dictionary=Dictionary.from_tokens(weights),
                weights=weights,
            )
        )
    return out
