"""Latent Dirichlet Allocation via collapsed Gibbs sampling.

The sampler integrates out the topic and document mixtures and resamples
one token-topic assignment at a time.  With the current token's
assignment excluded from all counts, topic ``k`` for word ``w`` in
document ``d`` is drawn with probability proportional to

    (n_dk + alpha) * (n_kw + beta) / (n_k. + |W| * beta)

where ``n_dk`` counts tokens of ``d`` assigned to ``k``, ``n_kw`` counts
assignments of word ``w`` to ``k``, and ``n_k.`` totals topic ``k`` over
the vocabulary.  After burn-in, per-sweep counts are accumulated and the
returned topic-word and document-topic distributions are smoothed
posterior means over those samples.

The sweep visits tokens in document order, token order.  Randomness
comes from a SplitMix64 generator seeded from the config, driven inside
a compiled kernel, so repeated fits with equal inputs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .corpus import Corpus, Dictionary
from .errors import InputError

_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MIX2 = np.uint64(0x94D049BB133111EB)
_SHIFT_30 = np.uint64(30)
_SHIFT_27 = np.uint64(27)
_SHIFT_31 = np.uint64(31)
_SHIFT_11 = np.uint64(11)
_INV_2_53 = 1.0 / 9007199254740992.0


@dataclass(frozen=True)
class LdaConfig:
    """Sampler settings.  ``alpha=None`` resolves to ``50 / num_topics``."""

    num_topics: int
    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.num_topics < 1:
            raise ValueError(f"num_topics must be >= 1, got {self.num_topics}")
        if self.alpha is not None and self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.beta <= 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError(
                f"burn_in must lie in [0, iterations), got {self.burn_in}"
            )

    @property
    def resolved_alpha(self) -> float:
        return 50.0 / self.num_topics if self.alpha is None else self.alpha


@dataclass
class TopicModel:
    """Posterior-mean LDA distributions.

    ``topic_word`` has shape (num_topics, |dictionary|); ``doc_topic``
    has shape (num_documents, num_topics).  Every row of both is a
    strictly positive probability vector.
    """

    topic_word: np.ndarray
    doc_topic: np.ndarray
    config: LdaConfig
    dictionary: Dictionary


@njit(cache=True)
def _splitmix64_uniform(state):
    # SplitMix64: add the golden-ratio increment, then mix.  The top 53
    # output bits become a float in [0, 1).
    state = state + _SM64_GAMMA
    z = state
    z = (z ^ (z >> _SHIFT_30)) * _SM64_MIX1
    z = (z ^ (z >> _SHIFT_27)) * _SM64_MIX2
    z = z ^ (z >> _SHIFT_31)
    return (z >> _SHIFT_11) * _INV_2_53, state


@njit(cache=True)
def _run_gibbs(doc_ids, word_ids, n_docs, vocab_size, n_topics, alpha, beta,
               iterations, burn_in, seed):
    n_tokens = doc_ids.shape[0]
    assignments = np.empty(n_tokens, dtype=np.int64)
    n_dk = np.zeros((n_docs, n_topics), dtype=np.int64)
    n_kw = np.zeros((n_topics, vocab_size), dtype=np.int64)
    n_k = np.zeros(n_topics, dtype=np.int64)
    acc_dk = np.zeros((n_docs, n_topics), dtype=np.float64)
    acc_kw = np.zeros((n_topics, vocab_size), dtype=np.float64)

    state = seed
    # Uniform random initial assignment.
    for t in range(n_tokens):
        u, state = _splitmix64_uniform(state)
        k = int(u * n_topics)
        if k >= n_topics:
            k = n_topics - 1
        assignments[t] = k
        n_dk[doc_ids[t], k] += 1
        n_kw[k, word_ids[t]] += 1
        n_k[k] += 1

    cumulative = np.empty(n_topics, dtype=np.float64)
    wbeta = vocab_size * beta
    for sweep in range(iterations):
        for t in range(n_tokens):
            d = doc_ids[t]
            w = word_ids[t]
            k_old = assignments[t]
            # Remove the token's own assignment from all counts.
            n_dk[d, k_old] -= 1
            n_kw[k_old, w] -= 1
            n_k[k_old] -= 1
            total = 0.0
            for k in range(n_topics):
                weight = (n_dk[d, k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + wbeta)
                total += weight
                cumulative[k] = total
            u, state = _splitmix64_uniform(state)
            target = u * total
            k_new = 0
            while k_new < n_topics - 1 and cumulative[k_new] <= target:
                k_new += 1
            assignments[t] = k_new
            n_dk[d, k_new] += 1
            n_kw[k_new, w] += 1
            n_k[k_new] += 1
        if sweep >= burn_in:
            acc_dk += n_dk
            acc_kw += n_kw
    return assignments, acc_dk, acc_kw


def gibbs_conditional(doc_counts: np.ndarray, word_counts: np.ndarray,
                      topic_totals: np.ndarray, alpha: float, beta: float,
                      vocab_size: int) -> np.ndarray:
    """Normalized single-token conditional, own count already excluded.

    Pure-numpy reference for the kernel's unnormalized weights; used by
    tests and diagnostics.
    """
    weights = (doc_counts + alpha) * (word_counts + beta) / (
        topic_totals + vocab_size * beta
    )
    return weights / weights.sum()


def fit_lda(
    corpus: Corpus, config: LdaConfig, dictionary: Dictionary | None = None
) -> TopicModel:
    """Fit LDA on ``corpus`` over its dictionary (or an override).

    Tokens outside the dictionary are ignored; every document must keep
    at least one token, otherwise :class:`InputError` lists the
    offending document ids.  Fitting is deterministic per config seed.
    """
    if not corpus.documents:
        raise InputError("cannot fit LDA on an empty corpus")
    if dictionary is None:
        dictionary = corpus.dictionary
    if len(dictionary) == 0:
        raise InputError("cannot fit LDA on an empty dictionary")

    doc_ids: list[int] = []
    word_ids: list[int] = []
    empty_docs: list[str] = []
    for d, doc in enumerate(corpus.documents):
        kept = 0
        for token in doc.tokens:
            idx = dictionary.index.get(token)
            if idx is not None:
                doc_ids.append(d)
                word_ids.append(idx)
                kept += 1
        if kept == 0:
            empty_docs.append(doc.id)
    if empty_docs:
        raise InputError(
            "documents with no dictionary token: " + ", ".join(empty_docs)
        )

    alpha = config.resolved_alpha
    _, acc_dk, acc_kw = _run_gibbs(
        np.array(doc_ids, dtype=np.int64),
        np.array(word_ids, dtype=np.int64),
        len(corpus.documents),
        len(dictionary),
        config.num_topics,
        float(alpha),
        float(config.beta),
        config.iterations,
        config.burn_in,
        np.uint64(config.seed),
    )
    n_samples = config.iterations - config.burn_in
    mean_dk = acc_dk / n_samples
    mean_kw = acc_kw / n_samples

    topic_word = (mean_kw + config.beta) / (
        mean_kw.sum(axis=1, keepdims=True) + len(dictionary) * config.beta
    )
    doc_topic = (mean_dk + alpha) / (
        mean_dk.sum(axis=1, keepdims=True) + config.num_topics * alpha
    )
    return TopicModel(topic_word, doc_topic, config, dictionary)


def topic_word_weights(model: TopicModel) -> np.ndarray:
    """Topic-word matrix, rows indexed by topic in dictionary order.

    Each row sums to one; ``model.topic_word[k]`` is the same view for a
    single topic ``k``.
    """
    return model.topic_word
