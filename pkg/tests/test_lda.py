"""Topic model tests: conditionals, degeneracies, determinism, recovery.

Long-horizon sampling behaviour is covered by the acceptance suite; the
fits here shorten the chain to keep the unit run fast.
"""

import numpy as np
import pytest

from topicgcn.corpus import Corpus, Dictionary, Document, build_dictionary
from topicgcn.errors import InputError
from topicgcn.lda import LdaConfig, fit_lda, gibbs_conditional, topic_word_weights
from topicgcn.synthetic import disjoint_corpus

FAST = LdaConfig(num_topics=2, iterations=60, burn_in=30, seed=0)


def _corpus(token_lists):
    docs = [Document(str(i), list(t), 0) for i, t in enumerate(token_lists)]
    return Corpus(docs, build_dictionary(docs))


class TestConfig:
    def test_defaults(self):
        cfg = LdaConfig(num_topics=8)
        assert cfg.beta == 0.01
        assert cfg.iterations == 1000
        assert cfg.burn_in == 500
        assert cfg.alpha is None
        assert cfg.resolved_alpha == pytest.approx(50.0 / 8)

    def test_explicit_alpha_wins(self):
        assert LdaConfig(num_topics=4, alpha=0.3).resolved_alpha == 0.3

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"num_topics": 0},
            {"num_topics": 2, "alpha": 0.0},
            {"num_topics": 2, "alpha": -1.0},
            {"num_topics": 2, "beta": 0.0},
            {"num_topics": 2, "iterations": 0},
            {"num_topics": 2, "iterations": 10, "burn_in": 10},
            {"num_topics": 2, "burn_in": -1},
        ],
    )
    def test_bad_config_rejected(self, kwargs):
        with pytest.raises(ValueError):
            LdaConfig(**kwargs)


class TestConditional:
    def test_normalizes_on_random_states(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            k = int(rng.integers(1, 12))
            vocab = int(rng.integers(2, 50))
            p = gibbs_conditional(
                rng.integers(0, 40, size=k).astype(np.float64),
                rng.integers(0, 40, size=k).astype(np.float64),
                rng.integers(0, 200, size=k).astype(np.float64),
                float(rng.uniform(0.01, 5.0)),
                float(rng.uniform(0.001, 1.0)),
                vocab,
            )
            assert p.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.all(p > 0)

    def test_matches_hand_weights(self):
        # Two topics: weights (1+0.5)(2+0.1)/(4+0.2) and (3+0.5)(0+0.1)/(2+0.2).
        p = gibbs_conditional(
            np.array([1.0, 3.0]),
            np.array([2.0, 0.0]),
            np.array([4.0, 2.0]),
            0.5,
            0.1,
            2,
        )
        w0 = 1.5 * 2.1 / 4.2
        w1 = 3.5 * 0.1 / 2.2
        np.testing.assert_allclose(p, [w0 / (w0 + w1), w1 / (w0 + w1)], atol=1e-12)


class TestSingleTopicDegeneracy:
    def test_topic_word_equals_smoothed_unigram(self):
        token_lists = [["a", "b", "a"], ["c", "a"], ["b", "c", "c", "c"]]
        corpus = _corpus(token_lists)
        cfg = LdaConfig(num_topics=1, iterations=20, burn_in=5, seed=9)
        model = fit_lda(corpus, cfg)

        # With one topic every token is always assigned to it, so the
        # estimate must equal the smoothed corpus counts exactly.
        counts = np.zeros(len(corpus.dictionary))
        for tokens in token_lists:
            for t in tokens:
                counts[corpus.dictionary.index[t]] += 1
        expected = (counts + cfg.beta) / (counts.sum() + len(corpus.dictionary) * cfg.beta)
        np.testing.assert_allclose(model.topic_word[0], expected, atol=1e-9)

    def test_doc_topic_rows_are_one(self):
        corpus = _corpus([["a", "b"], ["b", "b", "a"]])
        model = fit_lda(corpus, LdaConfig(num_topics=1, iterations=10, burn_in=2))
        np.testing.assert_allclose(model.doc_topic, 1.0, atol=1e-12)


class TestFit:
    def test_shapes_and_distribution_rows(self):
        corpus, _, _ = disjoint_corpus(n_docs=30, vocab_size=6, doc_len=8, seed=2)
        model = fit_lda(corpus, FAST)
        assert model.topic_word.shape == (2, len(corpus.dictionary))
        assert model.doc_topic.shape == (len(corpus.documents), 2)
        np.testing.assert_allclose(model.topic_word.sum(axis=1), 1.0, atol=1e-9)
        np.testing.assert_allclose(model.doc_topic.sum(axis=1), 1.0, atol=1e-9)
        assert np.all(model.topic_word > 0)
        assert np.all(model.doc_topic > 0)

    def test_weights_accessor(self):
        corpus = _corpus([["a", "b", "c"], ["c", "d", "a"]])
        model = fit_lda(corpus, FAST)
        T = topic_word_weights(model)
        assert T.shape == (2, 4)
        assert T is model.topic_word
        np.testing.assert_allclose(T.sum(axis=1), 1.0, atol=1e-9)

    def test_deterministic_per_seed(self):
        corpus, _, _ = disjoint_corpus(n_docs=24, vocab_size=5, doc_len=10, seed=0)
        a = fit_lda(corpus, FAST)
        b = fit_lda(corpus, FAST)
        assert np.array_equal(a.topic_word, b.topic_word)
        assert np.array_equal(a.doc_topic, b.doc_topic)

    def test_seed_changes_output(self):
        corpus, _, _ = disjoint_corpus(n_docs=24, vocab_size=5, doc_len=10, seed=0)
        a = fit_lda(corpus, FAST)
        b = fit_lda(corpus, LdaConfig(num_topics=2, iterations=60, burn_in=30, seed=1))
        assert not np.array_equal(a.topic_word, b.topic_word)

    def test_empty_corpus_rejected(self):
        with pytest.raises(InputError):
            fit_lda(Corpus([], Dictionary.from_tokens(["a"])), FAST)

    def test_out_of_dictionary_document_named(self):
        corpus = _corpus([["a", "b", "a"], ["c", "c", "c"]])
        vocab = Dictionary.from_tokens(["a", "b"])
        with pytest.raises(InputError, match="1"):
            fit_lda(corpus, FAST, vocab)

    def test_dictionary_override_restricts_vocabulary(self):
        corpus = _corpus([["a", "b", "zzz"], ["b", "a", "a"]])
        vocab = Dictionary.from_tokens(["a", "b"])
        model = fit_lda(corpus, FAST, vocab)
        assert model.topic_word.shape[1] == 2
        assert model.dictionary is vocab


class TestRecovery:
    def test_disjoint_vocabularies_separate(self):
        """A short chain already separates two disjoint token sources.

        Topic identity is arbitrary, so the assertion is up to topic
        permutation: each topic's top words drawn from one source, both
        sources covered.
        """
        corpus, vocab0, vocab1 = disjoint_corpus(
            n_docs=80, vocab_size=10, doc_len=15, seed=0
        )
        model = fit_lda(
            corpus, LdaConfig(num_topics=2, iterations=150, burn_in=75, seed=3)
        )
        sources = []
        for k in range(2):
            top = np.argsort(-model.topic_word[k], kind="stable")[:5]
            words = {model.dictionary.tokens[i] for i in top}
            if words <= set(vocab0):
                sources.append(0)
            elif words <= set(vocab1):
                sources.append(1)
            else:
                sources.append(None)
        assert sorted(sources, key=str) == [0, 1]
