"""Topic-graph construction tests: features, top-K edges, propagation."""

import numpy as np
import pytest
import scipy.sparse as sp

from topicgcn.corpus import Corpus, Dictionary, Document, build_dictionary
from topicgcn.graphs import (
    EdgeList,
    build_topic_features,
    build_topic_graph,
    build_topk_edges,
    normalize_adjacency,
)
from topicgcn.lda import LdaConfig, fit_lda
from topicgcn.synthetic import disjoint_corpus
from topicgcn.tfidf import cosine_similarity, fit_tfidf, transform
from topicgcn.topic_words import TopicDictionary, select_topic_words


def _corpus(token_lists):
    docs = [Document(str(i), list(t), 0) for i, t in enumerate(token_lists)]
    return Corpus(docs, build_dictionary(docs))


def _topic_dict(tokens, topic_id=0):
    vocab = Dictionary.from_tokens(tokens)
    return TopicDictionary(topic_id, vocab, {t: 1.0 for t in vocab.tokens})


def _oracle_topk(dense, k):
    """Quadratic reference: per-node sort of all similarities, then union."""
    n = dense.shape[0]
    sims = np.full((n, n), -1.0)
    for i in range(n):
        for j in range(n):
            if i != j:
                sims[i, j] = cosine_similarity(dense[i], dense[j])
    edges = set()
    for i in range(n):
        order = sorted((j for j in range(n) if j != i), key=lambda j: (-sims[i, j], j))
        for j in order[:k]:
            if sims[i, j] <= 0.0:
                break
            edges.add((min(i, j), max(i, j)))
    return edges


def _random_features(rng, n, d, zero_fraction=0.15):
    X = rng.random((n, d))
    X[rng.random(n) < zero_fraction] = 0.0
    return sp.csr_matrix(X)


class TestFeatures:
    def test_full_dictionary_equals_global_tfidf(self):
        corpus = _corpus([["a", "b", "c"], ["b", "c"], ["a", "a", "d"]])
        td = _topic_dict(corpus.dictionary.tokens)
        X = build_topic_features(corpus, td)
        expected = transform(fit_tfidf(corpus, corpus.dictionary), corpus)
        np.testing.assert_array_equal(X.toarray(), expected.toarray())

    def test_uncovered_document_gets_zero_row(self):
        corpus = _corpus([["a", "b"], ["q", "r", "s"]])
        X = build_topic_features(corpus, _topic_dict(["a", "b"]))
        assert X[1].nnz == 0

    def test_toy_corpus_matches_hand_computation(self):
        # 5 docs, dictionary restricted to {x, y, z}; idf over N=5:
        # df(x)=3, df(y)=2, df(z)=1.
        corpus = _corpus(
            [
                ["x", "y", "pad"],
                ["x", "x", "z"],
                ["y", "pad", "pad"],
                ["x", "other"],
                ["other", "pad"],
            ]
        )
        X = build_topic_features(corpus, _topic_dict(["x", "y", "z"])).toarray()
        idf_x = np.log(6.0 / 4.0) + 1.0
        idf_y = np.log(6.0 / 3.0) + 1.0
        idf_z = np.log(6.0 / 2.0) + 1.0
        raw1 = np.array([2 * idf_x, 0.0, idf_z])
        np.testing.assert_allclose(X[1], raw1 / np.linalg.norm(raw1), atol=1e-12)
        raw0 = np.array([idf_x, idf_y, 0.0])
        np.testing.assert_allclose(X[0], raw0 / np.linalg.norm(raw0), atol=1e-12)
        assert np.all(X[4] == 0.0)

    def test_empty_topic_dictionary_rejected(self):
        corpus = _corpus([["a", "b", "c"]])
        td = TopicDictionary(3, Dictionary.from_tokens([]), {})
        with pytest.raises(ValueError, match="3"):
            build_topic_features(corpus, td)


class TestTopkEdges:
    def test_complete_graph_when_k_exceeds_candidates(self):
        rng = np.random.default_rng(0)
        X = sp.csr_matrix(rng.random((4, 3)) + 0.1)
        edges = build_topk_edges(X, 3)
        assert len(edges) == 6

    def test_zero_row_selects_nothing(self):
        X = sp.csr_matrix(
            np.array([[1.0, 0.0], [0.9, 0.1], [0.0, 0.0], [0.5, 0.5]])
        )
        edges = build_topk_edges(X, 2)
        # Node 2 never appears: it picks nothing (zero cosine everywhere)
        # and nobody picks it.
        assert all(2 not in pair for pair in edges.pairs())

    def test_matches_oracle_n8_k2(self):
        rng = np.random.default_rng(1)
        X = _random_features(rng, 8, 4)
        edges = build_topk_edges(X, 2)
        assert set(edges.pairs()) == _oracle_topk(X.toarray(), 2)

    def test_matches_oracle_random_sweep(self):
        rng = np.random.default_rng(2)
        for trial in range(25):
            n = int(rng.integers(3, 30))
            d = int(rng.integers(2, 8))
            k = int(rng.choice([1, 2, 5]))
            X = _random_features(rng, n, d)
            edges = build_topk_edges(X, k)
            assert set(edges.pairs()) == _oracle_topk(X.toarray(), k), (trial, n, k)

    def test_similarity_values_stored(self):
        rng = np.random.default_rng(3)
        X = _random_features(rng, 6, 3, zero_fraction=0.0)
        dense = X.toarray()
        edges = build_topk_edges(X, 2)
        for (i, j), value in edges.similarity.items():
            assert value == pytest.approx(
                cosine_similarity(dense[i], dense[j]), abs=1e-9
            )
            assert value > 0.0
            assert i < j

    def test_deterministic(self):
        rng = np.random.default_rng(4)
        X = _random_features(rng, 20, 5)
        a = build_topk_edges(X, 3)
        b = build_topk_edges(X, 3)
        assert a.similarity == b.similarity

    def test_edge_count_and_mean_degree_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(4, 40))
            k = int(rng.choice([1, 2, 5]))
            X = _random_features(rng, n, int(rng.integers(2, 6)))
            edges = build_topk_edges(X, k)
            assert len(edges) <= n * k
            assert edges.degrees(n).mean() <= 2 * k

    def test_hub_degree_can_exceed_twice_k(self):
        """Union symmetrization bounds the mean degree, not each node.

        Every spoke's best neighbour is the hub, so the hub's degree
        grows with n while K stays 1.
        """
        hub = np.array([[1.0, 1.0, 1.0, 1.0]])
        spokes = np.eye(4) + 0.01
        X = sp.csr_matrix(np.vstack([hub, spokes]))
        edges = build_topk_edges(X, 1)
        degrees = edges.degrees(5)
        assert degrees[0] > 2
        assert degrees.mean() <= 2.0

    def test_tie_prefers_lower_index(self):
        # Nodes 1 and 2 are identical, both perfectly similar to node 0;
        # K = 1 forces node 0 to choose, and it must choose node 1.
        X = sp.csr_matrix(
            np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 1.0], [5.0, 0.0]])
        )
        edges = build_topk_edges(X, 1)
        assert (0, 1) in edges.similarity

    def test_bad_k_rejected(self):
        X = sp.csr_matrix(np.eye(3))
        with pytest.raises(ValueError):
            build_topk_edges(X, 0)

    def test_block_boundary_consistency(self):
        # More rows than one similarity block; spot-check against the oracle.
        rng = np.random.default_rng(6)
        X = _random_features(rng, 300, 5, zero_fraction=0.05)
        edges = build_topk_edges(X, 1)
        assert set(edges.pairs()) == _oracle_topk(X.toarray(), 1)


class TestNormalizeAdjacency:
    def test_no_edges_gives_identity(self):
        P = normalize_adjacency(EdgeList({}), 3)
        np.testing.assert_array_equal(P.toarray(), np.eye(3))

    def test_single_edge_two_nodes(self):
        P = normalize_adjacency(EdgeList({(0, 1): 0.8}), 2)
        np.testing.assert_allclose(P.toarray(), [[0.5, 0.5], [0.5, 0.5]], atol=1e-12)

    def test_symmetric_and_degree_structure(self):
        rng = np.random.default_rng(7)
        n = 12
        pairs = set()
        while len(pairs) < 15:
            i, j = sorted(rng.integers(0, n, size=2))
            if i != j:
                pairs.add((int(i), int(j)))
        edges = EdgeList({p: 0.5 for p in pairs})
        P = normalize_adjacency(edges, n).toarray()
        np.testing.assert_allclose(P, P.T, atol=1e-12)
        assert np.all(np.diag(P) > 0.0)
        assert np.all(P >= 0.0) and np.all(P <= 1.0)
        # Undo the normalization: the unnormalized matrix counts degrees.
        deg = edges.degrees(n) + 1
        A_tilde = P * np.sqrt(np.outer(deg, deg))
        np.testing.assert_allclose(A_tilde.sum(axis=1), deg, atol=1e-9)

    def test_spectral_radius_at_most_one(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            n = int(rng.integers(3, 25))
            X = _random_features(rng, n, 4)
            edges = build_topk_edges(X, 2)
            P = normalize_adjacency(edges, n).toarray()
            # Power iteration on the symmetric matrix.
            v = rng.standard_normal(n)
            v /= np.linalg.norm(v)
            for _ in range(200):
                w = P @ v
                norm = np.linalg.norm(w)
                if norm == 0.0:
                    break
                v = w / norm
            radius = float(np.abs(v @ P @ v))
            assert radius <= 1.0 + 1e-6

    def test_out_of_range_edge_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            normalize_adjacency(EdgeList({(0, 5): 1.0}), 3)


class TestBuildTopicGraph:
    def test_composition_matches_steps(self):
        corpus = _corpus(
            [["a", "b", "c"], ["a", "b"], ["c", "d"], ["d", "d", "a"], ["b", "c", "d"]]
        )
        td = _topic_dict(["a", "b", "c", "d"], topic_id=2)
        graph = build_topic_graph(corpus, td, 2)
        features = build_topic_features(corpus, td)
        edges = build_topk_edges(features, 2)
        np.testing.assert_array_equal(graph.features.toarray(), features.toarray())
        assert graph.edges.similarity == edges.similarity
        np.testing.assert_array_equal(
            graph.propagation.toarray(),
            normalize_adjacency(edges, len(corpus.documents)).toarray(),
        )
        assert graph.topic_id == 2

    def test_all_graphs_share_node_count(self):
        corpus, _, _ = disjoint_corpus(n_docs=40, vocab_size=8, doc_len=10, seed=1)
        model = fit_lda(
            corpus, LdaConfig(num_topics=2, iterations=80, burn_in=40, seed=0)
        )
        graphs = [
            build_topic_graph(corpus, td, 3)
            for td in select_topic_words(model, 0.5)
        ]
        sizes = {g.features.shape[0] for g in graphs}
        assert sizes == {len(corpus.documents)}

    def test_distinct_dictionaries_distinct_edges(self):
        corpus, _, _ = disjoint_corpus(n_docs=40, vocab_size=8, doc_len=10, seed=1)
        model = fit_lda(
            corpus, LdaConfig(num_topics=2, iterations=80, burn_in=40, seed=0)
        )
        g0, g1 = [
            build_topic_graph(corpus, td, 3)
            for td in select_topic_words(model, 0.5)
        ]
        assert g0.edges.similarity != g1.edges.similarity
