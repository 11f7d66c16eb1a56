"""Per-topic document graphs.

For one topic dictionary the whole corpus is re-embedded with tf-idf
restricted to that dictionary, then every document is linked to its K
most cosine-similar peers (positive similarity only, ties broken toward
the lower document index).  The union of those directed picks gives an
undirected edge set.  The returned propagation matrix is the
symmetrically normalized adjacency with self-loops,

    P = D^{-1/2} (A + I) D^{-1/2}

with D the degree matrix of A + I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Corpus
from .tfidf import fit_tfidf, transform
from .topic_words import TopicDictionary

# Row blocks of this many documents keep the dense similarity slab small.
_SIMILARITY_BLOCK = 256


@dataclass
class EdgeList:
    """Undirected edges keyed by (i, j) with i < j, valued by similarity."""

    similarity: dict[tuple[int, int], float]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.similarity)

    def __len__(self) -> int:
        return len(self.similarity)

    def degrees(self, n_nodes: int) -> np.ndarray:
        """Per-node degree without self-loops."""
        deg = np.zeros(n_nodes, dtype=np.int64)
        for i, j in self.similarity:
            deg[i] += 1
            deg[j] += 1
        return deg


@dataclass
class TopicGraph:
    """One topic's embedded corpus, edges, and propagation matrix."""

    topic_id: int
    features: sp.csr_matrix
    edges: EdgeList
    propagation: sp.csr_matrix


def build_topic_features(corpus: Corpus, topic_dict: TopicDictionary) -> sp.csr_matrix:
    """Tf-idf rows for every document over one topic's dictionary.

    All documents are embedded, even those sharing no word with the
    topic dictionary (their rows are zero and they end up isolated).
    """
    if len(topic_dict.dictionary) == 0:
        raise ValueError(f"topic {topic_dict.topic_id} has an empty dictionary")
    model = fit_tfidf(corpus, topic_dict.dictionary)
    return transform(model, corpus)


def _normalized_rows(features: sp.csr_matrix) -> sp.csr_matrix:
    norms = np.sqrt(np.asarray(features.multiply(features).sum(axis=1)).ravel())
    scale = np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0.0)
    return sp.diags(scale).tocsr() @ features.tocsr()


def build_topk_edges(features: sp.csr_matrix, k: int) -> EdgeList:
    """Union of every node's K strongest positive cosine neighbours.

    Each node contributes at most ``k`` directed picks; equal
    similarities prefer the lower neighbour index.  Pairs picked from
    both ends collapse into one undirected edge, so mean degree is at
    most ``2k`` while individual nodes may exceed it through incoming
    picks.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = features.shape[0]
    normalized = _normalized_rows(sp.csr_matrix(features, dtype=np.float64))
    similarity: dict[tuple[int, int], float] = {}
    for start in range(0, n, _SIMILARITY_BLOCK):
        stop = min(start + _SIMILARITY_BLOCK, n)
        block = np.asarray((normalized[start:stop] @ normalized.T).todense())
        for i in range(start, stop):
            sims = block[i - start]
            sims[i] = -1.0  # never link a node to itself
            # Stable sort on descending similarity; stability gives the
            # lower-index preference on ties.
            order = np.argsort(-sims, kind="stable")
            picked = 0
            for j_raw in order:
                j = int(j_raw)
                if picked >= k or sims[j] <= 0.0:
                    break
                key = (i, j) if i < j else (j, i)
                similarity.setdefault(key, float(sims[j]))
                picked += 1
    return EdgeList(similarity)


def normalize_adjacency(edges: EdgeList, n_nodes: int) -> sp.csr_matrix:
    """Symmetrically normalized adjacency with self-loops, CSR float64."""
    rows = list(range(n_nodes))
    cols = list(range(n_nodes))
    for i, j in edges.similarity:
        if not (0 <= i < n_nodes and 0 <= j < n_nodes):
            raise ValueError(f"edge ({i}, {j}) outside node range 0..{n_nodes - 1}")
        rows.extend((i, j))
        cols.extend((j, i))
    data = np.ones(len(rows), dtype=np.float64)
    a_tilde = sp.csr_matrix(
        (data, (np.array(rows), np.array(cols))), shape=(n_nodes, n_nodes)
    )
    degree = np.asarray(a_tilde.sum(axis=1)).ravel()
    inv_sqrt = 1.0 / np.sqrt(degree)  # degree >= 1 thanks to the self-loop
    scaling = sp.diags(inv_sqrt)
    return (scaling @ a_tilde @ scaling).tocsr()


def build_topic_graph(corpus: Corpus, topic_dict: TopicDictionary, k: int) -> TopicGraph:
    """Embed, link, and normalize one topic's document graph."""
    features = build_topic_features(corpus, topic_dict)
    edges = build_topk_edges(features, k)
    propagation = normalize_adjacency(edges, features.shape[0])
    return TopicGraph(topic_dict.topic_id, features, edges, propagation)
