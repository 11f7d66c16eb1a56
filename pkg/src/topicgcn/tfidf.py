"""TF-IDF document vectors over a fixed dictionary.

Weights use the smoothed inverse document frequency

    idf[w] = ln((1 + N) / (1 + df(w))) + 1

where ``N`` counts the fitting documents and ``df(w)`` counts those
containing ``w``.  Transformed rows are raw term counts scaled by idf
and then L2-normalized; documents sharing no token with the dictionary
stay all-zero.  Matrices are ``scipy.sparse.csr_matrix`` with float64
data, one row per document in corpus order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Corpus, Dictionary


@dataclass
class TfidfModel:
    """Fitted idf weights for one dictionary."""

    dictionary: Dictionary
    idf: np.ndarray
    doc_count: int


def fit_tfidf(corpus: Corpus, dictionary: Dictionary) -> TfidfModel:
    """Compute idf weights for ``dictionary`` from ``corpus``.

    Tokens outside the dictionary are ignored.  The dictionary must be
    nonempty.
    """
    if len(dictionary) == 0:
        raise ValueError("cannot fit tf-idf on an empty dictionary")
    df = np.zeros(len(dictionary), dtype=np.int64)
    for doc in corpus.documents:
        for token in set(doc.tokens):
            idx = dictionary.index.get(token)
            if idx is not None:
                df[idx] += 1
    n_docs = len(corpus.documents)
    idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
    return TfidfModel(dictionary, idf, n_docs)


def transform(model: TfidfModel, corpus: Corpus) -> sp.csr_matrix:
    """Embed every document of ``corpus`` as an L2-normalized tf-idf row.

    Returns a CSR matrix of shape ``(len(corpus), len(model.dictionary))``
    with sorted column indices.  Rows with no in-dictionary token are
    all-zero.
    """
    index = model.dictionary.index
    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    for doc in corpus.documents:
        counts: dict[int, int] = {}
        for token in doc.tokens:
            idx = index.get(token)
            if idx is not None:
                counts[idx] = counts.get(idx, 0) + 1
        cols = sorted(counts)
        row = np.array([counts[c] * model.idf[c] for c in cols], dtype=np.float64)
        norm = np.sqrt(np.sum(row * row))
        if norm > 0.0:
            row /= norm
        data.extend(row.tolist())
        indices.extend(cols)
        indptr.append(len(indices))
    matrix = sp.csr_matrix(
        (
            np.array(data, dtype=np.float64),
            np.array(indices, dtype=np.int64),
            np.array(indptr, dtype=np.int64),
        ),
        shape=(len(corpus.documents), len(model.dictionary)),
    )
    return matrix


def _as_dense_vector(v) -> np.ndarray:
    if sp.issparse(v):
        return np.asarray(v.todense(), dtype=np.float64).ravel()
    return np.asarray(v, dtype=np.float64).ravel()


def cosine_similarity(u, v) -> float:
    """Cosine of the angle between two vectors; 0.0 if either is all-zero.

    Accepts 1-D numpy arrays or single-row sparse matrices.
    """
    du = _as_dense_vector(u)
    dv = _as_dense_vector(v)
    if du.shape != dv.shape:
        raise ValueError(f"dimension mismatch: {du.shape} vs {dv.shape}")
    nu = np.sqrt(np.dot(du, du))
    nv = np.sqrt(np.dot(dv, dv))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(du, dv) / (nu * nv))
