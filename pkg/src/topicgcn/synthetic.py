"""Synthetic labeled corpora with controlled vocabulary structure.

Generators return ready-made :class:`~topicgcn.corpus.Corpus` objects
built from artificial tokens (lowercase letters ending in digits) that
pass the cleaning pipeline unchanged: they are not stopwords and the
stemmer leaves them alone.  ``write_jsonl`` round-trips a generated
corpus through the on-disk format for CLI runs.
"""

from __future__ import annotations

import json

import numpy as np

from .corpus import Corpus, Document, build_dictionary


def _vocab(prefix: str, size: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(size)]


def disjoint_corpus(
    n_docs: int = 200,
    vocab_size: int = 20,
    doc_len: int = 30,
    seed: int = 0,
) -> tuple[Corpus, list[str], list[str]]:
    """Two label-aligned disjoint vocabularies, classes interleaved.

    Even documents draw uniformly from the class-0 vocabulary, odd
    documents from the class-1 vocabulary.  Returns the corpus plus the
    two vocabularies.
    """
    rng = np.random.default_rng(seed)
    vocab0 = _vocab("worda", vocab_size)
    vocab1 = _vocab("wordb", vocab_size)
    documents = []
    for d in range(n_docs):
        label = d % 2
        vocab = vocab1 if label else vocab0
        tokens = [vocab[i] for i in rng.integers(0, vocab_size, size=doc_len)]
        documents.append(Document(f"d{d:04d}", tokens, label))
    return Corpus(documents, build_dictionary(documents)), vocab0, vocab1


def noisy_corpus(
    n_docs: int = 300,
    themes: int = 10,
    theme_vocab_size: int = 8,
    marker_vocab_size: int = 6,
    marker_prob: float = 0.12,
    glue_pool_size: int = 60,
    glue_per_group: int = 6,
    glue_prob: float = 0.25,
    noise_vocab_size: int = 20,
    noise_prob: float = 0.3,
    doc_len: int = 16,
    seed: int = 0,
) -> tuple[Corpus, list[str], list[str], list[str]]:
    """Label-correlated marker vocabularies diluted by theme and noise.

    Documents cycle through (class, theme) pairs.  Each theme owns a
    ``theme_vocab_size``-word vocabulary shared by both classes, and
    each (theme, class) group owns ``marker_vocab_size`` class-marker
    words plus ``glue_per_group`` "glue" words sampled from a pool that
    both classes share.  A token is noise with probability
    ``noise_prob``, else a marker with probability ``marker_prob``,
    else glue with probability ``glue_prob``, else a theme word.

    The construction separates similarity structure from class signal:
    glue and theme words make same-group documents look alike without
    telling the classifier anything, while the sparse theme-local
    markers carry all the label information, so evidence has to be
    pooled across near neighbours.  Same-theme opposite-class documents
    stay the classic confusable pairs.

    Returns the corpus plus the class-0 markers, class-1 markers, and
    the shared (theme + glue + noise) vocabulary.
    """
    rng = np.random.default_rng(seed)
    theme_vocabs = [
        _vocab(f"theme{t}x", theme_vocab_size) for t in range(themes)
    ]
    # Markers are theme-local: class evidence never repeats across themes.
    markers0 = [_vocab(f"worda{t}x", marker_vocab_size) for t in range(themes)]
    markers1 = [_vocab(f"wordb{t}x", marker_vocab_size) for t in range(themes)]
    glue_pool = _vocab("glue", glue_pool_size)
    glue_words = {
        (cls, theme): [
            glue_pool[i]
            for i in rng.integers(0, glue_pool_size, size=glue_per_group)
        ]
        for cls in (0, 1)
        for theme in range(themes)
    }
    noise = _vocab("noise", noise_vocab_size)
    marker_cut = noise_prob + (1.0 - noise_prob) * marker_prob
    glue_cut = marker_cut + (1.0 - noise_prob) * glue_prob
    documents = []
    for d in range(n_docs):
        label = d % 2
        theme = (d // 2) % themes
        markers = (markers1 if label else markers0)[theme]
        glue = glue_words[(label, theme)]
        tokens = []
        for _ in range(doc_len):
            roll = rng.random()
            if roll < noise_prob:
                tokens.append(noise[rng.integers(0, noise_vocab_size)])
            elif roll < marker_cut:
                tokens.append(markers[rng.integers(0, marker_vocab_size)])
            elif roll < glue_cut:
                tokens.append(glue[rng.integers(0, glue_per_group)])
            else:
                tokens.append(theme_vocabs[theme][rng.integers(0, theme_vocab_size)])
        documents.append(Document(f"d{d:04d}", tokens, label))
    shared = [w for vocab in theme_vocabs for w in vocab] + glue_pool + noise
    flat0 = [w for vocab in markers0 for w in vocab]
    flat1 = [w for vocab in markers1 for w in vocab]
    return Corpus(documents, build_dictionary(documents)), flat0, flat1, shared


def write_jsonl(path: str, corpus: Corpus) -> None:
    """Serialize a corpus as ingestible JSON Lines.

    Labels map to the raw strings ``"false"`` (class 0) and ``"true"``
    (class 1), matching the default label profile.
    """
    label_names = {0: "false", 1: "true"}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in corpus.documents:
            record = {
                "id": doc.id,
                "text": " ".join(doc.tokens),
                "label": label_names[doc.label],
            }
            fh.write(json.dumps(record, sort_keys=True) + "\n")
