"""Corpus ingestion and text preprocessing.

Inputs
------
Labeled short-text posts from JSON Lines (one object per line with
``id``, ``text``, ``label`` string fields) or tab-separated files
(``id <TAB> label <TAB> text``, no header).

Outputs
-------
A :class:`Corpus`: cleaned, tokenized documents with binary labels and a
sorted token dictionary.

The cleaning pipeline applies, in this exact order: lowercase; remove
URLs (any token starting ``http`` or ``www.``); strip non-alphanumeric
characters (tokens split on them); whitespace tokenization; stopword
removal; suffix stemming (optional); dropping posts whose label maps to
:data:`DROP`; dropping documents with fewer than 3 remaining tokens.
Duplicate texts are kept: each post is an independent document.

Usage::

    posts = load_posts("train.jsonl", "jsonl")
    corpus = preprocess(posts, LABEL_PROFILES["twitter"], builtin_stopwords())
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError
from .stemmer import stem

# Sentinel label-map value: posts with this mapping are discarded.
DROP = "drop"

# Raw-label conventions for the two dataset families we ingest.
LABEL_PROFILES: dict[str, dict[str, int | str]] = {
    "twitter": {"false": 0, "true": 1, "unverified": DROP, "non-rumor": DROP},
    "pheme": {
        "rumour-false": 0,
        "rumour-true": 1,
        "rumour-unverified": DROP,
        "non-rumour": DROP,
    },
}

_URL_RE = re.compile(r"(?:http|www\.)\S*")
_NON_ALNUM_RE = re.compile(r"[^0-9a-z]+")

_MIN_TOKENS = 3


@dataclass(frozen=True)
class RawPost:
    """One ingested record before any cleaning."""

    id: str
    text: str
    label_raw: str


@dataclass
class Document:
    """A cleaned post: token sequence plus binary label."""

    id: str
    tokens: list[str]
    label: int


@dataclass(frozen=True)
class Dictionary:
    """Immutable sorted token vocabulary with token -> index lookup."""

    tokens: tuple[str, ...]
    index: dict[str, int] = field(compare=False)

    @staticmethod
    def from_tokens(tokens: Iterable[str]) -> "Dictionary":
        ordered = tuple(sorted(set(tokens)))
        return Dictionary(ordered, {t: i for i, t in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index


@dataclass
class Corpus:
    """Documents in stable ingestion order plus their dictionary."""

    documents: list[Document]
    dictionary: Dictionary

    def __len__(self) -> int:
        return len(self.documents)

    def labels(self) -> np.ndarray:
        return np.array([d.label for d in self.documents], dtype=np.int64)


def load_posts(path: str, fmt: str = "jsonl") -> list[RawPost]:
    """Read raw posts from ``path``.

    ``fmt`` selects the parser: ``"jsonl"`` or ``"tsv"``.  Malformed
    lines raise :class:`InputError` naming the 1-based line number;
    duplicate post ids raise :class:`InputError` naming the id.
    """
    if fmt == "jsonl":
        posts = _load_jsonl(path)
    elif fmt == "tsv":
        posts = _load_tsv(path)
    else:
        raise InputError(f"unknown input format: {fmt!r}")
    seen: set[str] = set()
    for post in posts:
        if post.id in seen:
            raise InputError(f"duplicate post id: {post.id!r}")
        seen.add(post.id)
    return posts


def _load_jsonl(path: str) -> list[RawPost]:
    posts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise InputError(f"line {lineno}: expected a JSON object")
            for key in ("id", "text", "label"):
                if key not in record:
                    raise InputError(f"line {lineno}: missing field {key!r}")
                if not isinstance(record[key], str):
                    raise InputError(f"line {lineno}: field {key!r} must be a string")
            posts.append(RawPost(record["id"], record["text"], record["label"]))
    return posts


def _load_tsv(path: str) -> list[RawPost]:
    posts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip():
                continue
            parts = stripped.split("\t", 2)
            if len(parts) != 3:
                raise InputError(
                    f"line {lineno}: expected 3 tab-separated columns, got {len(parts)}"
                )
            post_id, label_raw, text = parts
            posts.append(RawPost(post_id, text, label_raw))
    return posts


def load_stopwords(path: str) -> frozenset[str]:
    """Read one stopword per line; blank lines ignored."""
    with open(path, "r", encoding="utf-8") as fh:
        return frozenset(w.strip() for w in fh if w.strip())


def builtin_stopwords() -> frozenset[str]:
    """The English stopword list shipped with the package."""
    text = (
        resources.files("topicgcn").joinpath("data/stopwords_en.txt").read_text("utf-8")
    )
    return frozenset(w for w in text.split("\n") if w.strip())


def tokenize_text(
    text: str, stopwords: frozenset[str], normalizer: str = "stem"
) -> list[str]:
    """Apply the token-level cleaning steps to one text.

    ``normalizer`` is ``"stem"`` for suffix stemming or ``"none"`` to
    skip it.  Returns the cleaned token sequence in original order.
    """
    if normalizer not in ("stem", "none"):
        raise InputError(f"unknown normalizer: {normalizer!r}")
    lowered = text.lower()
    no_urls = _URL_RE.sub(" ", lowered)
    # Non-alphanumeric characters act as token boundaries.
    split_alnum = _NON_ALNUM_RE.sub(" ", no_urls)
    tokens = [t for t in split_alnum.split() if t not in stopwords]
    if normalizer == "stem":
        tokens = [stem(t) for t in tokens]
    return tokens


def preprocess(
    posts: Sequence[RawPost],
    label_map: Mapping[str, int | str],
    stopwords: frozenset[str],
    normalizer: str = "stem",
) -> Corpus:
    """Run the full cleaning pipeline and assemble a :class:`Corpus`.

    Every raw label appearing in ``posts`` must be covered by
    ``label_map`` (values: class index or :data:`DROP`); an unmapped
    label raises :class:`InputError` naming it.  Posts mapping to
    :data:`DROP` and documents left with fewer than 3 tokens are
    discarded.  An empty surviving corpus raises :class:`InputError`.
    """
    for post in posts:
        if post.label_raw not in label_map:
            raise InputError(f"unmapped raw label: {post.label_raw!r}")
    documents = []
    for post in posts:
        mapped = label_map[post.label_raw]
        if mapped == DROP:
            continue
        tokens = tokenize_text(post.text, stopwords, normalizer)
        if len(tokens) < _MIN_TOKENS:
            continue
        documents.append(Document(post.id, tokens, int(mapped)))
    if not documents:
        raise InputError("corpus is empty after preprocessing")
    return Corpus(documents, build_dictionary(documents))


def build_dictionary(documents: Sequence[Document]) -> Dictionary:
    """Sorted vocabulary over every token occurring in ``documents``."""
    if not documents:
        raise InputError("cannot build a dictionary from zero documents")
    seen: set[str] = set()
    for doc in documents:
        seen.update(doc.tokens)
    return Dictionary.from_tokens(seen)
