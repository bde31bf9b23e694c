"""Tokenization and bag-of-words corpora."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable

from docmine.taxonomy import Source

_URL = re.compile(r"(?:[a-z][a-z0-9+.-]*://|www\.)\S+", re.IGNORECASE)
_ALNUM_RUN = re.compile(r"[^\W_]+")
_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")

_SUFFIXES = (("sses", "ss"), ("ies", "y"), ("ing", ""), ("ed", ""), ("es", ""), ("s", ""))


class EmptyCorpusError(ValueError):
    pass


def load_stopwords(path: str | os.PathLike | None = None) -> frozenset[str]:
    """One token per line, UTF-8. ``None`` loads the bundled English list."""
    if path is None:
        return _default_stopwords()
    with open(path, encoding="utf-8") as fh:
        return frozenset(line.strip().lower() for line in fh if line.strip())


@lru_cache(maxsize=1)
def _default_stopwords() -> frozenset[str]:
    text = resources.files("docmine.data").joinpath("stopwords.txt").read_text(encoding="utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def suffix_stem(token: str) -> str:
    if token.endswith("ss"):
        return token
    for suffix, replacement in _SUFFIXES:
        if token.endswith(suffix) and len(token) - len(suffix) >= 3:
            return token[: -len(suffix)] + replacement
    return token


def tokenize(text: str, stopwords: frozenset[str] | None = None, *, stem: bool = False) -> list[str]:
    """Lowercase word tokens with URLs, numbers, stopwords and 1-char tokens removed.

    Identifiers are split at underscores and camelCase boundaries, so
    ``FileReader`` gives ``file``, ``reader``.
    """
    if stopwords is None:
        stopwords = _default_stopwords()
    tokens = []
    for run in _ALNUM_RUN.findall(_URL.sub(" ", text)):
        for part in _CAMEL_BOUNDARY.split(run):
            token = part.lower()
            if stem:
                token = suffix_stem(token)
            if len(token) < 2 or token.isnumeric() or token in stopwords:
                continue
            tokens.append(token)
    return tokens


@dataclass(frozen=True)
class TokenizedDocument:
    source: Source
    repo_id: str
    tokens: tuple[str, ...]


@dataclass
class Corpus:
    """Sparse counts per document over a first-seen-ordered vocabulary."""

    vocabulary: tuple[str, ...]
    docs: list[dict[int, int]]
    doc_meta: list[tuple[str, Source]]
    dropped: int = 0
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {token: i for i, token in enumerate(self.vocabulary)}
        if len(self.docs) != len(self.doc_meta):
            raise ValueError("docs and doc_meta differ in length")

    @property
    def num_tokens(self) -> int:
        return sum(sum(d.values()) for d in self.docs)

    def word_ids(self, d: int) -> list[int]:
        return [w for w, c in self.docs[d].items() for _ in range(c)]


def build_corpus(docs: Iterable[TokenizedDocument], *, min_df: int = 1) -> Corpus:
    docs = list(docs)
    dropped = sum(1 for d in docs if not d.tokens)
    docs = [d for d in docs if d.tokens]
    if min_df > 1:
        df: dict[str, int] = {}
        for d in docs:
            for token in set(d.tokens):
                df[token] = df.get(token, 0) + 1
        keep = {t for t, c in df.items() if c >= min_df}
        docs = [TokenizedDocument(d.source, d.repo_id, tuple(t for t in d.tokens if t in keep)) for d in docs]
    index: dict[str, int] = {}
    counts, meta = [], []
    for d in docs:
        if not d.tokens:
            dropped += 1
            continue
        bag: dict[int, int] = {}
        for token in d.tokens:
            wid = index.setdefault(token, len(index))
            bag[wid] = bag.get(wid, 0) + 1
        counts.append(bag)
        meta.append((d.repo_id, d.source))
    if not counts:
        raise EmptyCorpusError("every document is empty after tokenization")
    return Corpus(tuple(index), counts, meta, dropped)
