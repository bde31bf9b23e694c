"""Latent Dirichlet allocation by collapsed Gibbs sampling.

Randomness comes only from a PCG64 stream: one uniform per token for the
initial assignment, then one uniform per token per sweep. Topic draws invert
the running sum of the unnormalised conditional, accumulated in a fixed
order, so a seed reproduces the same counts on any IEEE-754 platform.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
from dataclasses import asdict, dataclass, replace
from typing import Callable

import numpy as np

from docmine.text import Corpus, EmptyCorpusError

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

logger = logging.getLogger(__name__)

K_LIMIT = 100
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class LdaConfig:
    """Sampler settings. ``alpha=None`` means 50/K, resolved at training time."""

    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 200
    seed: int = 0
    average_samples: bool = False

    def __post_init__(self) -> None:
        if self.alpha is not None and not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("burn_in must satisfy 0 <= burn_in < iterations")

    def alpha_for(self, k: int) -> float:
        return 50.0 / k if self.alpha is None else self.alpha


@dataclass(frozen=True)
class TopicSummary:
    topic_index: int
    keywords: tuple[tuple[str, float], ...]

    @property
    def tokens(self) -> list[str]:
        return [t for t, _ in self.keywords]


@dataclass(frozen=True, eq=False)
class LdaModel:
    k: int
    topic_word_counts: np.ndarray
    doc_topic_counts: np.ndarray
    config: LdaConfig
    vocabulary: tuple[str, ...]

    @property
    def total_tokens(self):
        return self.doc_topic_counts.sum()

    @property
    def topic_mass(self) -> np.ndarray:
        return self.doc_topic_counts.sum(axis=0)

    @property
    def vocabulary_hash(self) -> str:
        return vocabulary_hash(self.vocabulary)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "config": asdict(self.config),
            "vocabulary": list(self.vocabulary),
            "vocabulary_sha256": self.vocabulary_hash,
            "topic_word_counts": self.topic_word_counts.tolist(),
            "doc_topic_counts": self.doc_topic_counts.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> LdaModel:
        vocabulary = tuple(data["vocabulary"])
        if vocabulary_hash(vocabulary) != data["vocabulary_sha256"]:
            raise ValueError("vocabulary does not match its recorded hash")
        dtype = np.float64 if data["config"].get("average_samples") else np.int64
        return cls(
            k=int(data["k"]),
            topic_word_counts=np.asarray(data["topic_word_counts"], dtype=dtype).reshape(int(data["k"]), -1),
            doc_topic_counts=np.asarray(data["doc_topic_counts"], dtype=dtype).reshape(-1, int(data["k"])),
            config=LdaConfig(**data["config"]),
            vocabulary=vocabulary,
        )


def vocabulary_hash(vocabulary) -> str:
    return hashlib.sha256("\n".join(vocabulary).encode("utf-8")).hexdigest()


def save_model(model: LdaModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model.to_dict(), fh)


def load_model(path: str | os.PathLike) -> LdaModel:
    with open(path, encoding="utf-8") as fh:
        return LdaModel.from_dict(json.load(fh))


def _sweep_py(words, docs, z, ndk, nkw, nk, alpha, beta, vbeta, uniforms, cumulative):
    num_topics = nk.shape[0]
    for i in range(words.shape[0]):
        w = words[i]
        d = docs[i]
        t = z[i]
        ndk[d, t] -= 1
        nkw[t, w] -= 1
        nk[t] -= 1
        total = 0.0
        for j in range(num_topics):
            total += (ndk[d, j] + alpha) * (nkw[j, w] + beta) / (nk[j] + vbeta)
            cumulative[j] = total
        threshold = uniforms[i] * total
        t = 0
        while t < num_topics - 1 and cumulative[t] <= threshold:
            t += 1
        z[i] = t
        ndk[d, t] += 1
        nkw[t, w] += 1
        nk[t] += 1


_sweep = njit(cache=True, nogil=True)(_sweep_py) if njit is not None else _sweep_py


def _flatten(corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    words, docs = [], []
    for d in range(len(corpus.docs)):
        ids = corpus.word_ids(d)
        words.extend(ids)
        docs.extend([d] * len(ids))
    return np.asarray(words, dtype=np.int64), np.asarray(docs, dtype=np.int64)


def train_lda(
    corpus: Corpus,
    k: int,
    config: LdaConfig = LdaConfig(),
    *,
    on_sweep: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
    kernel: Callable | None = None,
) -> LdaModel:
    """Fit a K-topic model.

    ``on_sweep(iteration, doc_topic, topic_word)`` is called after every
    sweep with the live count arrays (read-only use). ``kernel`` swaps the
    per-sweep routine, e.g. for the pure-Python reference.
    """
    if not corpus.docs:
        raise EmptyCorpusError("cannot train on an empty corpus")
    if not 2 <= k <= K_LIMIT:
        raise ValueError(f"topic count must lie in [2, {K_LIMIT}], got {k}")
    num_docs, vocab_size = len(corpus.docs), len(corpus.vocabulary)
    if k > num_docs:
        logger.warning("k=%d exceeds the %d documents; topics will be degenerate", k, num_docs)
    sweep = kernel or _sweep
    alpha = config.alpha_for(k)
    beta = config.beta
    words, docs = _flatten(corpus)

    rng = np.random.Generator(np.random.PCG64(config.seed & _SEED_MASK))
    z = np.minimum((rng.random(words.shape[0]) * k).astype(np.int64), k - 1)
    ndk = np.zeros((num_docs, k), dtype=np.int64)
    nkw = np.zeros((k, vocab_size), dtype=np.int64)
    np.add.at(ndk, (docs, z), 1)
    np.add.at(nkw, (z, words), 1)
    nk = nkw.sum(axis=1)
    cumulative = np.empty(k, dtype=np.float64)

    acc_ndk = acc_nkw = None
    samples = 0
    if config.average_samples:
        acc_ndk = np.zeros((num_docs, k), dtype=np.float64)
        acc_nkw = np.zeros((k, vocab_size), dtype=np.float64)

    for it in range(config.iterations):
        sweep(words, docs, z, ndk, nkw, nk, alpha, beta, vocab_size * beta, rng.random(words.shape[0]), cumulative)
        if on_sweep is not None:
            on_sweep(it, ndk, nkw)
        if acc_ndk is not None and it >= config.burn_in:
            acc_ndk += ndk
            acc_nkw += nkw
            samples += 1

    if acc_ndk is not None:
        ndk, nkw = acc_ndk / samples, acc_nkw / samples
    return LdaModel(k, nkw, ndk, replace(config, alpha=alpha), corpus.vocabulary)


def _ranked(model: LdaModel, topic: int) -> list[int]:
    counts = model.topic_word_counts[topic]
    vocab = model.vocabulary
    return sorted(range(len(vocab)), key=lambda w: (-counts[w], vocab[w]))


def top_keywords(model: LdaModel, n: int = 10) -> list[TopicSummary]:
    """Highest-probability words per topic under the smoothed topic-word
    distribution; equal probabilities are ordered alphabetically."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vocab_size = len(model.vocabulary)
    if n > vocab_size:
        logger.warning("asked for %d keywords but the vocabulary has %d words", n, vocab_size)
        n = vocab_size
    beta = model.config.beta
    summaries = []
    for topic in range(model.k):
        counts = model.topic_word_counts[topic]
        denom = counts.sum() + vocab_size * beta
        keywords = tuple(
            (model.vocabulary[w], float((counts[w] + beta) / denom)) for w in _ranked(model, topic)[:n]
        )
        summaries.append(TopicSummary(topic, keywords))
    return summaries


def _doc_sets(corpus: Corpus, words) -> dict[int, frozenset[int]]:
    wanted = set(words)
    sets: dict[int, set[int]] = {w: set() for w in wanted}
    for d, bag in enumerate(corpus.docs):
        for w in bag:
            if w in wanted:
                sets[w].add(d)
    return {w: frozenset(s) for w, s in sets.items()}


def umass_pairs(ranked: list[int], doc_sets: dict[int, frozenset[int]]) -> float:
    """Sum of log((D(w_i, w_j) + 1) / D(w_j)) over ranked pairs i < j."""
    score = 0.0
    for j in range(1, len(ranked)):
        later = doc_sets[ranked[j]]
        for i in range(j):
            score += math.log((len(doc_sets[ranked[i]] & later) + 1) / len(later))
    return score


def topic_coherences(model: LdaModel, corpus: Corpus, top_n: int = 10) -> list[float]:
    if top_n < 2:
        raise ValueError("top_n must be at least 2")
    if len(corpus.vocabulary) != len(model.vocabulary):
        raise ValueError("model and corpus vocabularies differ")
    top_n = min(top_n, len(model.vocabulary))
    tops = [_ranked(model, t)[:top_n] for t in range(model.k)]
    doc_sets = _doc_sets(corpus, [w for top in tops for w in top])
    return [umass_pairs(top, doc_sets) for top in tops]


def coherence(model: LdaModel, corpus: Corpus, top_n: int = 10) -> float:
    """UMass coherence averaged over topics."""
    scores = topic_coherences(model, corpus, top_n)
    return sum(scores) / len(scores)


def sweep_topic_counts(
    corpus: Corpus,
    k_min: int = 2,
    k_max: int = 20,
    config: LdaConfig = LdaConfig(),
    top_n: int = 10,
) -> list[tuple[int, float, LdaModel]]:
    if not 2 <= k_min <= k_max <= K_LIMIT:
        raise ValueError(f"need 2 <= k_min <= k_max <= {K_LIMIT}")
    results = []
    for k in range(k_min, k_max + 1):
        model = train_lda(corpus, k, config)
        results.append((k, coherence(model, corpus, top_n), model))
    return results


def best_of(results: list[tuple[int, float, LdaModel]]) -> tuple[int, float, LdaModel]:
    """Highest coherence; ties go to the smaller topic count."""
    best = results[0]
    for entry in results[1:]:
        if entry[1] > best[1]:
            best = entry
    return best


def select_topic_count(
    corpus: Corpus,
    k_min: int = 2,
    k_max: int = 20,
    config: LdaConfig = LdaConfig(),
    top_n: int = 10,
) -> tuple[int, dict[int, float]]:
    results = sweep_topic_counts(corpus, k_min, k_max, config, top_n)
    return best_of(results)[0], {k: score for k, score, _ in results}
