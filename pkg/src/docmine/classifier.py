"""Rule-based documentation-type labelling of topics."""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Sequence

from docmine.lda import LdaModel, TopicSummary
from docmine.taxonomy import NAMED_TYPES, DocType, Source

TIE_EPS = 0.05
KEYWORDS_PER_TYPE = 10
# Float differences such as 0.35 - 0.30 land a hair under 0.05; anything
# that close to the threshold is treated as sitting on it.
_BOUNDARY_SLACK = 1e-9


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class CategoryLexicon:
    entries: Mapping[DocType, frozenset[str]]
    version: str = ""

    def __post_init__(self) -> None:
        if set(self.entries) != set(NAMED_TYPES):
            raise LexiconError("lexicon needs exactly the five named documentation types")
        for doc_type, words in self.entries.items():
            if len(words) != KEYWORDS_PER_TYPE:
                raise LexiconError(f"{doc_type.value}: expected {KEYWORDS_PER_TYPE} keywords, got {len(words)}")
            if any(w != w.lower() or not w.strip() for w in words):
                raise LexiconError(f"{doc_type.value}: keywords must be non-empty lowercase tokens")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Sequence[str]], version: str = "") -> CategoryLexicon:
        try:
            entries = {DocType(name): list(words) for name, words in data.items()}
        except ValueError as exc:
            raise LexiconError(str(exc)) from None
        if DocType.OTHERS in entries:
            raise LexiconError("'others' has no keyword set")
        for doc_type, words in entries.items():
            if not all(isinstance(w, str) for w in words) or len(set(words)) != len(words):
                raise LexiconError(f"{doc_type.value}: keywords must be distinct strings")
        return cls({t: frozenset(w) for t, w in entries.items()}, version)

    @classmethod
    def load(cls, path: str | os.PathLike | None = None) -> CategoryLexicon:
        """Read a JSON ``{category: [10 keywords]}`` file; ``None`` loads the bundled one.

        The version is a content hash, so edited lexicons show up in reports.
        """
        if path is None:
            raw = resources.files("docmine.data").joinpath("lexicon.json").read_bytes()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"lexicon is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise LexiconError("lexicon must be a JSON object")
        return cls.from_mapping(data, version=hashlib.sha256(raw).hexdigest()[:12])

    def to_dict(self) -> dict[str, list[str]]:
        return {t.value: sorted(self.entries[t]) for t in NAMED_TYPES}


def _top_tokens(summary: TopicSummary | Sequence[str], top_n: int) -> list[str]:
    tokens = summary.tokens if isinstance(summary, TopicSummary) else list(summary)
    return tokens[:top_n]


def similarity(summary: TopicSummary | Sequence[str], lexicon_keywords, top_n: int = 10) -> float:
    """Overlap coefficient between a topic's top words and a keyword set."""
    topic = set(_top_tokens(summary, top_n))
    keywords = set(lexicon_keywords)
    if not topic or not keywords:
        return 0.0
    return len(topic & keywords) / min(len(topic), len(keywords))


def cosine_similarity(summary: TopicSummary, lexicon_keywords, top_n: int = 10) -> float:
    """Cosine between the topic's keyword weights and the keyword-set indicator."""
    weights = dict(summary.keywords[:top_n])
    keywords = set(lexicon_keywords)
    norm = math.sqrt(sum(w * w for w in weights.values())) * math.sqrt(len(keywords))
    if norm == 0:
        return 0.0
    return sum(w for t, w in weights.items() if t in keywords) / norm


SIMILARITIES = {"overlap": similarity, "cosine": cosine_similarity}


def type_scores(summary: TopicSummary, lexicon: CategoryLexicon, measure: str = "overlap") -> list[float]:
    score = SIMILARITIES[measure]
    return [score(summary, lexicon.entries[t]) for t in NAMED_TYPES]


def decide(scores: Sequence[float], tie_eps: float = TIE_EPS) -> DocType:
    """Others when all five scores lie within ``tie_eps`` of each other
    (strictly less), otherwise the best-scoring type, earliest type on ties."""
    if len(scores) != len(NAMED_TYPES):
        raise ValueError(f"expected {len(NAMED_TYPES)} scores")
    top = max(scores)
    if top - min(scores) < tie_eps - _BOUNDARY_SLACK:
        return DocType.OTHERS
    return NAMED_TYPES[list(scores).index(top)]


def label_topic(
    summary: TopicSummary,
    lexicon: CategoryLexicon,
    tie_eps: float = TIE_EPS,
    measure: str = "overlap",
) -> DocType:
    return decide(type_scores(summary, lexicon, measure), tie_eps)


class ArityError(ValueError):
    pass


@dataclass
class TypeDistribution:
    source: Source
    repo_id: str
    percentages: dict[DocType, float] = field(default_factory=lambda: {t: 0.0 for t in DocType})
    empty: bool = False
    token_mass: int = 0

    def to_dict(self) -> dict:
        return {
            "repo_id": self.repo_id,
            "source": self.source.value,
            "empty": self.empty,
            "token_mass": self.token_mass,
            "percentages": {t.value: self.percentages[t] for t in DocType},
        }

    @classmethod
    def from_dict(cls, data: dict) -> TypeDistribution:
        return cls(
            source=Source(data["source"]),
            repo_id=data["repo_id"],
            percentages={DocType(k): float(v) for k, v in data["percentages"].items()},
            empty=bool(data["empty"]),
            token_mass=int(data["token_mass"]),
        )


def empty_distribution(source: Source, repo_id: str) -> TypeDistribution:
    return TypeDistribution(source, repo_id, empty=True)


def distribution(
    model: LdaModel,
    labels: Sequence[DocType],
    *,
    source: Source,
    repo_id: str,
    uniform: bool = False,
) -> TypeDistribution:
    """Share of each type, weighting every topic by its token-assignment mass
    (or equally when ``uniform``)."""
    if len(labels) != model.k:
        raise ArityError(f"{len(labels)} labels for a {model.k}-topic model")
    token_mass = int(round(float(model.total_tokens)))
    masses = [1.0] * model.k if uniform else [float(m) for m in model.topic_mass]
    total = sum(masses)
    if total == 0 or token_mass == 0:
        return empty_distribution(source, repo_id)
    by_type = {t: 0.0 for t in DocType}
    for label, mass in zip(labels, masses):
        by_type[label] += mass
    percentages = {t: 100.0 * by_type[t] / total for t in DocType}
    return TypeDistribution(source, repo_id, percentages, False, token_mass)
