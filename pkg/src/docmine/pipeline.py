"""End-to-end run over a list of repositories."""

from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from datetime import date
from pathlib import Path

from docmine import __version__
from docmine.artifacts import ArtifactProvider, DumpProvider, GitHubProvider, RecencyWindow, extract_fields, ingest
from docmine.classifier import TIE_EPS, CategoryLexicon, TypeDistribution, distribution, empty_distribution, label_topic
from docmine.comments import lex_comments
from docmine.lda import LdaConfig, LdaModel, best_of, coherence, sweep_topic_counts, top_keywords, train_lda
from docmine.reporting import RunReport, build_report
from docmine.scanner import collect_textual_documents, eligible_repo, exclusion_reason, read_text, scan_repo
from docmine.taxonomy import ARTIFACT_SOURCE, FileCategory, Language, Source
from docmine.text import Corpus, EmptyCorpusError, TokenizedDocument, build_corpus, load_stopwords, tokenize

logger = logging.getLogger(__name__)

DEFAULT_PINNED_K = {
    Source.SOURCE_CODE_COMMENTS: 5,
    Source.TEXTUAL_DOCS: 5,
    Source.COMMITS: 4,
    Source.ISSUES: 5,
    Source.PULL_REQUESTS: 4,
}


class ConfigError(ValueError):
    pass


class NoEligibleRepositories(RuntimeError):
    pass


@dataclass(frozen=True)
class RepoEntry:
    repo_id: str
    path: Path
    language: Language


def parse_repo_list(path: str | Path) -> list[RepoEntry]:
    """``<repo_id> <local_path> <language>`` per line; ``#`` starts a comment.

    Relative paths are resolved against the list file's directory.
    """
    path = Path(path)
    entries, seen = [], set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ConfigError(f"{path}:{lineno}: expected '<repo_id> <local_path> <language>'")
        repo_id, local, lang = parts
        if repo_id in seen:
            raise ConfigError(f"{path}:{lineno}: duplicate repository {repo_id}")
        seen.add(repo_id)
        try:
            language = Language.parse(lang)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from None
        entries.append(RepoEntry(repo_id, (path.parent / local).resolve(), language))
    return entries


def derive_seed(global_seed: int, *parts: object) -> int:
    """64-bit seed from the global seed and a work-item key, independent of scheduling."""
    key = "\x1f".join([str(global_seed), *map(str, parts)]).encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


@dataclass
class RunConfig:
    repos: Path
    artifacts: str = "dump"
    dump_dir: Path | None = None
    anchor_date: date = field(default_factory=date.today)
    span_years: int = 3
    k_mode: str = "pinned"
    pinned_k: dict[Source, int] = field(default_factory=lambda: dict(DEFAULT_PINNED_K))
    k_min: int = 2
    k_max: int = 20
    lda: LdaConfig = field(default_factory=LdaConfig)
    lexicon: Path | None = None
    stopwords: Path | None = None
    out: Path = Path("out")
    jobs: int = 1
    seed: int = 0
    min_df: int = 1
    docstrings: bool = True
    stem: bool = False
    tie_eps: float = TIE_EPS
    similarity: str = "overlap"
    top_n: int = 10
    uniform_topic_weight: bool = False
    weight_by_mass: bool = False

    def validate(self) -> None:
        if not Path(self.repos).is_file():
            raise ConfigError(f"repository list not found: {self.repos}")
        if self.artifacts not in ("api", "dump"):
            raise ConfigError("artifacts must be 'api' or 'dump'")
        if self.artifacts == "dump" and not Path(self.resolved_dump_dir()).is_dir():
            raise ConfigError(f"dump directory not found: {self.resolved_dump_dir()}")
        for name in ("lexicon", "stopwords"):
            value = getattr(self, name)
            if value is not None and not Path(value).is_file():
                raise ConfigError(f"{name} file not found: {value}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.k_mode not in ("sweep", "pinned"):
            raise ConfigError("k-mode must be 'sweep' or 'pinned'")
        if self.similarity not in ("overlap", "cosine"):
            raise ConfigError("similarity must be 'overlap' or 'cosine'")
        if self.min_df < 1:
            raise ConfigError("min-df must be at least 1")

    def resolved_dump_dir(self) -> Path:
        return Path(self.dump_dir) if self.dump_dir is not None else Path(self.repos).parent / "dumps"


@dataclass
class FittedSource:
    repo_id: str
    source: Source
    corpus: Corpus
    model: LdaModel


@dataclass
class RepoOutcome:
    repo_id: str
    language: Language
    status: str  # ok | excluded | failed
    reason: str = ""
    distributions: list[TypeDistribution] = field(default_factory=list)
    models: list[dict] = field(default_factory=list)
    fitted: list[FittedSource] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)


@dataclass
class RunResult:
    report: RunReport
    outcomes: list[RepoOutcome]

    @property
    def fitted(self) -> list[FittedSource]:
        return [f for o in self.outcomes for f in o.fitted]


class _Context:
    def __init__(self, config: RunConfig, provider: ArtifactProvider | None = None) -> None:
        self.config = config
        self.window = RecencyWindow(config.anchor_date, config.span_years)
        self.lexicon = CategoryLexicon.load(config.lexicon)
        self.stopwords = load_stopwords(config.stopwords)
        if provider is None:
            provider = GitHubProvider() if config.artifacts == "api" else DumpProvider(config.resolved_dump_dir())
        self.provider = provider


def gather_documents(entry: RepoEntry, snapshot, ctx: _Context, flags: list[str]) -> dict[Source, list[str]]:
    docs: dict[Source, list[str]] = {s: [] for s in Source}
    lex_warnings = 0
    for record in snapshot.files_in(FileCategory.SOURCE_CODE):
        try:
            text = read_text(entry.path / record.relative_path)
        except OSError as exc:
            logger.warning("%s: cannot read %s: %s", entry.repo_id, record.relative_path, exc)
            continue
        lexed = lex_comments(
            text, record.language_hint, file=record.relative_path, include_docstrings=ctx.config.docstrings
        )
        lex_warnings += len(lexed.warnings)
        if lexed.spans:
            docs[Source.SOURCE_CODE_COMMENTS].append("\n".join(span.text for span in lexed.spans))
    if lex_warnings:
        flags.append(f"lex_warnings:{lex_warnings}")
    docs[Source.TEXTUAL_DOCS] = collect_textual_documents(snapshot, entry.path)

    loaded = ingest(ctx.provider, entry.repo_id, ctx.window)
    flags.extend(loaded.flags)
    for record in loaded.records:
        docs[ARTIFACT_SOURCE[record.kind]].append("\n".join(extract_fields(record)))
    return docs


def analyze_source(repo_id: str, source: Source, texts: list[str], ctx: _Context, outcome: RepoOutcome) -> None:
    cfg = ctx.config
    tokenized = [
        TokenizedDocument(source, repo_id, tuple(tokenize(t, ctx.stopwords, stem=cfg.stem))) for t in texts
    ]
    try:
        corpus = build_corpus(tokenized, min_df=cfg.min_df)
    except EmptyCorpusError:
        outcome.distributions.append(empty_distribution(source, repo_id))
        outcome.models.append({"repo_id": repo_id, "source": source.value, "documents": len(texts), "empty": True})
        return

    lda_config = replace(cfg.lda, seed=derive_seed(cfg.seed, repo_id, source.value))
    sweep_scores = None
    if cfg.k_mode == "sweep":
        results = sweep_topic_counts(corpus, cfg.k_min, cfg.k_max, lda_config, cfg.top_n)
        _, score, model = best_of(results)
        sweep_scores = {str(k): round(s, 6) for k, s, _ in results}
    else:
        model = train_lda(corpus, cfg.pinned_k[source], lda_config)
        score = coherence(model, corpus, cfg.top_n)

    summaries = top_keywords(model, cfg.top_n)
    labels = [label_topic(s, ctx.lexicon, cfg.tie_eps, cfg.similarity) for s in summaries]
    outcome.distributions.append(
        distribution(model, labels, source=source, repo_id=repo_id, uniform=cfg.uniform_topic_weight)
    )
    outcome.fitted.append(FittedSource(repo_id, source, corpus, model))
    summary = {
        "repo_id": repo_id,
        "source": source.value,
        "documents": len(corpus.docs),
        "dropped_documents": corpus.dropped,
        "tokens": int(model.total_tokens),
        "vocabulary": len(corpus.vocabulary),
        "k": model.k,
        "seed": lda_config.seed,
        "coherence": round(score, 6),
        "topics": [
            {"index": s.topic_index, "label": label.value, "mass": float(m), "keywords": s.tokens}
            for s, label, m in zip(summaries, labels, model.topic_mass)
        ],
    }
    if sweep_scores is not None:
        summary["sweep_coherence"] = sweep_scores
    outcome.models.append(summary)


def analyze_repo(entry: RepoEntry, ctx: _Context) -> RepoOutcome:
    outcome = RepoOutcome(entry.repo_id, entry.language, "ok")
    try:
        meta = ctx.provider.repo_metadata(entry.repo_id)
        snapshot = scan_repo(
            entry.path,
            entry.repo_id,
            entry.language,
            fork_flag=meta["fork"],
            pull_request_count=meta["pull_request_count"],
        )
        if not eligible_repo(snapshot):
            outcome.status, outcome.reason = "excluded", exclusion_reason(snapshot)
            return outcome
        docs = gather_documents(entry, snapshot, ctx, outcome.flags)
        for source in Source:
            analyze_source(entry.repo_id, source, docs[source], ctx, outcome)
    except Exception as exc:  # one repository must not sink the run
        logger.exception("analysis of %s failed", entry.repo_id)
        return RepoOutcome(entry.repo_id, entry.language, "failed", f"{type(exc).__name__}: {exc}")
    return outcome


def provenance(ctx: _Context) -> dict:
    cfg = ctx.config
    lda = asdict(cfg.lda)
    lda["alpha"] = "50/K" if cfg.lda.alpha is None else cfg.lda.alpha
    return {
        "tool_version": __version__,
        "anchor_date": cfg.anchor_date.isoformat(),
        "span_years": cfg.span_years,
        "window_start": ctx.window.start.date().isoformat(),
        "artifact_provider": ctx.provider.name,
        "lexicon_version": ctx.lexicon.version,
        "stopwords": "bundled-english" if cfg.stopwords is None else hashlib.sha256(
            "\n".join(sorted(ctx.stopwords)).encode()
        ).hexdigest()[:12],
        "global_seed": cfg.seed,
        "k_mode": cfg.k_mode,
        "pinned_k": {s.value: k for s, k in cfg.pinned_k.items()} if cfg.k_mode == "pinned" else None,
        "k_range": [cfg.k_min, cfg.k_max] if cfg.k_mode == "sweep" else None,
        "lda": lda,
        "top_n": cfg.top_n,
        "min_df": cfg.min_df,
        "stem": cfg.stem,
        "docstrings": cfg.docstrings,
        "similarity": cfg.similarity,
        "tie_eps": cfg.tie_eps,
        "topic_weighting": "uniform" if cfg.uniform_topic_weight else "token_mass",
        "language_average": "token_mass" if cfg.weight_by_mass else "unweighted",
        "hidden_files": "included",
    }


def run(config: RunConfig, provider: ArtifactProvider | None = None) -> RunResult:
    config.validate()
    ctx = _Context(config, provider)
    entries = parse_repo_list(config.repos)
    if config.jobs == 1:
        outcomes = [analyze_repo(e, ctx) for e in entries]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(lambda e: analyze_repo(e, ctx), entries))

    ok = [o for o in outcomes if o.status == "ok"]
    if not ok:
        raise NoEligibleRepositories(
            "no eligible repository was analysed: "
            + ", ".join(f"{o.repo_id} ({o.status}: {o.reason})" for o in outcomes)
        )
    report = build_report(
        [d for o in ok for d in o.distributions],
        {o.repo_id: o.language for o in ok},
        weight_by_mass=config.weight_by_mass,
        provenance=provenance(ctx),
        excluded=[{"repo_id": o.repo_id, "reason": o.reason} for o in outcomes if o.status == "excluded"],
        flagged=[
            {"repo_id": o.repo_id, "flags": [f"failed: {o.reason}"] if o.status == "failed" else o.flags}
            for o in outcomes
            if o.status == "failed" or o.flags
        ],
        models=[m for o in ok for m in o.models],
    )
    return RunResult(report, outcomes)
