"""Aggregation of per-repository distributions and report files.

Output files written by :func:`emit_reports`:

``report.json``
    The full :class:`RunReport`.
``rq3.csv``
    ``language,source,type,pct``: mean type share per language and source.
    ``pct`` is blank when no repository of that language had data there.
``rq4.csv``
    ``type,source,pct``: each source's share of a type's total mass.
``fig_<source>.csv``
    ``language,<one column per type>``: bar-chart data per source.

CSV files are UTF-8 with ``\\n`` line endings and four-decimal percentages.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from docmine.classifier import TypeDistribution
from docmine.taxonomy import DocType, Language, Source

JSON_DIGITS = 10

# Published corpus-wide shares from a large GitHub crawl. Carried into
# report.json for side-by-side reading only; never compared against.
PUBLISHED_TYPE_SHARE = {
    DocType.ERROR_RELATED: 25.9,
    DocType.PROJECT_RELATED: 23.6,
    DocType.FILE_RELATED: 16.04,
    DocType.LICENSE_RELATED: 15.99,
    DocType.API_RELATED: 5.63,
    DocType.OTHERS: 12.75,
}
PUBLISHED_SOURCE_SHARE = {
    Source.SOURCE_CODE_COMMENTS: 23.04,
    Source.TEXTUAL_DOCS: 22.58,
    Source.COMMITS: 18.5,
    Source.PULL_REQUESTS: 18.21,
    Source.ISSUES: 17.63,
}
PUBLISHED_TOPIC_COUNTS = {Source.COMMITS: 4, Source.ISSUES: 5, Source.PULL_REQUESTS: 4}


class ReportError(OSError):
    pass


LanguageAverages = dict[Language, dict[Source, dict[DocType, float]]]


def aggregate_by_language(
    dists: Sequence[TypeDistribution],
    repo_langs: Mapping[str, Language],
    *,
    weight_by_mass: bool = False,
) -> LanguageAverages:
    """Mean percentages per language and source, skipping empty distributions.

    Each repository counts once unless ``weight_by_mass``, in which case it
    is weighted by its token mass for that source.
    """
    cells: dict[tuple[Language, Source], list[TypeDistribution]] = defaultdict(list)
    for dist in dists:
        if dist.empty:
            continue
        cells[(repo_langs[dist.repo_id], dist.source)].append(dist)
    out: LanguageAverages = {}
    for language in Language:
        for source in Source:
            members = cells.get((language, source))
            if not members:
                continue
            weights = [float(d.token_mass) if weight_by_mass else 1.0 for d in members]
            total = sum(weights)
            out.setdefault(language, {})[source] = {
                t: sum(w * d.percentages[t] for w, d in zip(weights, members)) / total for t in DocType
            }
    return out


@dataclass
class ContributionMatrix:
    values: dict[DocType, dict[Source, float]]
    zero_mass: list[DocType] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "values": {t.value: {s.value: _r(v) for s, v in row.items()} for t, row in self.values.items()},
            "zero_mass": [t.value for t in self.zero_mass],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ContributionMatrix:
        return cls(
            {DocType(t): {Source(s): v for s, v in row.items()} for t, row in data["values"].items()},
            [DocType(t) for t in data["zero_mass"]],
        )


def type_source_mass(
    dists: Sequence[TypeDistribution],
    masses: Mapping[tuple[str, Source], float] | None = None,
) -> dict[DocType, dict[Source, float]]:
    """mass(type, source) = sum over repositories of pct * source mass / 100."""
    out = {t: {s: 0.0 for s in Source} for t in DocType}
    for dist in dists:
        if dist.empty:
            continue
        mass = dist.token_mass if masses is None else masses[(dist.repo_id, dist.source)]
        if mass < 0:
            raise ValueError("information mass must be non-negative")
        for t in DocType:
            out[t][dist.source] += dist.percentages[t] * mass / 100.0
    return out


def source_contribution(
    dists: Sequence[TypeDistribution],
    masses: Mapping[tuple[str, Source], float] | None = None,
) -> ContributionMatrix:
    """Per type, the percentage of its mass found in each source.

    ``masses`` maps ``(repo_id, source)`` to that source's information mass;
    by default each distribution's token mass is used.
    """
    mass = type_source_mass(dists, masses)
    values, zero = {}, []
    for t in DocType:
        row_total = sum(mass[t].values())
        if row_total == 0:
            zero.append(t)
            values[t] = {s: 0.0 for s in Source}
        else:
            values[t] = {s: 100.0 * mass[t][s] / row_total for s in Source}
    return ContributionMatrix(values, zero)


def overall_shares(dists: Sequence[TypeDistribution]) -> tuple[dict[DocType, float], dict[Source, float]]:
    mass = type_source_mass(dists)
    total = sum(sum(row.values()) for row in mass.values())
    if total == 0:
        return {t: 0.0 for t in DocType}, {s: 0.0 for s in Source}
    types = {t: 100.0 * sum(mass[t].values()) / total for t in DocType}
    sources = {s: 100.0 * sum(mass[t][s] for t in DocType) / total for s in Source}
    return types, sources


def _r(value: float) -> float:
    return round(float(value), JSON_DIGITS)


@dataclass
class RunReport:
    per_repo: list[TypeDistribution]
    repo_languages: dict[str, Language]
    per_language_avg: LanguageAverages
    overall_type_share: dict[DocType, float]
    overall_source_share: dict[Source, float]
    contribution: ContributionMatrix
    provenance: dict = field(default_factory=dict)
    excluded: list[dict] = field(default_factory=list)
    flagged: list[dict] = field(default_factory=list)
    models: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "repositories": {r: lang.value for r, lang in self.repo_languages.items()},
            "excluded": self.excluded,
            "flagged": self.flagged,
            "per_repo": [
                dict(d.to_dict(), percentages={t.value: _r(d.percentages[t]) for t in DocType}) for d in self.per_repo
            ],
            "per_language_avg": {
                lang.value: {s.value: {t.value: _r(v) for t, v in cell.items()} for s, cell in by_source.items()}
                for lang, by_source in self.per_language_avg.items()
            },
            "overall_type_share": {t.value: _r(v) for t, v in self.overall_type_share.items()},
            "overall_source_share": {s.value: _r(v) for s, v in self.overall_source_share.items()},
            "source_contribution": self.contribution.to_dict(),
            "models": self.models,
            "published_reference": {
                "note": "published shares from a large GitHub crawl; shown for comparison, not reproduced",
                "overall_type_share": {t.value: v for t, v in PUBLISHED_TYPE_SHARE.items()},
                "overall_source_share": {s.value: v for s, v in PUBLISHED_SOURCE_SHARE.items()},
                "optimal_topic_counts": {s.value: k for s, k in PUBLISHED_TOPIC_COUNTS.items()},
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> RunReport:
        return cls(
            per_repo=[TypeDistribution.from_dict(d) for d in data["per_repo"]],
            repo_languages={r: Language(v) for r, v in data["repositories"].items()},
            per_language_avg={
                Language(lang): {
                    Source(s): {DocType(t): v for t, v in cell.items()} for s, cell in by_source.items()
                }
                for lang, by_source in data["per_language_avg"].items()
            },
            overall_type_share={DocType(t): v for t, v in data["overall_type_share"].items()},
            overall_source_share={Source(s): v for s, v in data["overall_source_share"].items()},
            contribution=ContributionMatrix.from_dict(data["source_contribution"]),
            provenance=data["provenance"],
            excluded=data["excluded"],
            flagged=data["flagged"],
            models=data["models"],
        )


def build_report(
    dists: Sequence[TypeDistribution],
    repo_langs: Mapping[str, Language],
    *,
    weight_by_mass: bool = False,
    **extra,
) -> RunReport:
    types, sources = overall_shares(dists)
    return RunReport(
        per_repo=list(dists),
        repo_languages=dict(repo_langs),
        per_language_avg=aggregate_by_language(dists, repo_langs, weight_by_mass=weight_by_mass),
        overall_type_share=types,
        overall_source_share=sources,
        contribution=source_contribution(dists),
        **extra,
    )


def _pct(value: float | None) -> str:
    return "" if value is None else f"{value:.4f}"


def _csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def render_files(report: RunReport) -> dict[str, str]:
    languages = [lang for lang in Language if lang in set(report.repo_languages.values())]
    avg = report.per_language_avg
    files = {"report.json": json.dumps(report.to_dict(), indent=2) + "\n"}

    rows = [["language", "source", "type", "pct"]]
    for lang in languages:
        for source in Source:
            cell = avg.get(lang, {}).get(source)
            for t in DocType:
                rows.append([lang.value, source.value, t.value, _pct(cell[t] if cell else None)])
    files["rq3.csv"] = _csv(rows)

    rows = [["type", "source", "pct"]]
    for t in DocType:
        for source in Source:
            rows.append([t.value, source.value, _pct(report.contribution.values[t][source])])
    files["rq4.csv"] = _csv(rows)

    for source in Source:
        rows = [["language"] + [t.value for t in DocType]]
        for lang in languages:
            cell = avg.get(lang, {}).get(source)
            rows.append([lang.value] + [_pct(cell[t] if cell else None) for t in DocType])
        files[f"fig_{source.value}.csv"] = _csv(rows)
    return files


def emit_reports(report: RunReport, out_dir: str | os.PathLike) -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportError(f"cannot create output directory {out}: {exc}") from exc
    written = []
    for name, content in render_files(report).items():
        path = out / name
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(content)
        except OSError as exc:
            raise ReportError(f"cannot write {path}: {exc}") from exc
        written.append(path)
    return written
