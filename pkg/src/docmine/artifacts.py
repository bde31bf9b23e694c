"""Issues, pull requests and commits: loading, windowing, field extraction.

Two providers share one entry schema (one JSON object per artifact):

    issue / pull request: {"number", "created_at", "title", "body", "comments"}
    commit:               {"sha", "created_at", "message", "comments"}

``comments`` is a list of strings or of ``{"body": ..., "kind": ...}``
objects, where ``kind`` keeps pull-request review comments distinguishable
from conversation comments. Every other key is ignored.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Iterator, Protocol

from docmine.taxonomy import ArtifactKind

logger = logging.getLogger(__name__)

DUMP_FILES = {
    ArtifactKind.ISSUE: "issues.jsonl",
    ArtifactKind.PULL_REQUEST: "pulls.jsonl",
    ArtifactKind.COMMIT: "commits.jsonl",
}
REPO_META_FILE = "repo.json"
TOKEN_ENV = "GITHUB_TOKEN"
MAX_ATTEMPTS = 5


class ArtifactError(Exception):
    pass


class AuthenticationError(ArtifactError):
    pass


class RateLimitExhausted(ArtifactError):
    pass


@dataclass(frozen=True)
class RecencyWindow:
    anchor_date: date
    span_years: int = 3

    def __post_init__(self) -> None:
        if self.span_years < 1:
            raise ValueError("span_years must be at least 1")

    @property
    def start(self) -> datetime:
        year = self.anchor_date.year - self.span_years
        try:
            day = self.anchor_date.replace(year=year)
        except ValueError:  # 29 February
            day = self.anchor_date.replace(year=year, day=28)
        return datetime(day.year, day.month, day.day, tzinfo=timezone.utc)

    def contains(self, created_at: datetime) -> bool:
        return created_at >= self.start


@dataclass(frozen=True)
class ArtifactRecord:
    kind: ArtifactKind
    id: str
    created_at: datetime
    texts: tuple[tuple[str, str], ...] = ()
    # Where each text came from, parallel to ``texts``; distinguishes
    # review comments from conversation comments on pull requests.
    origins: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        allowed = {"message", "comment"} if self.kind is ArtifactKind.COMMIT else {"title", "body", "comment"}
        for name, _ in self.texts:
            if name not in allowed:
                raise ValueError(f"field {name!r} not allowed for {self.kind.value}")


def extract_fields(record: ArtifactRecord) -> list[str]:
    """Non-empty field texts in title/body/comments (or message/comments) order."""
    return [text for _, text in record.texts if text and text.strip()]


def parse_timestamp(value: str) -> datetime:
    value = value.strip()
    if value.endswith(("Z", "z")):
        value = value[:-1] + "+00:00"
    parsed = datetime.fromisoformat(value)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _comment(entry) -> tuple[str, str]:
    if isinstance(entry, str):
        return entry, "comment"
    if isinstance(entry, dict):
        return entry.get("body") or "", entry.get("kind") or "comment"
    raise ValueError(f"unreadable comment entry {entry!r}")


def record_from_entry(kind: ArtifactKind, entry: dict) -> ArtifactRecord:
    """Build a record from one dump/API entry; raises ValueError if malformed."""
    if not isinstance(entry, dict):
        raise ValueError("entry is not an object")
    texts: list[tuple[str, str]] = []
    origins: list[str] = []
    if kind is ArtifactKind.COMMIT:
        nested = entry.get("commit") if isinstance(entry.get("commit"), dict) else {}
        ident = entry.get("sha") or entry.get("id")
        created = entry.get("created_at") or (nested.get("author") or {}).get("date")
        message = entry.get("message", nested.get("message"))
        if message:
            texts.append(("message", message))
            origins.append("message")
    else:
        ident = entry.get("number", entry.get("id"))
        created = entry.get("created_at")
        for name in ("title", "body"):
            if entry.get(name):
                texts.append((name, entry[name]))
                origins.append(name)
    comments = entry.get("comments") or []
    if not isinstance(comments, list):
        comments = []
    for raw in comments:
        body, origin = _comment(raw)
        if body:
            texts.append(("comment", body))
            origins.append(origin)
    if ident is None or not created:
        raise ValueError("entry lacks an id or created_at")
    if not isinstance(created, str):
        raise ValueError("created_at is not a string")
    return ArtifactRecord(kind, str(ident), parse_timestamp(created), tuple(texts), tuple(origins))


class ArtifactProvider(Protocol):
    name: str

    def entries(self, repo_id: str, kind: ArtifactKind, window: RecencyWindow) -> Iterable:
        ...

    def repo_metadata(self, repo_id: str) -> dict:
        ...


@dataclass
class IngestResult:
    records: list[ArtifactRecord] = field(default_factory=list)
    blank_kinds: list[ArtifactKind] = field(default_factory=list)
    malformed: int = 0
    out_of_window: int = 0
    partial: bool = False

    @property
    def flags(self) -> list[str]:
        out = [f"blank:{k.value}" for k in self.blank_kinds]
        if self.malformed:
            out.append(f"malformed_entries:{self.malformed}")
        if self.partial:
            out.append("partial")
        return out


def ingest(provider: ArtifactProvider, repo_id: str, window: RecencyWindow) -> IngestResult:
    result = IngestResult()
    for kind in ArtifactKind:
        seen = 0
        try:
            for entry in provider.entries(repo_id, kind, window):
                seen += 1
                try:
                    record = record_from_entry(kind, entry)
                except (ValueError, TypeError) as exc:
                    result.malformed += 1
                    logger.warning("%s: skipping malformed %s entry: %s", repo_id, kind.value, exc)
                    continue
                if window.contains(record.created_at):
                    result.records.append(record)
                else:
                    result.out_of_window += 1
        except RateLimitExhausted as exc:
            logger.warning("%s: %s; marking repository partial", repo_id, exc)
            result.partial = True
        if seen == 0:
            result.blank_kinds.append(kind)
    return result


def load_artifacts(provider: ArtifactProvider, repo_id: str, window: RecencyWindow) -> list[ArtifactRecord]:
    return ingest(provider, repo_id, window).records


class _Malformed:
    """Placeholder yielded for an unparseable dump line so it is counted."""


class DumpProvider:
    """Reads ``<root>/<repo_id>/{issues,pulls,commits}.jsonl``."""

    name = "dump"

    def __init__(self, root: str | os.PathLike) -> None:
        self.root = Path(root)

    def entries(self, repo_id: str, kind: ArtifactKind, window: RecencyWindow) -> Iterator:
        path = self.root / repo_id / DUMP_FILES[kind]
        if not path.exists():
            return
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError:
                    logger.warning("%s:%d: invalid JSON", path, lineno)
                    yield _Malformed()

    def repo_metadata(self, repo_id: str) -> dict:
        meta_path = self.root / repo_id / REPO_META_FILE
        meta = json.loads(meta_path.read_text(encoding="utf-8")) if meta_path.exists() else {}
        if "pull_request_count" not in meta:
            pulls = self.root / repo_id / DUMP_FILES[ArtifactKind.PULL_REQUEST]
            count = 0
            if pulls.exists():
                count = sum(1 for line in pulls.open(encoding="utf-8") if line.strip())
            meta["pull_request_count"] = count
        return {"fork": bool(meta.get("fork", False)), "pull_request_count": int(meta["pull_request_count"])}


def write_dump(root: str | os.PathLike, repo_id: str, kind: ArtifactKind, entries: Iterable[dict]) -> Path:
    path = Path(root) / repo_id / DUMP_FILES[kind]
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps(entry, sort_keys=True, ensure_ascii=False) + "\n")
    return path


_REQUEST_LOCK = threading.Lock()


class GitHubProvider:
    """Live GitHub REST provider.

    Requests from all threads go through one lock so the process shares a
    single rate budget. Rate-limited responses are retried with exponential
    backoff, at most ``MAX_ATTEMPTS`` times per request.
    """

    name = "api"
    base_url = "https://api.github.com"

    def __init__(
        self,
        token: str | None = None,
        session=None,
        sleep: Callable[[float], None] = time.sleep,
        backoff: float = 2.0,
    ) -> None:
        if session is None:
            import requests

            session = requests.Session()
        self.session = session
        self.sleep = sleep
        self.backoff = backoff
        token = token or os.environ.get(TOKEN_ENV)
        self.headers = {"Accept": "application/vnd.github+json"}
        if token:
            self.headers["Authorization"] = f"Bearer {token}"

    def _get(self, url: str, params: dict | None = None):
        for attempt in range(MAX_ATTEMPTS):
            with _REQUEST_LOCK:
                response = self.session.get(url, params=params, headers=self.headers, timeout=30)
            status = response.status_code
            if status == 401:
                raise AuthenticationError(f"GitHub rejected credentials for {url}")
            limited = status == 429 or (
                status == 403 and response.headers.get("X-RateLimit-Remaining") == "0"
            )
            if not limited:
                return response
            delay = self.backoff * 2**attempt
            retry_after = response.headers.get("Retry-After")
            if retry_after and retry_after.isdigit():
                delay = max(delay, float(retry_after))
            logger.info("rate limited on %s, retrying in %.1fs", url, delay)
            self.sleep(delay)
        raise RateLimitExhausted(f"rate limit persisted after {MAX_ATTEMPTS} attempts: {url}")

    def _pages(self, url: str, params: dict | None = None) -> Iterator[dict]:
        params = dict(params or {}, per_page=100)
        while url:
            response = self._get(url, params)
            if response.status_code == 404:
                return
            response.raise_for_status()
            payload = response.json()
            if not payload:
                return
            yield from payload
            url = response.links.get("next", {}).get("url")
            params = None

    def _comment_bodies(self, url: str, kind: str) -> list[dict]:
        return [{"body": c.get("body") or "", "kind": kind} for c in self._pages(url)]

    def entries(self, repo_id: str, kind: ArtifactKind, window: RecencyWindow) -> Iterator[dict]:
        repo = f"{self.base_url}/repos/{repo_id}"
        since = window.start.strftime("%Y-%m-%dT%H:%M:%SZ")
        if kind is ArtifactKind.ISSUE:
            for item in self._pages(f"{repo}/issues", {"state": "all", "since": since}):
                if "pull_request" in item:
                    continue
                comments = self._comment_bodies(item["comments_url"], "issue_comment") if item.get("comments") else []
                yield {
                    "number": item["number"],
                    "created_at": item["created_at"],
                    "title": item.get("title"),
                    "body": item.get("body"),
                    "comments": comments,
                }
        elif kind is ArtifactKind.PULL_REQUEST:
            params = {"state": "all", "sort": "created", "direction": "desc"}
            for item in self._pages(f"{repo}/pulls", params):
                if not window.contains(parse_timestamp(item["created_at"])):
                    break
                number = item["number"]
                comments = self._comment_bodies(f"{repo}/issues/{number}/comments", "issue_comment")
                comments += self._comment_bodies(f"{repo}/pulls/{number}/comments", "review_comment")
                yield {
                    "number": number,
                    "created_at": item["created_at"],
                    "title": item.get("title"),
                    "body": item.get("body"),
                    "comments": comments,
                }
        else:
            for item in self._pages(f"{repo}/commits", {"since": since}):
                commit = item.get("commit") or {}
                comments = []
                if commit.get("comment_count"):
                    comments = self._comment_bodies(f"{repo}/commits/{item['sha']}/comments", "commit_comment")
                yield {
                    "sha": item["sha"],
                    "created_at": (commit.get("author") or {}).get("date"),
                    "message": commit.get("message"),
                    "comments": comments,
                }

    def repo_metadata(self, repo_id: str) -> dict:
        repo = f"{self.base_url}/repos/{repo_id}"
        response = self._get(repo)
        response.raise_for_status()
        fork = bool(response.json().get("fork", False))
        pulls = self._get(f"{repo}/pulls", {"state": "all", "per_page": 1})
        pulls.raise_for_status()
        last = pulls.links.get("last", {}).get("url")
        if last:
            from urllib.parse import parse_qs, urlparse

            count = int(parse_qs(urlparse(last).query)["page"][0])
        else:
            count = len(pulls.json())
        return {"fork": fork, "pull_request_count": count}


def capture(provider: ArtifactProvider, repo_id: str, window: RecencyWindow, root: str | os.PathLike) -> None:
    """Write a provider's entries for one repository as an offline dump."""
    for kind in ArtifactKind:
        write_dump(root, repo_id, kind, list(provider.entries(repo_id, kind, window)))
    meta = provider.repo_metadata(repo_id)
    path = Path(root) / repo_id / REPO_META_FILE
    path.write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")
