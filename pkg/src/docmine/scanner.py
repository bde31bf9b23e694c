"""Repository walking and file classification."""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath

from docmine.taxonomy import FileCategory, Language

logger = logging.getLogger(__name__)

TEXTUAL_EXTENSIONS = frozenset({".txt", ".md"})
TEXTUAL_BASENAMES = ("readme", "license")
IMAGE_EXTENSIONS = frozenset({".png", ".jpg", ".jpeg"})
DIAGRAM_EXTENSIONS = frozenset({".xmi", ".uml"})
SOURCE_EXTENSIONS = {
    ".cpp": Language.CPP,
    ".cs": Language.CSHARP,
    ".py": Language.PYTHON,
    ".java": Language.JAVA,
}

VCS_DIR = ".git"


def _fold(name: str) -> str:
    # upper() first: characters such as the dotless i must fold identically
    # whether or not the caller already upper-cased the path.
    return name.upper().lower()


def _basename(relative_path: str) -> str:
    return PurePosixPath(relative_path.replace("\\", "/")).name


def _extension(basename: str) -> str:
    dot = basename.rfind(".")
    return basename[dot:] if dot >= 0 else ""


def classify_file(relative_path: str) -> FileCategory:
    """Map a path to its file category.

    The final dot-suffix is matched case-insensitively first; only when it
    is not a known extension do ``readme*`` and ``license*`` basenames count
    as textual. Anything unmatched is ``OTHERS``.
    """
    name = _fold(_basename(relative_path))
    ext = _extension(name)
    if ext in TEXTUAL_EXTENSIONS:
        return FileCategory.TEXTUAL
    if ext in IMAGE_EXTENSIONS:
        return FileCategory.IMAGES
    if ext in DIAGRAM_EXTENSIONS:
        return FileCategory.DESIGN_DIAGRAMS
    if ext in SOURCE_EXTENSIONS:
        return FileCategory.SOURCE_CODE
    if name.startswith(TEXTUAL_BASENAMES):
        return FileCategory.TEXTUAL
    return FileCategory.OTHERS


def source_language(relative_path: str) -> Language | None:
    return SOURCE_EXTENSIONS.get(_extension(_fold(_basename(relative_path))))


@dataclass(frozen=True)
class FileRecord:
    relative_path: str
    category: FileCategory
    byte_size: int
    language_hint: Language | None = None

    def __post_init__(self) -> None:
        if not self.relative_path or self.relative_path.startswith("/"):
            raise ValueError(f"not a repo-relative path: {self.relative_path!r}")
        if self.byte_size < 0:
            raise ValueError("byte_size must be non-negative")
        if (self.language_hint is not None) != (self.category is FileCategory.SOURCE_CODE):
            raise ValueError("language_hint is set iff the file is source code")

    def to_dict(self) -> dict:
        return {
            "relative_path": self.relative_path,
            "category": self.category.value,
            "language_hint": self.language_hint.value if self.language_hint else None,
            "byte_size": self.byte_size,
        }

    @classmethod
    def from_dict(cls, data: dict) -> FileRecord:
        hint = data.get("language_hint")
        return cls(
            relative_path=data["relative_path"],
            category=FileCategory(data["category"]),
            byte_size=int(data["byte_size"]),
            language_hint=Language(hint) if hint else None,
        )


@dataclass(frozen=True)
class RepoSnapshot:
    repo_id: str
    primary_language: Language
    files: tuple[FileRecord, ...] = ()
    fork_flag: bool = False
    pull_request_count: int = 0

    def __post_init__(self) -> None:
        paths = [f.relative_path for f in self.files]
        if len(paths) != len(set(paths)):
            raise ValueError(f"duplicate file entries in snapshot of {self.repo_id}")
        if self.pull_request_count < 0:
            raise ValueError("pull_request_count must be non-negative")

    def category_counts(self) -> Counter:
        return Counter(f.category for f in self.files)

    def files_in(self, category: FileCategory) -> list[FileRecord]:
        return [f for f in self.files if f.category is category]

    def to_dict(self) -> dict:
        return {
            "repo_id": self.repo_id,
            "primary_language": self.primary_language.value,
            "fork_flag": self.fork_flag,
            "pull_request_count": self.pull_request_count,
            "files": [f.to_dict() for f in self.files],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> RepoSnapshot:
        return cls(
            repo_id=data["repo_id"],
            primary_language=Language(data["primary_language"]),
            files=tuple(FileRecord.from_dict(f) for f in data["files"]),
            fork_flag=bool(data["fork_flag"]),
            pull_request_count=int(data["pull_request_count"]),
        )


def scan_repo(
    root: str | os.PathLike,
    repo_id: str,
    primary_language: Language,
    *,
    fork_flag: bool = False,
    pull_request_count: int = 0,
) -> RepoSnapshot:
    """Classify every regular file under ``root``.

    ``.git`` is skipped, hidden files are kept, symlinks are neither
    followed nor recorded. Files are sorted by path so repeated scans agree.
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"repository root is not a directory: {root}")
    try:
        os.listdir(root)
    except OSError as exc:
        raise OSError(f"cannot read repository root {root}: {exc}") from exc

    records = []

    def onerror(exc: OSError) -> None:
        logger.warning("skipping unreadable directory %s: %s", exc.filename, exc.strerror)

    for dirpath, dirnames, filenames in os.walk(root, onerror=onerror, followlinks=False):
        dirnames[:] = sorted(d for d in dirnames if d != VCS_DIR)
        for name in filenames:
            full = Path(dirpath) / name
            if full.is_symlink() or not full.is_file():
                continue
            rel = full.relative_to(root).as_posix()
            category = classify_file(rel)
            if os.access(full, os.R_OK):
                size = full.stat().st_size
            else:
                logger.warning("unreadable file %s recorded with size 0", full)
                size = 0
            hint = source_language(rel) if category is FileCategory.SOURCE_CODE else None
            records.append(FileRecord(rel, category, size, hint))

    records.sort(key=lambda r: r.relative_path)
    return RepoSnapshot(
        repo_id=repo_id,
        primary_language=primary_language,
        files=tuple(records),
        fork_flag=fork_flag,
        pull_request_count=pull_request_count,
    )


def eligible_repo(snapshot: RepoSnapshot) -> bool:
    """Forks and repositories without pull requests are excluded."""
    return not snapshot.fork_flag and snapshot.pull_request_count > 0


def exclusion_reason(snapshot: RepoSnapshot) -> str | None:
    if snapshot.fork_flag:
        return "fork"
    if snapshot.pull_request_count <= 0:
        return "zero_pull_requests"
    return None


def read_text(path: Path) -> str:
    return path.read_bytes().decode("utf-8", errors="replace")


def collect_textual_documents(snapshot: RepoSnapshot, root: str | os.PathLike) -> list[str]:
    root = Path(root)
    documents = []
    for record in snapshot.files_in(FileCategory.TEXTUAL):
        try:
            documents.append(read_text(root / record.relative_path))
        except OSError as exc:
            logger.warning("textual file %s vanished or is unreadable: %s", record.relative_path, exc)
    return documents
