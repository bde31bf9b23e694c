"""Fixed enumerations shared across the pipeline."""

from __future__ import annotations

from enum import Enum


class FileCategory(str, Enum):
    TEXTUAL = "textual"
    IMAGES = "images"
    DESIGN_DIAGRAMS = "design_diagrams"
    SOURCE_CODE = "source_code"
    OTHERS = "others"


class Language(str, Enum):
    CPP = "cpp"
    CSHARP = "csharp"
    JAVA = "java"
    PYTHON = "python"

    @classmethod
    def parse(cls, value: str) -> Language:
        key = value.strip().lower()
        aliases = {"c++": "cpp", "c#": "csharp", "cs": "csharp", "py": "python"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown language {value!r}") from None


class ArtifactKind(str, Enum):
    ISSUE = "issue"
    PULL_REQUEST = "pull_request"
    COMMIT = "commit"


class Source(str, Enum):
    """A documentation source; member order is the report order."""

    SOURCE_CODE_COMMENTS = "source_code_comments"
    TEXTUAL_DOCS = "textual_docs"
    COMMITS = "commits"
    ISSUES = "issues"
    PULL_REQUESTS = "pull_requests"


ARTIFACT_SOURCE = {
    ArtifactKind.ISSUE: Source.ISSUES,
    ArtifactKind.PULL_REQUEST: Source.PULL_REQUESTS,
    ArtifactKind.COMMIT: Source.COMMITS,
}


class DocType(str, Enum):
    """Documentation types the automated classifier can assign.

    Architecture-related documentation is intentionally missing: no keyword
    set for it exists, so topics can never be labelled with it.
    """

    API_RELATED = "api_related"
    FILE_RELATED = "file_related"
    PROJECT_RELATED = "project_related"
    LICENSE_RELATED = "license_related"
    ERROR_RELATED = "error_related"
    OTHERS = "others"


# Lexicon categories, in argmax tie-break order.
NAMED_TYPES = (
    DocType.API_RELATED,
    DocType.FILE_RELATED,
    DocType.PROJECT_RELATED,
    DocType.LICENSE_RELATED,
    DocType.ERROR_RELATED,
)
