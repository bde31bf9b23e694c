"""Documentation mining for Git repositories and their collaboration artifacts."""

from docmine.taxonomy import ArtifactKind, DocType, FileCategory, Language, Source

__version__ = "0.1.0"

__all__ = ["ArtifactKind", "DocType", "FileCategory", "Language", "Source", "__version__"]
