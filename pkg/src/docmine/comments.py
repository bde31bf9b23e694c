"""Comment extraction for C++, C#, Java and Python sources.

The lexers are small hand-written state machines. They know just enough
about string, character and number literals to never mistake a comment
marker inside a literal for a real comment; they do not parse.
"""

from __future__ import annotations

import bisect
import inspect
import logging
import re
from dataclasses import dataclass, field
from enum import Enum

from docmine.taxonomy import Language

logger = logging.getLogger(__name__)


class CommentKind(str, Enum):
    LINE = "line"
    BLOCK = "block"
    DOCSTRING = "docstring"


class UnsupportedLanguageError(ValueError):
    pass


@dataclass(frozen=True)
class CommentSpan:
    file: str
    kind: CommentKind
    text: str
    start_line: int

    def to_dict(self) -> dict:
        return {"file": self.file, "kind": self.kind.value, "text": self.text, "start_line": self.start_line}


@dataclass
class LexResult:
    spans: list[CommentSpan] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


_IDENT = re.compile(r"[^\W\d]\w*")
_SPACE = re.compile(r"[ \t\f\v\r]+")
_CPP_RAW_PREFIXES = frozenset({"R", "LR", "uR", "UR", "u8R"})
_PY_STRING_PREFIXES = frozenset({"r", "u", "b", "f", "br", "rb", "fr", "rf"})


def _clean_line(body: str) -> str:
    return body.lstrip("/").strip()


def _clean_block(body: str) -> str:
    body = body.lstrip("*!")
    lines = []
    for line in body.splitlines():
        line = line.strip()
        if line.startswith("*"):
            line = line.lstrip("*").lstrip()
        lines.append(line)
    return "\n".join(lines).strip().rstrip("*").rstrip()


class _Lexer:
    """Shared cursor machinery; subclasses implement ``run``."""

    def __init__(self, source: str, file: str) -> None:
        self.s = source
        self.n = len(source)
        self.file = file
        self.found: list[tuple[int, CommentKind, str]] = []
        self.warnings: list[str] = []
        self._newlines = [m.start() for m in re.finditer("\n", source)]

    def line_of(self, offset: int) -> int:
        return bisect.bisect_left(self._newlines, offset) + 1

    def warn(self, offset: int, message: str) -> None:
        text = f"{self.file or '<source>'}:{self.line_of(offset)}: {message}"
        self.warnings.append(text)
        logger.warning("lex warning %s", text)

    def emit(self, offset: int, kind: CommentKind, text: str) -> None:
        self.found.append((offset, kind, text))

    def result(self) -> LexResult:
        self.found.sort(key=lambda item: item[0])
        spans = [CommentSpan(self.file, kind, text, self.line_of(off)) for off, kind, text in self.found]
        return LexResult(spans, self.warnings)

    def skip_quoted(self, start: int, quote: str, *, multiline: bool = False) -> int:
        """Skip a backslash-escaped literal whose opening quote is at ``start``."""
        s, j = self.s, start + 1
        while j < self.n:
            ch = s[j]
            if ch == "\\":
                j += 2
                continue
            if ch == quote:
                return j + 1
            if ch == "\n" and not multiline:
                self.warn(start, "unterminated literal")
                return j
            j += 1
        self.warn(start, "unterminated literal")
        return self.n

    def skip_number(self, start: int, digit_separator: bool = False) -> int:
        s, j = self.s, start
        while j < self.n:
            ch = s[j]
            if ch.isalnum() or ch in "_.":
                j += 1
            elif ch in "+-" and s[j - 1] in "eEpP" and not s[start:j].lower().startswith("0x"):
                j += 1
            elif ch in "+-" and s[j - 1] in "pP":
                j += 1
            elif digit_separator and ch == "'" and j + 1 < self.n and s[j + 1].isalnum():
                j += 1
            else:
                break
        return j


class _CFamilyLexer(_Lexer):
    def __init__(self, source: str, file: str, language: Language) -> None:
        super().__init__(source, file)
        self.language = language

    def run(self) -> LexResult:
        s, n = self.s, self.n
        i = 0
        while i < n:
            c = s[i]
            if c == "/" and s.startswith("//", i):
                end = s.find("\n", i)
                end = n if end < 0 else end
                self.emit(i, CommentKind.LINE, _clean_line(s[i + 2 : end]))
                i = end
            elif c == "/" and s.startswith("/*", i):
                end = s.find("*/", i + 2)
                if end < 0:
                    self.warn(i, "unterminated block comment")
                    self.emit(i, CommentKind.BLOCK, _clean_block(s[i + 2 :]))
                    i = n
                else:
                    self.emit(i, CommentKind.BLOCK, _clean_block(s[i + 2 : end]))
                    i = end + 2
            else:
                literal_end = self.literal_at(i)
                if literal_end is not None:
                    i = literal_end
                elif c.isdigit():
                    i = self.skip_number(i, digit_separator=self.language is Language.CPP)
                else:
                    m = _IDENT.match(s, i)
                    i = m.end() if m else i + 1
        return self.result()

    def literal_at(self, i: int) -> int | None:
        """End offset of a string/char literal starting at ``i``, else None."""
        s = self.s
        c = s[i]
        lang = self.language
        if c == '"':
            if lang is Language.JAVA and s.startswith('"""', i):
                return self.skip_text_block(i)
            if lang is Language.CSHARP and s.startswith('"""', i):
                return self.skip_raw_quotes(i)
            return self.skip_quoted(i, '"')
        if c == "'":
            return self.skip_quoted(i, "'")
        if lang is Language.CPP:
            m = _IDENT.match(s, i)
            if m and m.group() in _CPP_RAW_PREFIXES and s.startswith('"', m.end()):
                return self.skip_cpp_raw(m.end())
            return None
        if lang is Language.CSHARP and c in "@$":
            j = i
            while j < self.n and s[j] in "@$":
                j += 1
            prefix = s[i:j]
            if j >= self.n or s[j] != '"':
                return None
            if s.startswith('"""', j):
                return self.skip_raw_quotes(j)
            return self.skip_csharp_string(j, verbatim="@" in prefix, interpolated="$" in prefix)
        return None

    def skip_text_block(self, start: int) -> int:
        s, j = self.s, start + 3
        while j < self.n:
            if s[j] == "\\":
                j += 2
                continue
            if s.startswith('"""', j):
                return j + 3
            j += 1
        self.warn(start, "unterminated text block")
        return self.n

    def skip_raw_quotes(self, start: int) -> int:
        s, j = self.s, start
        while j < self.n and s[j] == '"':
            j += 1
        fence = s[start:j]
        end = s.find(fence, j)
        if end < 0:
            self.warn(start, "unterminated raw string")
            return self.n
        end += len(fence)
        while end < self.n and s[end] == '"':
            end += 1
        return end

    def skip_cpp_raw(self, quote: int) -> int:
        s = self.s
        paren = s.find("(", quote + 1)
        newline = s.find("\n", quote + 1)
        if paren < 0 or (0 <= newline < paren) or paren - quote - 1 > 16:
            return self.skip_quoted(quote, '"')
        delim = s[quote + 1 : paren]
        closing = ")" + delim + '"'
        end = s.find(closing, paren + 1)
        if end < 0:
            self.warn(quote, "unterminated raw string")
            return self.n
        return end + len(closing)

    def skip_csharp_string(self, quote: int, *, verbatim: bool, interpolated: bool) -> int:
        s, j = self.s, quote + 1
        while j < self.n:
            ch = s[j]
            if verbatim:
                if ch == '"':
                    if s.startswith('""', j):
                        j += 2
                        continue
                    return j + 1
            else:
                if ch == "\\":
                    j += 2
                    continue
                if ch == '"':
                    return j + 1
                if ch == "\n":
                    self.warn(quote, "unterminated string")
                    return j
            if interpolated and ch == "{":
                if s.startswith("{{", j):
                    j += 2
                    continue
                j = self.skip_interpolation(j + 1)
                continue
            j += 1
        self.warn(quote, "unterminated string")
        return self.n

    def skip_interpolation(self, j: int) -> int:
        depth = 1
        while j < self.n:
            ch = self.s[j]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    return j + 1
            else:
                end = self.literal_at(j)
                if end is not None:
                    j = end
                    continue
            j += 1
        return self.n


class _PythonLexer(_Lexer):
    def __init__(self, source: str, file: str, include_docstrings: bool) -> None:
        super().__init__(source, file)
        self.include_docstrings = include_docstrings
        self.depth = 0
        self._reset_line()
        self.module_start = True
        self.expect_doc = False

    def _reset_line(self) -> None:
        self.line_tokens: list[str] = []
        self.is_header = False
        self.header_colon = False
        self.after_colon = 0
        self.candidate: tuple[int, str] | None = None

    def _token(self, value: str) -> None:
        tokens = self.line_tokens
        if self.candidate is not None and value != ";":
            self.candidate = None
        if not tokens:
            self.is_header = value in ("def", "class")
        elif len(tokens) == 1 and tokens[0] == "async" and value == "def":
            self.is_header = True
        if self.header_colon:
            self.after_colon += 1
        elif self.is_header and value == ":" and self.depth == 0:
            self.header_colon = True
        tokens.append(value)

    def _string_token(self, start: int, end: int, body: str, triple: bool) -> None:
        first = not self.line_tokens
        same_line_doc = self.is_header and self.header_colon and self.after_colon == 0
        self._token("<str>")
        if triple and ((first and (self.module_start or self.expect_doc)) or same_line_doc):
            self.candidate = (start, body)

    def _end_logical_line(self) -> None:
        if not self.line_tokens:
            return
        if self.candidate is not None and self.include_docstrings:
            start, body = self.candidate
            self.emit(start, CommentKind.DOCSTRING, inspect.cleandoc(body))
        self.expect_doc = self.is_header and self.header_colon and self.after_colon == 0
        self.module_start = False
        self._reset_line()

    def run(self) -> LexResult:
        s, n = self.s, self.n
        i = 0
        if s.startswith("#!"):
            end = s.find("\n")
            i = n if end < 0 else end
        while i < n:
            c = s[i]
            if c == "#":
                end = s.find("\n", i)
                end = n if end < 0 else end
                self.emit(i, CommentKind.LINE, s[i + 1 : end].lstrip("#").strip())
                i = end
            elif c == "\n":
                if self.depth == 0:
                    self._end_logical_line()
                i += 1
            elif c == "\\" and i + 1 < n and s[i + 1] in "\r\n":
                i += 3 if s.startswith("\r\n", i + 1) else 2
            elif c in " \t\f\v\r":
                i = _SPACE.match(s, i).end()
            elif c in "\"'":
                i = self.string(i, "")
            elif c.isdigit() or (c == "." and i + 1 < n and s[i + 1].isdigit()):
                i = self.skip_number(i)
                self._token("<num>")
            else:
                m = _IDENT.match(s, i)
                if m:
                    word = m.group()
                    if word.lower() in _PY_STRING_PREFIXES and m.end() < n and s[m.end()] in "\"'":
                        i = self.string(m.end(), word.lower())
                    else:
                        self._token(word)
                        i = m.end()
                else:
                    if c in "([{":
                        self.depth += 1
                    elif c in ")]}":
                        self.depth = max(0, self.depth - 1)
                    self._token(c)
                    i += 1
        self._end_logical_line()
        return self.result()

    def string(self, quote_at: int, prefix: str) -> int:
        end, body, triple = self.scan_string(quote_at, prefix)
        self._string_token(quote_at, end, body, triple)
        return end

    def scan_string(self, quote_at: int, prefix: str) -> tuple[int, str, bool]:
        s, n = self.s, self.n
        q = s[quote_at]
        triple = s.startswith(q * 3, quote_at)
        closing = q * 3 if triple else q
        j = quote_at + len(closing)
        body_start = j
        fstring = "f" in prefix
        while j < n:
            ch = s[j]
            if ch == "\\":
                j += 2
                continue
            if s.startswith(closing, j):
                return j + len(closing), s[body_start:j], triple
            if ch == "\n" and not triple:
                self.warn(quote_at, "unterminated string")
                return j, s[body_start:j], triple
            if fstring and ch == "{":
                if s.startswith("{{", j):
                    j += 2
                    continue
                j = self.skip_replacement_field(j + 1, triple)
                continue
            j += 1
        self.warn(quote_at, "unterminated string")
        return n, s[body_start:], triple

    def skip_replacement_field(self, j: int, triple: bool) -> int:
        s, n = self.s, self.n
        depth = 1
        while j < n:
            ch = s[j]
            if ch == "\n" and not triple:
                return j
            if ch in "\"'":
                j = self.scan_string(j, "")[0]
                continue
            m = _IDENT.match(s, j)
            if m:
                if m.group().lower() in _PY_STRING_PREFIXES and m.end() < n and s[m.end()] in "\"'":
                    j = self.scan_string(m.end(), m.group().lower())[0]
                else:
                    j = m.end()
                continue
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
                if depth == 0:
                    return j + 1
            j += 1
        return n


def lex_comments(
    source: str,
    language: Language,
    *,
    file: str = "",
    include_docstrings: bool = True,
) -> LexResult:
    if not isinstance(language, Language):
        try:
            language = Language(language)
        except ValueError:
            raise UnsupportedLanguageError(f"no comment lexer for {language!r}") from None
    if language is Language.PYTHON:
        return _PythonLexer(source, file, include_docstrings).run()
    return _CFamilyLexer(source, file, language).run()


def extract_comments(
    source: str,
    language: Language,
    *,
    file: str = "",
    include_docstrings: bool = True,
) -> list[CommentSpan]:
    """All comments of ``source`` in document order.

    Python docstrings (triple-quoted strings opening a module, class or
    function body) are reported as ``DOCSTRING`` unless
    ``include_docstrings`` is false. A ``#!`` first line is not a comment.
    """
    return lex_comments(source, language, file=file, include_docstrings=include_docstrings).spans
