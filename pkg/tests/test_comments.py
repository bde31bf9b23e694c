import json
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from docmine.comments import CommentKind, UnsupportedLanguageError, extract_comments, lex_comments
from docmine.taxonomy import Language

from conftest import FIXTURES

LEXER = FIXTURES / "lexer"
EXPECTED = json.loads((LEXER / "expected.json").read_text())


def _spans(name, **kw):
    meta = EXPECTED[name]
    return lex_comments((LEXER / name).read_text(), Language(meta["language"]), file=name, **kw)


def test_cpp_trailing_line_comment():
    spans = extract_comments("int x; // counter", Language.CPP)
    assert len(spans) == 1
    assert spans[0].kind is CommentKind.LINE
    assert "counter" in spans[0].text
    assert spans[0].start_line == 1


def test_python_marker_inside_string():
    assert extract_comments('s = "// not a comment"', Language.PYTHON) == []
    assert extract_comments('s = "# not a comment"', Language.PYTHON) == []


def test_java_block_line_and_string_trap():
    src = (
        "/* first\n"
        "   block */\n"
        "class A { // one\n"
        '  String s = "// inside"; // two\n'
        "  /* second */ int x; // three\n"
        "}\n"
    )
    spans = extract_comments(src, Language.JAVA)
    assert [(s.kind, s.start_line) for s in spans] == [
        (CommentKind.BLOCK, 1),
        (CommentKind.LINE, 3),
        (CommentKind.LINE, 4),
        (CommentKind.BLOCK, 5),
        (CommentKind.LINE, 5),
    ]
    assert all("inside" not in s.text for s in spans)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_spans_match_answer_key(name):
    got = [[s.kind.value, s.start_line, s.text] for s in _spans(name).spans]
    assert got == EXPECTED[name]["spans"]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_no_text_from_string_literals(name):
    text = "\n".join(s.text for s in _spans(name).spans)
    assert "TRAP" not in text
    source = (LEXER / name).read_text()
    assert len(re.findall(r"TRAP\d+", source)) >= 5


def test_unterminated_block_warns_and_runs_to_eof():
    result = lex_comments("int a; /* never closed\nstill comment", Language.CSHARP)
    assert [s.text for s in result.spans] == ["never closed\nstill comment"]
    assert len(result.warnings) == 1


def test_unterminated_string_is_not_fatal():
    result = lex_comments('s = "open\n# real comment\n', Language.PYTHON)
    assert [s.text for s in result.spans] == ["real comment"]
    assert result.warnings


def test_shebang_is_not_a_comment():
    assert extract_comments("#!/bin/sh\n# real\n", Language.PYTHON)[0].start_line == 2
    assert [s.text for s in extract_comments("#!/bin/sh\n# real\n", Language.PYTHON)] == ["real"]


def test_docstrings_can_be_disabled():
    spans = _spans("sample.py", include_docstrings=False).spans
    assert all(s.kind is CommentKind.LINE for s in spans)
    expected_lines = [s for s in EXPECTED["sample.py"]["spans"] if s[0] == "line"]
    assert [[s.kind.value, s.start_line, s.text] for s in spans] == expected_lines


def test_expression_triple_string_is_not_docstring():
    src = 'x = 1\n"""not a docstring"""\n'
    assert extract_comments(src, Language.PYTHON) == []


def test_module_docstring_must_be_alone_on_its_statement():
    assert extract_comments('"""a""" + b\n', Language.PYTHON) == []
    assert [s.kind for s in extract_comments('"""a"""\n', Language.PYTHON)] == [CommentKind.DOCSTRING]


def test_cpp_raw_string_and_digit_separator():
    src = 'auto r = R"d(/* x */ )" )d"; int n = 1\'0; // ok\n'
    assert [s.text for s in extract_comments(src, Language.CPP)] == ["ok"]


def test_csharp_interpolation_with_nested_strings():
    src = 'var s = $"{(a ? "//" : "/*")} tail"; // real\n'
    assert [s.text for s in extract_comments(src, Language.CSHARP)] == ["real"]


def test_unsupported_language_is_typed_error():
    with pytest.raises(UnsupportedLanguageError):
        extract_comments("x", "rust")


def test_file_is_recorded_on_spans():
    spans = extract_comments("// a\n", Language.JAVA, file="src/A.java")
    assert spans[0].file == "src/A.java"


source_text = st.text(alphabet=st.sampled_from(list("ab /*#\"'\\\n{}$@R(x)")), max_size=120)


@given(source_text, st.sampled_from(list(Language)))
def test_lexing_is_total_and_deterministic(src, language):
    first = lex_comments(src, language)
    second = lex_comments(src, language)
    assert first.spans == second.spans
    assert all(s.start_line >= 1 for s in first.spans)
    assert [s.start_line for s in first.spans] == sorted(s.start_line for s in first.spans)


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters='"\\\n\r'), max_size=40))
def test_string_contents_never_leak(payload):
    for language, src in [
        (Language.CPP, f'const char* s = "{payload}";\n'),
        (Language.JAVA, f'String s = "{payload}";\n'),
        (Language.CSHARP, f'string s = "{payload}";\n'),
        (Language.PYTHON, f's = "{payload}"\n'),
    ]:
        assert extract_comments(src, language) == []
