import random
from pathlib import Path

import hypothesis
import pytest

from docmine.taxonomy import Source
from docmine.text import TokenizedDocument, build_corpus

hypothesis.settings.register_profile("ci", max_examples=300, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def corpus_dir():
    return CORPUS


def planted_corpus(blocks, docs_per_block, words_per_block=10, doc_len=20, seed=1):
    """Documents that each draw only from one of ``blocks`` disjoint vocabularies."""
    rng = random.Random(seed)
    vocab = [[f"b{b}w{i}" for i in range(words_per_block)] for b in range(blocks)]
    docs = []
    for b in range(blocks):
        for _ in range(docs_per_block):
            docs.append(TokenizedDocument(Source.ISSUES, "o/r", tuple(rng.choice(vocab[b]) for _ in range(doc_len))))
    rng.shuffle(docs)
    return build_corpus(docs), [set(v) for v in vocab]


def purity(summaries, blocks):
    """Fraction of top keywords that fall in their topic's dominant block."""
    hits = sum(max(len(set(s.tokens) & b) for b in blocks) for s in summaries)
    return hits / sum(len(s.tokens) for s in summaries)


# acceptance criteria report -----------------------------------------------------------------

_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _criteria[number] = (title, "FAIL" if call.excinfo is not None else "PASS", detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, detail = _criteria[number]
        line = f"{status} criterion {number}: {title}"
        terminalreporter.write_line(line + (f" [{detail}]" if detail else ""))
