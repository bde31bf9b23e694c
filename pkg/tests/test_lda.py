import json
import logging
import math

import numpy as np
import pytest

from docmine import lda
from docmine.lda import (
    LdaConfig,
    LdaModel,
    coherence,
    load_model,
    save_model,
    select_topic_count,
    top_keywords,
    topic_coherences,
    train_lda,
    umass_pairs,
)
from docmine.taxonomy import Source
from docmine.text import Corpus, EmptyCorpusError, TokenizedDocument, build_corpus

from conftest import planted_corpus, purity

FAST = LdaConfig(iterations=200, burn_in=50, seed=7)


def test_planted_two_blocks_separate():
    corpus, blocks = planted_corpus(2, 20)
    model = train_lda(corpus, 2, LdaConfig(seed=3))
    summaries = top_keywords(model, 10)
    assert purity(summaries, blocks) == 1.0
    assert {frozenset(s.tokens) for s in summaries} == {frozenset(b) for b in blocks}


def test_single_token_document():
    corpus = build_corpus([TokenizedDocument(Source.COMMITS, "o/r", ("fix",))])
    model = train_lda(corpus, 2, FAST)
    assert model.topic_word_counts.sum() == 1
    assert model.doc_topic_counts.sum() == 1
    assert model.topic_word_counts[:, 0].sum() == 1


def test_k_above_documents_warns(caplog):
    corpus = build_corpus([TokenizedDocument(Source.COMMITS, "o/r", ("fix", "bug"))])
    with caplog.at_level(logging.WARNING, logger="docmine.lda"):
        train_lda(corpus, 3, FAST)
    assert "exceeds" in caplog.text


def test_invalid_inputs():
    corpus, _ = planted_corpus(2, 2)
    for k in (1, 101):
        with pytest.raises(ValueError):
            train_lda(corpus, k, FAST)
    with pytest.raises(EmptyCorpusError):
        train_lda(Corpus((), [], []), 2, FAST)
    with pytest.raises(ValueError):
        LdaConfig(burn_in=1000)
    with pytest.raises(ValueError):
        LdaConfig(alpha=0)


def test_default_hyperparameters():
    config = LdaConfig()
    assert (config.beta, config.iterations, config.burn_in) == (0.01, 1000, 200)
    assert config.alpha_for(5) == 10.0


def test_same_seed_is_bit_identical():
    corpus, _ = planted_corpus(2, 20)
    a = train_lda(corpus, 2, FAST)
    b = train_lda(corpus, 2, FAST)
    assert np.array_equal(a.topic_word_counts, b.topic_word_counts)
    assert np.array_equal(a.doc_topic_counts, b.doc_topic_counts)
    c = train_lda(corpus, 2, LdaConfig(iterations=200, burn_in=50, seed=8))
    assert not np.array_equal(a.doc_topic_counts, c.doc_topic_counts)


def test_compiled_kernel_matches_reference():
    corpus, _ = planted_corpus(3, 6)
    config = LdaConfig(iterations=30, burn_in=0, seed=11)
    fast = train_lda(corpus, 4, config)
    slow = train_lda(corpus, 4, config, kernel=lda._sweep_py)
    assert np.array_equal(fast.topic_word_counts, slow.topic_word_counts)
    assert np.array_equal(fast.doc_topic_counts, slow.doc_topic_counts)


def test_counts_conserved_after_every_sweep():
    corpus, _ = planted_corpus(3, 5)
    lengths = np.array([sum(bag.values()) for bag in corpus.docs])
    seen = []

    def check(it, ndk, nkw):
        assert np.array_equal(ndk.sum(axis=1), lengths)
        assert nkw.sum() == lengths.sum()
        assert (ndk >= 0).all() and (nkw >= 0).all()
        per_word = np.zeros(len(corpus.vocabulary), dtype=np.int64)
        for bag in corpus.docs:
            for w, c in bag.items():
                per_word[w] += c
        assert np.array_equal(nkw.sum(axis=0), per_word)
        seen.append(it)

    train_lda(corpus, 3, LdaConfig(iterations=25, burn_in=0), on_sweep=check)
    assert seen == list(range(25))


def test_average_samples_keeps_totals():
    corpus, _ = planted_corpus(2, 5)
    model = train_lda(corpus, 2, LdaConfig(iterations=40, burn_in=10, average_samples=True))
    assert model.doc_topic_counts.dtype == np.float64
    assert model.doc_topic_counts.sum() == pytest.approx(corpus.num_tokens)
    assert model.topic_word_counts.sum() == pytest.approx(corpus.num_tokens)


def test_model_json_round_trip(tmp_path):
    corpus, _ = planted_corpus(2, 4)
    model = train_lda(corpus, 2, FAST)
    save_model(model, tmp_path / "m.json")
    again = load_model(tmp_path / "m.json")
    assert again.k == 2 and again.vocabulary == model.vocabulary and again.config == model.config
    assert np.array_equal(again.topic_word_counts, model.topic_word_counts)
    data = json.loads((tmp_path / "m.json").read_text())
    data["vocabulary"][0] = "tampered"
    with pytest.raises(ValueError):
        LdaModel.from_dict(data)


def test_top_keywords_sizes(caplog):
    corpus, _ = planted_corpus(2, 4, words_per_block=3)
    model = train_lda(corpus, 2, FAST)
    assert all(len(s.keywords) == 1 for s in top_keywords(model, 1))
    with caplog.at_level(logging.WARNING, logger="docmine.lda"):
        summaries = top_keywords(model, 50)
    assert all(len(s.keywords) == 6 for s in summaries)
    assert "vocabulary" in caplog.text
    for s in summaries:
        weights = [w for _, w in s.keywords]
        assert weights == sorted(weights, reverse=True)
        assert len(set(s.tokens)) == len(s.tokens)


def test_top_keywords_ties_are_lexicographic():
    model = LdaModel(2, np.array([[1, 1, 1], [0, 2, 2]]), np.array([[3, 4]]), LdaConfig(alpha=1.0), ("zeta", "beta", "alpha"))
    assert top_keywords(model, 3)[0].tokens == ["alpha", "beta", "zeta"]
    assert top_keywords(model, 3)[1].tokens == ["alpha", "beta", "zeta"]


# coherence ---------------------------------------------------------------------------------


def _three_doc_fixture(copies=1):
    docs = [("apple", "banana"), ("apple", "cherry"), ("apple", "banana", "cherry")] * copies
    corpus = build_corpus(TokenizedDocument(Source.ISSUES, "o/r", d) for d in docs)
    # topic 0 ranks apple > banana > cherry, topic 1 ranks cherry > banana > apple
    model = LdaModel(2, np.array([[9, 5, 1], [1, 5, 9]]), np.zeros((len(docs), 2)), LdaConfig(alpha=1.0), corpus.vocabulary)
    return corpus, model


def test_cooccurring_pair_is_positive():
    d = 4
    sets = {0: frozenset(range(d)), 1: frozenset(range(d))}
    assert umass_pairs([0, 1], sets) == pytest.approx(math.log((d + 1) / d))


def test_disjoint_pair_is_nonpositive():
    sets = {0: frozenset({0, 1}), 1: frozenset({2, 3, 4})}
    assert umass_pairs([0, 1], sets) == pytest.approx(math.log(1 / 3))


def test_hand_computed_three_doc_coherence():
    corpus, model = _three_doc_fixture()
    # D(apple)=3, D(banana)=2, D(cherry)=2, D(a,b)=2, D(a,c)=2, D(b,c)=1
    assert topic_coherences(model, corpus, 3) == pytest.approx([2 * math.log(1.5), 0.0])
    assert coherence(model, corpus, 3) == pytest.approx(math.log(1.5))
    assert coherence(model, corpus, 2) == pytest.approx((math.log(1.5) + 0.0) / 2)


def test_duplicating_documents_shifts_each_pair_analytically():
    corpus, model = _three_doc_fixture()
    twice, model2 = _three_doc_fixture(copies=2)
    base = topic_coherences(model, corpus, 3)
    doubled = topic_coherences(model2, twice, 3)
    # per pair (co-occurrence c, denominator d): log((2c+1)/(2d)) - log((c+1)/d)
    shift = lambda c, d: math.log((2 * c + 1) / (2 * d)) - math.log((c + 1) / d)
    assert doubled[0] - base[0] == pytest.approx(shift(2, 2) + shift(2, 2) + shift(1, 2))
    assert doubled[1] - base[1] == pytest.approx(shift(1, 2) + shift(2, 3) + shift(2, 3))
    assert doubled == pytest.approx([2 * math.log(1.25) + math.log(0.75), math.log(0.75) + 2 * math.log(5 / 6)])


def test_coherence_rejects_small_top_n():
    corpus, model = _three_doc_fixture()
    with pytest.raises(ValueError):
        coherence(model, corpus, 1)


def test_single_document_sweep_picks_k_min():
    corpus = build_corpus([TokenizedDocument(Source.COMMITS, "o/r", ("merge", "branch", "release", "merge"))])
    k_star, scores = select_topic_count(corpus, 2, 6, LdaConfig(iterations=20, burn_in=5))
    assert k_star == 2
    assert sorted(scores) == [2, 3, 4, 5, 6]


def test_best_of_prefers_smaller_k_on_ties():
    assert lda.best_of([(2, -1.0, None), (3, -0.5, None), (4, -0.5, None)])[0] == 3
