# Copyright 2026 The morphlens Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

morphlens = pytest.importorskip("morphlens")
stats = morphlens.stats

M = "▁"
VOCAB_TEXT = "".join(
    f"{piece}\t{score}\n"
    for piece, score in [
        ("<unk>", 0),
        (M + "walk", -3),
        (M + "talk", -3),
        (M + "the", -2),
        ("er", -2),
        ("ed", -2),
        ("s", -2),
        (M, -4),
        (".", -3),
    ]
)
TEXT = "the walker walked\nthe talker talked .\nwalkers talk\n" * 20


@pytest.fixture
def vocab():
    return morphlens.Vocabulary.parse(VOCAB_TEXT)


def test_vocabulary_and_segmenter(vocab):
    assert len(vocab) == 9
    assert vocab.uses_marker
    assert M + "walk" in vocab
    seg = morphlens.Segmenter(vocab)
    assert seg.pieces("walkers") == [M + "walk", "er", "s"]
    assert seg.surfaces("walkers") == ["walk", "er", "s"]
    greedy = morphlens.Segmenter(vocab, algorithm="greedy")
    assert "".join(greedy.surfaces("talked")) == "talked"


def test_vocabulary_errors():
    with pytest.raises(morphlens.ParseError):
        morphlens.Vocabulary.parse("a\t-1\na\t-2\n")
    with pytest.raises(morphlens.MorphlensError):
        morphlens.Vocabulary.load("/nonexistent/vocab.tsv")


def test_pretokenize_and_counts():
    assert morphlens.pretokenize("Hello, world!") == ["Hello", ",", "world", "!"]
    corpus = morphlens.Corpus.from_text("ab c\né\n")
    counts = morphlens.corpus_counts(corpus)
    assert counts == {"ccc": 5, "cbc": 6, "cwc": 3, "csc": 2}
    assert len(morphlens.sample_lines(corpus, 1, seed=3)) == 1


def test_analyze_metrics_in_range(vocab):
    corpus = morphlens.Corpus.from_text(TEXT)
    m = morphlens.analyze(corpus, vocab, window=20, pretokenize=False)
    assert m["csc"] == 60
    assert m["ctc"] == len(morphlens.tokenize(corpus, vocab, pretokenize=False))
    for key in ("eta", "au", "lr", "mattr", "re", "s"):
        assert 0.0 <= m[key] <= 1.0, key
    assert m["av"] >= 1.0
    assert m["av_min"] <= m["av"]
    again = morphlens.analyze(corpus, vocab, window=20, pretokenize=False)
    assert again == m


def test_bigram_and_unigram_reports(vocab):
    corpus = morphlens.Corpus.from_text(TEXT)
    b = morphlens.bigram_report(corpus, vocab, window=10)
    assert b["types"]
    for t in b["types"]:
        assert t["frequency"] == t["ta_left"] + t["b_left"] == t["ta_right"] + t["b_right"]
    u = morphlens.unigram_report(corpus, vocab, mattr_window=5, alpha=2.0)
    assert u["ctc"] > 0
    assert u["mattr_window"] == 5


def test_unigram_functions():
    assert morphlens.ttr([0, 1, 2]) == 1.0
    assert morphlens.mattr([0, 0, 1, 1], 2) == pytest.approx(2 / 3)
    assert morphlens.renyi_efficiency([9, 1], 2.0) == pytest.approx(-math.log2(0.82), abs=1e-10)


def test_alignment(vocab):
    seg = morphlens.Segmenter(vocab)
    refs = morphlens.parse_refs("walked\twalk|ed\nwalkers\twalk|er|s\nbad\tb|x\n")
    assert len(refs) == 2
    full = morphlens.eval_full(seg, refs)
    assert full["f1"] == 1.0
    stem = morphlens.eval_full(seg, refs, subset="stem-suffix")
    assert stem["ref_total"] == 1
    ms = morphlens.morphscore(seg, [("walked", ["walk", "ed"])])
    assert ms["recall"] == 1.0


def test_stats():
    w = stats.welch_t_test([1, 2, 3], [2, 3, 4], "two-sided")
    assert w["statistic"] == pytest.approx(-1.2247448713915890)
    assert w["df"] == pytest.approx(4.0)
    assert stats.t_quantile(0.975, 4) == pytest.approx(2.7764451051977987, abs=1e-9)
    h = stats.holm_bonferroni([0.01, 0.04, 0.03], 0.05)
    assert h["holm"] == [True, False, False]
    g = stats.gap_reduction_test([4.5, 5.25, 4.75, 5.5], [2.25, 3.0, 2.5, 2.0],
                                 [4.5, 5.25, 4.75, 5.5], [2.25, 3.0, 2.5, 2.0], 0.05)
    assert g["statistic"] == 0.0
    assert g["p_value"] == pytest.approx(0.5)
    r = stats.ols_simple([1, 2, 3, 4], [3, 5, 7, 9])
    assert r["beta1"] == pytest.approx(2.0)
    with pytest.raises(morphlens.MorphlensError):
        stats.welch_t_test([1, 1], [2, 2], "two-sided")
    with pytest.raises(morphlens.MorphlensError):
        stats.welch_t_test([1, 2], [2, 3], "sideways")


def test_run_config(tmp_path):
    (tmp_path / "corpus.txt").write_text(TEXT, encoding="utf-8")
    (tmp_path / "vocab.txt").write_text(VOCAB_TEXT, encoding="utf-8")
    (tmp_path / "run.yaml").write_text(
        "window: 20\npretokenize: false\nlanguages:\n"
        "  - {name: en, corpus: corpus.txt, vocab: vocab.txt, group: demo}\n",
        encoding="utf-8",
    )
    tsv = morphlens.run(tmp_path / "run.yaml", percent=True)
    header, row = tsv.splitlines()[:2]
    assert header.split("\t")[:3] == ["language", "group", "status"]
    assert row.split("\t")[:3] == ["en", "demo", "ok"]
    rows = morphlens.run_rows(tmp_path / "run.yaml")
    assert rows[0]["ok"] and 0.0 <= rows[0]["metrics"]["eta"] <= 1.0
    (tmp_path / "bad.yaml").write_text("windw: 3\n", encoding="utf-8")
    with pytest.raises(morphlens.ConfigError):
        morphlens.run(tmp_path / "bad.yaml")
