// Copyright 2026 The morphlens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "morphlens/report.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "morphlens/error.h"
#include "morphlens/random.h"
#include "test_util.h"

namespace morphlens {
namespace {

using testing::TempFile;

std::string synthetic_corpus(std::uint64_t seed, std::size_t lines) {
  static const char* stems[] = {"walk", "talk", "jump", "look", "play", "work", "call", "turn"};
  static const char* suffixes[] = {"", "s", "ed", "ing", "er"};
  Rng rng(seed);
  std::string text;
  for (std::size_t i = 0; i < lines; ++i) {
    const auto words = 3 + rng.index(6);
    for (std::uint64_t w = 0; w < words; ++w) {
      if (w) text += ' ';
      text += stems[rng.index(8)];
      text += suffixes[rng.index(5)];
    }
    text += rng.index(4) == 0 ? " .\n" : "\n";
  }
  return text;
}

const char* kVocab =
    "<unk>\t0\n\xE2\x96\x81walk\t-3\n\xE2\x96\x81talk\t-3\n\xE2\x96\x81jump\t-3\n\xE2\x96\x81look\t-3\n"
    "\xE2\x96\x81play\t-3\n\xE2\x96\x81work\t-3\n\xE2\x96\x81" "call\t-3\n\xE2\x96\x81turn\t-3\n"
    "s\t-2\ned\t-2\ning\t-2\ner\t-2\n\xE2\x96\x81\t-4\n.\t-3\n";

struct Fixture {
  TempFile corpus_a{synthetic_corpus(1, 400)};
  TempFile corpus_b{synthetic_corpus(2, 400)};
  TempFile vocab{kVocab, ".vocab"};

  std::string config(const std::string& extra = "") const {
    return extra + "window: 50\nmattr_window: 100\npretokenize: false\nlanguages:\n"
                   "  - {name: aa, corpus: " + corpus_a.path().string() + ", vocab: " + vocab.path().string() +
           ", group: x}\n"
           "  - {name: bb, corpus: " + corpus_b.path().string() + ", vocab: " + vocab.path().string() + "}\n";
  }
};

TEST(Config, ParsesAllKeys) {
  const auto c = RunConfig::parse(
      "window: 64\nstride: 4\nfull_windows_only: true\nlifetime_eta: true\nmattr_window: 10\n"
      "alpha: 2\npretokenize: false\npre_segmented: true\nalgorithm: greedy\nformat: json\n"
      "percent: true\nsort_by: -av\nworkers: 3\nlanguages:\n  - name: en\n    corpus: c.txt\n"
      "    vocab: v.txt\n    group: fusional\n",
      "/base");
  EXPECT_EQ(c.analysis.window.window, 64u);
  EXPECT_EQ(c.analysis.window.stride, 4u);
  EXPECT_TRUE(c.analysis.window.full_windows_only);
  EXPECT_TRUE(c.analysis.window.lifetime_eta);
  EXPECT_EQ(c.analysis.unigram.mattr_window, 10u);
  EXPECT_EQ(c.analysis.unigram.alpha, 2.0);
  EXPECT_FALSE(c.analysis.tokenize.pretokenized);
  EXPECT_TRUE(c.analysis.tokenize.pre_segmented);
  EXPECT_EQ(c.analysis.algorithm, SegmentAlgorithm::Greedy);
  EXPECT_EQ(c.format, OutputFormat::Json);
  EXPECT_TRUE(c.percent);
  EXPECT_EQ(c.sort_by, "-av");
  EXPECT_EQ(c.workers, 3u);
  ASSERT_EQ(c.languages.size(), 1u);
  EXPECT_EQ(c.languages[0].corpus, std::filesystem::path("/base/c.txt"));
  EXPECT_EQ(c.languages[0].group, "fusional");
}

TEST(Config, Errors) {
  EXPECT_THROW(RunConfig::parse("windw: 3\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("window: [1\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("window: abc\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("- 1\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("languages:\n  - {name: x}\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("languages:\n  - {name: x, corpus: a, vocab: b, lang: c}\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("format: xml\n"), ConfigError);
  try {
    RunConfig::parse("window: 3\n\nbogus: 1\n", {}, "run.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("run.yaml:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RunConfig::load("/nonexistent/run.yaml"), ConfigError);
}

TEST(Config, Validate) {
  Fixture f;
  auto c = RunConfig::parse(f.config());
  EXPECT_NO_THROW(c.validate());
  c.languages[0].corpus = "/nonexistent/corpus.txt";
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(RunConfig::parse(f.config("window: 0\n")), ConfigError);
  c = RunConfig::parse(f.config("sort_by: nope\n"));
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(RunConfig().validate(), ConfigError);
}

TEST(Run, SingleLanguagePopulatesColumns) {
  Fixture f;
  auto c = RunConfig::parse(f.config());
  c.languages.resize(1);
  const auto r = run(c);
  ASSERT_EQ(r.rows.size(), 1u);
  ASSERT_TRUE(r.rows[0].ok) << r.rows[0].error;
  const auto& m = r.rows[0].metrics;
  EXPECT_GT(m.ctc, 0u);
  EXPECT_GT(m.ccc, 0u);
  EXPECT_EQ(m.csc, 400u);
  EXPECT_GT(m.av, 1.0);
  EXPECT_GE(m.lr, 0.0);
  EXPECT_LE(m.lr, 1.0);
  for (double v : {m.eta, m.au, m.mattr, m.re, m.s, m.eta_min, m.au_min}) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_GT(m.mtl, 1.0);
  EXPECT_GT(m.mwl, 3.0);
  EXPECT_LE(m.av_min, m.av);
  EXPECT_FALSE(r.failed());
}

TEST(Run, IdenticalEntriesGiveIdenticalRows) {
  Fixture f;
  auto c = RunConfig::parse(f.config());
  c.languages[1] = c.languages[0];
  c.languages[1].name = "copy";
  c.languages[1].group = "other label";
  const auto r = run(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].metrics, r.rows[1].metrics);
}

TEST(Run, GroupLabelsDoNotAffectNumbers) {
  Fixture f;
  auto with = RunConfig::parse(f.config());
  auto without = with;
  for (auto& l : without.languages) l.group.clear();
  const auto a = run(with), b = run(without);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].metrics, b.rows[i].metrics);
}

TEST(Run, SortedByEta) {
  Fixture f;
  auto c = RunConfig::parse(f.config());
  TempFile third(synthetic_corpus(3, 50));
  c.languages.push_back({"cc", third.path(), f.vocab.path(), ""});
  auto r = run(c);
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_LE(r.rows[i - 1].metrics.eta, r.rows[i].metrics.eta);
  sort_rows(r, "-eta");
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_GE(r.rows[i - 1].metrics.eta, r.rows[i].metrics.eta);
  EXPECT_THROW(sort_rows(r, "bogus"), ConfigError);
}

TEST(Run, FailedRowIsIsolated) {
  Fixture f;
  TempFile bad_vocab("piece without score\n", ".vocab");
  auto c = RunConfig::parse(f.config());
  c.languages[0].vocab = bad_vocab.path();
  const auto r = run(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.failed());
  EXPECT_TRUE(r.rows[0].ok);
  EXPECT_EQ(r.rows[0].language, "bb");
  EXPECT_FALSE(r.rows[1].ok);
  EXPECT_FALSE(r.rows[1].error.empty());
}

TEST(Run, ReproducibleAcrossWorkerCounts) {
  Fixture f;
  auto c = RunConfig::parse(f.config());
  c.workers = 1;
  const auto one = emit(run(c), OutputFormat::Tsv, false);
  c.workers = 4;
  EXPECT_EQ(emit(run(c), OutputFormat::Tsv, false), one);
  EXPECT_EQ(emit(run(c), OutputFormat::Tsv, false), one);
}

ComparisonReport one_row(double eta) {
  ComparisonReport r;
  ReportRow row;
  row.language = "en";
  row.group = "g";
  row.metrics.eta = eta;
  row.metrics.av = 2.125;
  row.metrics.ctc = 12345;
  r.rows.push_back(row);
  return r;
}

std::string field(const std::string& table, const std::string& column, char sep) {
  std::istringstream in(table);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  auto split = [sep](const std::string& s) {
    std::vector<std::string> out(1);
    for (char ch : s) {
      if (ch == sep) {
        out.emplace_back();
      } else {
        out.back() += ch;
      }
    }
    return out;
  };
  const auto h = split(header), v = split(row);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] == column) return v.at(i);
  }
  return "<missing>";
}

TEST(Emit, PercentScalesTableSet) {
  const auto r = one_row(0.1592);
  const auto pct = emit(r, OutputFormat::Tsv, true);
  EXPECT_EQ(field(pct, "eta", '\t'), "15.92");
  EXPECT_EQ(field(pct, "av", '\t'), "2.12");
  EXPECT_EQ(field(pct, "ctc", '\t'), "12345");
  const auto plain = emit(r, OutputFormat::Tsv, false);
  EXPECT_EQ(field(plain, "eta", '\t'), "0.1592");
  EXPECT_EQ(field(plain, "av", '\t'), "2.1250");
  EXPECT_EQ(field(plain, "status", '\t'), "ok");
  EXPECT_EQ(field(emit(r, OutputFormat::Csv, true), "eta", ','), "15.92");
}

TEST(Emit, CsvQuotingAndTsvSanitising) {
  auto r = one_row(0.5);
  r.rows[0].group = "a,b";
  r.rows[0].ok = false;
  r.rows[0].error = "bad\tthing\nhere";
  EXPECT_NE(emit(r, OutputFormat::Csv, false).find("\"a,b\""), std::string::npos);
  const auto tsv = emit(r, OutputFormat::Tsv, false);
  EXPECT_NE(tsv.find("bad thing here"), std::string::npos);
}

TEST(Emit, JsonRoundTrips) {
  Fixture f;
  const auto r = run(RunConfig::parse(f.config()));
  const auto json = emit(r, OutputFormat::Json, true);
  EXPECT_EQ(report_from_json(json), r);
  EXPECT_EQ(report_from_json(emit(one_row(1.0 / 3.0), OutputFormat::Json, false)), one_row(1.0 / 3.0));
  EXPECT_THROW(report_from_json("{"), Error);
}

TEST(Workers, EnvironmentOverride) {
  EXPECT_EQ(resolve_workers(3), 3u);
  ::setenv("MORPHLENS_WORKERS", "2", 1);
  EXPECT_EQ(resolve_workers(0), 2u);
  ::setenv("MORPHLENS_WORKERS", "zero", 1);
  EXPECT_THROW(resolve_workers(0), ConfigError);
  ::unsetenv("MORPHLENS_WORKERS");
  EXPECT_GE(resolve_workers(0), 1u);
}

TEST(Analyze, PretokenizedAndRawModesShareWordMetrics) {
  const auto corpus = Corpus::from_text(synthetic_corpus(5, 100));
  const auto vocab = Vocabulary::parse(kVocab);
  AnalysisOptions raw;
  raw.tokenize.pretokenized = false;
  const auto a = analyze(corpus, vocab), b = analyze(corpus, vocab, raw);
  EXPECT_EQ(a.cwc, b.cwc);
  EXPECT_EQ(a.mwl, b.mwl);
  EXPECT_GT(a.cwc, 0u);
}

}  // namespace
}  // namespace morphlens
