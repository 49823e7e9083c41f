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

// Acceptance checks. `acceptance N` runs criterion N and prints one
// "[PASS]" or "[FAIL]" line; without arguments every criterion runs.
// Exit status: 0 pass, 1 fail, 77 skipped.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "morphlens/bigram.h"
#include "morphlens/corpus.h"
#include "morphlens/morph_eval.h"
#include "morphlens/random.h"
#include "morphlens/report.h"
#include "morphlens/stats.h"
#include "morphlens/tokenizer.h"
#include "oracles.h"

namespace {

using namespace morphlens;
using Clock = std::chrono::steady_clock;

constexpr int kSkip = 77;

struct Outcome {
  int status = 0;  // 0 pass, 1 fail, kSkip
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  Outcome outcome(std::string summary) const {
    if (failures_.empty()) return {0, std::move(summary)};
    std::string d = summary;
    for (const auto& f : failures_) d += "; " + f;
    return {1, d};
  }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double round_to(double v, int decimals) {
  const double f = std::pow(10.0, decimals);
  return std::round(v * f) / f;
}

// 1: segmentation table for "gathered" and "arabaları".
Outcome criterion_1() {
  const auto t0 = Clock::now();
  const std::string araba = "araba" "lar" "\xC4\xB1";
  const std::string i = "\xC4\xB1";
  struct Row {
    std::string word;
    std::vector<std::string> refs;
    std::vector<std::string> split;
    double ms;
    double f1;
  };
  const std::vector<Row> rows = {
      {"gathered", {"gather", "ed"}, {"gather", "ed"}, 1, 1.0},
      {"gathered", {"gather", "ed"}, {"gathere", "d"}, 0, 0.0},
      {"gathered", {"gather", "ed"}, {"g", "a", "t", "h", "e", "r", "e", "d"}, 1, 0.25},
      {araba, {"araba", "lar", i}, {"araba", "lar", i}, 1, 1.0},
      {araba, {"araba", "lar", i}, {"araba", "lar" + i}, 1, 2.0 / 3.0},
      {araba, {"araba", "lar", i}, {"arabalar", i}, 0, 2.0 / 3.0},
  };
  const auto vocab = Vocabulary::from_pieces({{"x", -1}}, MarkerMode::Off);
  Check c;
  std::string ms_list, f1_list;
  for (const auto& r : rows) {
    const auto ref = *make_ref(r.word, r.refs);
    const WordSegmenter seg = [&](const std::string&) { return r.split; };
    const auto full = eval_full(seg, {ref});
    // MorphScore: the stem-suffix boundary only.
    auto stem = ref;
    stem.boundaries = {*ref.boundaries.begin()};
    const auto ms = morphscore(seg, {stem}, vocab, MorphScoreMode::ExcludeVocab);
    ms_list += fmt(ms.recall, 0) + ",";
    f1_list += fmt(full.f1, 3) + ",";
    c.expect(ms.recall == r.ms, "MS mismatch for " + r.word);
    c.expect(std::abs(full.f1 - r.f1) < 1e-12, "F1 mismatch for " + r.word);
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 1.0, "runtime " + fmt(elapsed, 3) + " s");
  return c.outcome("MS={" + ms_list.substr(0, ms_list.size() - 1) + "} F1={" +
                   f1_list.substr(0, f1_list.size() - 1) +
                   "} (araba rows: boundary-set F1 0.667)");
}

// 2: outlier sensitivity of mean and correlation.
Outcome criterion_2() {
  using stats::Sample;
  Check c;
  const std::map<double, double> means = {{5, 3}, {140, 30}, {1490, 300}};
  for (const auto& [k, m] : means) {
    const Sample s({1, 2, 3, 4, k});
    c.expect(round_to(stats::mean(s), 2) == m, "mean for k=" + fmt(k, 0));
    c.expect(stats::median(s) == 3.0, "median for k=" + fmt(k, 0));
  }
  const std::map<double, double> corr = {{5, 1.00}, {10, 0.89}, {20, 0.80}, {100, 0.72}};
  std::string got;
  for (const auto& [k, r] : corr) {
    const double v = stats::correlation(Sample({1, 2, 3, 4, k}), Sample({10, 20, 30, 40, 50}));
    got += fmt(v, 2) + " ";
    c.expect(std::abs(round_to(v, 2) - r) < 1e-9, "correlation for k=" + fmt(k, 0));
  }
  return c.outcome("means 3/30/300, median 3, r = " + got);
}

// 3: duplicated measurements.
Outcome criterion_3() {
  const auto t0 = Clock::now();
  Check c;
  Rng rng(2026);
  double worst = 0.0;
  int violations = 0, compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(2 + rng.index(40)), b(2 + rng.index(40));
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal() * 1.5 + 0.2;
    const stats::Sample sa(a), sb(b);
    const std::size_t k = 2 + rng.index(5);
    const auto e = stats::duplication_effect(sa, sb, k);
    const double n = static_cast<double>(a.size());
    const double expected = (n - 1) / (n - 1.0 / static_cast<double>(k));
    worst = std::max(worst, std::abs(e.variance_factor1 - expected));
    if (e.original.statistic != 0.0) {
      ++compared;
      violations += e.duplicated.p_value > e.original.p_value;
    }
  }
  c.expect(worst <= 1e-12, "variance factor error " + std::to_string(worst));
  c.expect(violations == 0, std::to_string(violations) + " duplicated p-values above the original");

  // Seeded N(1, 1) vs N(1.4, 1.05^2), n = 25, tripled, one-sided at 2.5%.
  int flips = 0, plain_insignificant = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto pair = stats::normal_pair(seed, 25, 1.0, 1.0, 1.4, 1.05);
    const auto e = stats::duplication_effect(pair.first, pair.second, 3, stats::Alternative::Less, 0.025);
    if (!*e.original.reject) {
      ++plain_insignificant;
      flips += *e.duplicated.reject;
    }
  }
  const double rate = flips / 1000.0;
  c.expect(rate >= 0.60, "flip rate " + fmt(rate, 3) + " < 0.60 (" + std::to_string(flips) + " of 1000 seeds; " +
                             fmt(static_cast<double>(flips) / plain_insignificant, 3) +
                             " among plain-insignificant seeds)");
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 10.0, "runtime " + fmt(elapsed, 2) + " s");
  return c.outcome("variance factor max error " + std::to_string(worst) + ", p lowered in " +
                   std::to_string(compared - violations) + "/" + std::to_string(compared) + ", flip rate " +
                   fmt(rate, 3));
}

// 4: regression on a deterministic relation.
Outcome criterion_4() {
  const auto t0 = Clock::now();
  const auto d = stats::squared_uniform(2026, 20000, -0.96, 1.04);
  const auto r = stats::ols_simple(d.first, d.second);
  Check c;
  c.expect(r.adj_r2 >= 0.012 && r.adj_r2 <= 0.032, "adj R2 out of [0.012, 0.032]");
  c.expect(r.t1 > 15.0, "slope t <= 15");
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 5.0, "runtime " + fmt(elapsed, 2) + " s");
  return c.outcome("adj R2 = " + fmt(r.adj_r2) + ", beta1 = " + fmt(r.beta1) + ", t(" + fmt(r.df, 0) +
                   ") = " + fmt(r.t1, 3));
}

// 5: streaming window statistics against batch recomputation.
Outcome criterion_5() {
  Check c;
  Rng rng(5);
  double worst = 0.0;
  std::uint64_t identity_failures = 0, au_failures = 0, windows_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t types = 1 + rng.index(12);
    WindowConfig config;
    config.window = 16;
    BigramTables t(types, config);
    std::vector<std::vector<PieceId>> left(types), right(types);
    const auto spans = 5 + rng.index(60);
    for (std::uint64_t s = 0; s < spans; ++s) {
      std::vector<PieceId> span(1 + rng.index(8));
      for (auto& id : span) id = static_cast<PieceId>(rng.index(types));
      t.observe_span(span);
      for (std::size_t i = 0; i + 1 < span.size(); ++i) {
        right[span[i]].push_back(span[i + 1]);
        left[span[i + 1]].push_back(span[i]);
      }
    }
    const std::size_t pool_l = t.pool_left_dom(), pool_r = t.pool_right_dom();
    for (PieceId id = 0; id < types; ++id) {
      const auto f = t.frequency(id);
      identity_failures += t.left(id).total_accessors() + t.left(id).dummies() != f;
      identity_failures += t.right(id).total_accessors() + t.right(id).dummies() != f;
      const auto el = oracle::expected_stats(left[id], 16, 1, pool_r);
      const auto er = oracle::expected_stats(right[id], 16, 1, pool_l);
      for (double diff : {windowed_av(t.left(id)) - el.av, windowed_au(t.left(id)) - el.au,
                          windowed_eta(t.left(id), pool_r) - el.eta, windowed_av(t.right(id)) - er.av,
                          windowed_au(t.right(id)) - er.au, windowed_eta(t.right(id), pool_l) - er.eta}) {
        worst = std::max(worst, std::abs(diff));
      }
    }
    // AU * fill = AV for every window state of one accessor stream.
    AccessorWindow w(16);
    for (int step = 0; step < 64; ++step) {
      w.push(static_cast<PieceId>(rng.index(types)));
      const double au = static_cast<double>(w.distinct()) / static_cast<double>(w.fill());
      au_failures += au * static_cast<double>(w.fill()) != static_cast<double>(w.distinct());
      ++windows_checked;
    }
  }
  c.expect(worst <= 1e-10, "max deviation " + std::to_string(worst));
  c.expect(identity_failures == 0, std::to_string(identity_failures) + " f(t) identity failures");
  c.expect(au_failures == 0, std::to_string(au_failures) + " AU*fill != AV");
  return c.outcome("1000 streams, max |incremental - batch| = " + std::to_string(worst) + ", " +
                   std::to_string(windows_checked) + " window states checked");
}

// 6: eta at its extremes and along a skew sweep.
Outcome criterion_6() {
  Check c;
  // Type 0 followed by each of 8 successors in turn.
  BigramTables uniform(9);
  for (int rep = 0; rep < 500; ++rep) {
    for (PieceId s = 1; s <= 8; ++s) {
      const std::vector<PieceId> span = {0, s};
      uniform.observe_span(span);
    }
  }
  const double eta_uniform = windowed_eta(uniform.right(0), uniform.pool_left_dom());
  c.expect(uniform.pool_left_dom() == 8, "pool is not 8");
  c.expect(std::abs(eta_uniform - 1.0) <= 1e-9, "uniform eta " + fmt(eta_uniform, 12));

  BigramTables fixed(2);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::vector<PieceId> span = {0, 1};
    fixed.observe_span(span);
  }
  const double eta_fixed = windowed_eta(fixed.right(0), fixed.pool_left_dom());
  c.expect(eta_fixed == 0.0, "deterministic eta " + fmt(eta_fixed, 12));

  // Period-10 successor patterns so every window holds exactly p of one type.
  WindowConfig config;
  config.window = 10;
  std::string sweep;
  double previous = 2.0;
  for (int ones = 6; ones <= 9; ++ones) {
    BigramTables t(3, config);
    for (int rep = 0; rep < 100; ++rep) {
      for (int i = 0; i < 10; ++i) {
        const std::vector<PieceId> span = {0, static_cast<PieceId>(i < ones ? 1 : 2)};
        t.observe_span(span);
      }
    }
    const double eta = windowed_eta(t.right(0), t.pool_left_dom());
    const double p = ones / 10.0;
    const double closed = -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
    c.expect(std::abs(eta - closed) <= 1e-12, "eta(p=" + fmt(p, 1) + ") differs from closed form");
    c.expect(eta < previous, "eta not decreasing at p=" + fmt(p, 1));
    previous = eta;
    sweep += fmt(eta) + " ";
  }
  return c.outcome("uniform " + fmt(eta_uniform, 12) + ", deterministic " + fmt(eta_fixed, 1) +
                   ", p=0.6..0.9: " + sweep);
}

// 7: fusional-like vs agglutinative-like synthetic languages.
struct Synthetic {
  std::string text;
  std::vector<std::pair<std::string, double>> vocab;
};

Synthetic synthetic_language(std::uint64_t seed, std::size_t suffixes_per_word) {
  constexpr std::size_t kStems = 30, kSuffixes = 20, kLines = 3000, kWordsPerLine = 8;
  Rng rng(seed);
  // Stems over a-m, suffixes over n-z: segmentation under the oracle
  // vocabulary is unambiguous.
  std::vector<std::string> stems, suffixes;
  Rng inventory(1);  // same inventory for every language
  while (stems.size() < kStems) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += static_cast<char>('a' + inventory.index(13));
    if (std::find(stems.begin(), stems.end(), s) == stems.end()) stems.push_back(s);
  }
  while (suffixes.size() < kSuffixes) {
    std::string s;
    for (int i = 0; i < 2; ++i) s += static_cast<char>('n' + inventory.index(13));
    if (std::find(suffixes.begin(), suffixes.end(), s) == suffixes.end()) suffixes.push_back(s);
  }
  Synthetic out;
  for (const auto& s : stems) out.vocab.emplace_back("\xE2\x96\x81" + s, -2.0);
  for (const auto& s : suffixes) out.vocab.emplace_back(s, -2.0);
  for (std::size_t line = 0; line < kLines; ++line) {
    for (std::size_t w = 0; w < kWordsPerLine; ++w) {
      if (w) out.text += ' ';
      out.text += stems[rng.index(kStems)];
      for (std::size_t k = 0; k < suffixes_per_word; ++k) out.text += suffixes[rng.index(kSuffixes)];
    }
    out.text += '\n';
  }
  return out;
}

Outcome criterion_7() {
  const auto t0 = Clock::now();
  Check c;
  AnalysisOptions options;
  options.tokenize.pretokenized = false;
  double min_av_gap = INFINITY, min_eta_gap = INFINITY;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    LanguageMetrics m[2];
    for (int agg = 0; agg < 2; ++agg) {
      const auto lang = synthetic_language(seed * 2 + agg, agg ? 3 : 1);
      const auto vocab = Vocabulary::from_pieces(lang.vocab);
      m[agg] = analyze(Corpus::from_text(lang.text), vocab, options);
    }
    min_av_gap = std::min(min_av_gap, m[1].av - m[0].av);
    min_eta_gap = std::min(min_eta_gap, m[1].eta - m[0].eta);
    c.expect(m[1].av > m[0].av, "AV not higher for seed " + std::to_string(seed));
    c.expect(m[1].eta > m[0].eta, "eta not higher for seed " + std::to_string(seed));
    if (seed == 1) {
      first = "seed 1: AV " + fmt(m[0].av, 2) + " -> " + fmt(m[1].av, 2) + ", eta " + fmt(m[0].eta) + " -> " +
              fmt(m[1].eta);
    }
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 30.0, "runtime " + fmt(elapsed, 1) + " s");
  return c.outcome(first + "; min gaps over 20 seeds: AV " + fmt(min_av_gap, 3) + ", eta " + fmt(min_eta_gap));
}

// 8: Viterbi against exhaustive enumeration.
Outcome criterion_8() {
  Check c;
  const std::vector<std::map<std::string, double>> vocabs = {
      {{"a", -1.0}, {"b", -1.5}, {"ab", -2.25}, {"bc", -1.75}, {"cd", -2.0}},
      {{"a", -2.0}, {"ab", -1.0}, {"ba", -1.0}, {"abc", -1.5}, {"d", -3.0}},
  };
  std::uint64_t cases = 0, mismatches = 0;
  std::string example;
  for (const auto& pieces : vocabs) {
    const auto vocab = Vocabulary::from_pieces({pieces.begin(), pieces.end()}, MarkerMode::Off);
    const Segmenter seg(vocab);
    for (std::size_t len = 1; len <= 8; ++len) {
      std::string text(len, 'a');
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < len; ++i) total *= 4;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (std::size_t i = 0; i < len; ++i, x /= 4) text[i] = static_cast<char>('a' + x % 4);
        std::vector<std::string> got;
        for (const auto& s : seg.segment_raw(text)) got.push_back(vocab.piece(s.id));
        const auto want = oracle::best_cover(text, pieces, vocab.unk_piece());
        ++cases;
        if (!want || got != want->pieces) {
          ++mismatches;
          if (example.empty()) example = text;
        }
      }
    }
  }
  c.expect(cases >= 10000, "too few cases");
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches, first '" + example + "'");
  return c.outcome(std::to_string(cases) + " strings, 0 mismatches");
}

// 9: Welch and gap-test machinery.
Outcome criterion_9() {
  using stats::Sample;
  Check c;
  const auto w = stats::welch_t_test(Sample({1, 2, 3}), Sample({2, 3, 4}), stats::Alternative::TwoSided);
  c.expect(fmt(w.statistic) == "-1.2247", "t = " + fmt(w.statistic));
  c.expect(fmt(w.df) == "4.0000", "nu = " + fmt(w.df));
  const double q = stats::t_quantile(0.975, 4);
  c.expect(std::abs(q - 2.7764) <= 1e-3, "quantile " + fmt(q, 6));
  const stats::GapTestInput base = {Sample({4.5, 5.25, 4.75, 5.5}), Sample({2.25, 3.0, 2.5, 2.0}),
                                    Sample({4.0, 4.25, 3.5, 4.75}), Sample({2.0, 2.75, 2.5, 3.25})};
  const double ref = stats::gap_reduction_test(base, 0.05).test.statistic;
  auto shift = [](const Sample& s, double d) {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (auto& x : v) x += d;
    return Sample(v);
  };
  for (double d : {-1.5, 0.25, 8.0}) {
    const stats::GapTestInput after = {base.group1_before, base.group2_before, shift(base.group1_after, d),
                                       shift(base.group2_after, d)};
    const stats::GapTestInput all = {shift(base.group1_before, d), shift(base.group2_before, d),
                                     shift(base.group1_after, d), shift(base.group2_after, d)};
    c.expect(stats::gap_reduction_test(after, 0.05).test.statistic == ref, "after-shift changes the statistic");
    c.expect(stats::gap_reduction_test(all, 0.05).test.statistic == ref, "common shift changes the statistic");
  }
  return c.outcome("t = " + fmt(w.statistic) + ", nu = " + fmt(w.df) + ", t_0.975,4 = " + fmt(q) +
                   ", gap statistic shift-invariant");
}

// 10: throughput on 200k synthetic lines.
Outcome criterion_10() {
  Rng rng(10);
  const std::string letters = "etaoinshrdlucmfwypvbgkjqxz";
  auto word = [&] {
    std::string w;
    const auto len = 2 + rng.index(8);
    for (std::uint64_t i = 0; i < len; ++i) w += letters[std::min<std::uint64_t>(rng.index(26), rng.index(26))];
    return w;
  };
  std::map<std::string, double> pieces;
  for (char ch : letters) pieces[std::string(1, ch)] = -8.0;
  while (pieces.size() < 8000) {
    auto w = word();
    w.resize(std::min<std::size_t>(w.size(), 2 + rng.index(4)));
    const bool marked = rng.index(2) == 1;
    const double score = -6.0 - rng.uniform() * 4;
    pieces.emplace((marked ? "\xE2\x96\x81" : "") + w, score);
  }
  std::vector<std::pair<std::string, double>> list(pieces.begin(), pieces.end());
  const auto vocab = Vocabulary::from_pieces(list);
  std::string text;
  text.reserve(11'000'000);
  for (int line = 0; line < 200000; ++line) {
    const auto words = 6 + rng.index(4);
    for (std::uint64_t w = 0; w < words; ++w) {
      if (w) text += ' ';
      text += word();
    }
    text += rng.index(3) == 0 ? ", ok.\n" : ".\n";
  }
  const auto corpus = Corpus::from_text(text);
  const auto t0 = Clock::now();
  const auto stream = tokenize_corpus(corpus, vocab, true);
  BigramTables tables(vocab.type_count());
  tables.observe(stream);
  const auto report = finalize(tables, vocab);
  const double elapsed = seconds_since(t0);
  Check c;
  c.expect(elapsed < 60.0, "took " + fmt(elapsed, 1) + " s");
  std::size_t max_fill = 0;
  for (PieceId id = 0; id < tables.type_count(); ++id) {
    max_fill = std::max({max_fill, tables.left(id).window().fill(), tables.right(id).window().fill()});
  }
  c.expect(max_fill <= tables.config().window, "window exceeds W");
  return c.outcome(fmt(static_cast<double>(text.size()) / 1e6, 1) + " MB, " + std::to_string(stream.size()) +
                   " tokens in " + fmt(elapsed, 2) + " s, max window fill " + std::to_string(max_fill) +
                   ", AV " + fmt(report.macro.av_mean, 2));
}

// 11: optional real-corpus comparison.
Outcome criterion_11() {
  const char* corpus_path = std::getenv("MORPHLENS_EUROPARL_EN");
  const char* vocab_path = std::getenv("MORPHLENS_VOCAB_EN");
  if (!corpus_path || !vocab_path) {
    return {kSkip, "set MORPHLENS_EUROPARL_EN and MORPHLENS_VOCAB_EN to run the English reference check"};
  }
  const auto m = analyze(Corpus::from_file(corpus_path), Vocabulary::load(vocab_path));
  Check c;
  auto near = [](double got, double want) { return std::abs(got - want) <= 0.2 * want; };
  c.expect(near(m.av, 2.1), "AV " + fmt(m.av, 2));
  c.expect(near(m.eta * 100, 15.9), "eta*100 " + fmt(m.eta * 100, 2));
  c.expect(near(m.lr * 100, 59.3), "LR*100 " + fmt(m.lr * 100, 2));
  return c.outcome("AV " + fmt(m.av, 2) + ", eta*100 " + fmt(m.eta * 100, 2) + ", LR*100 " + fmt(m.lr * 100, 2));
}

const std::vector<std::function<Outcome()>> kCriteria = {
    criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
};

int run_one(std::size_t n) {
  Outcome o;
  try {
    o = kCriteria[n - 1]();
  } catch (const std::exception& e) {
    o = {1, std::string("exception: ") + e.what()};
  }
  const char* tag = o.status == 0 ? "PASS" : o.status == kSkip ? "SKIP" : "FAIL";
  std::printf("[%s] criterion %zu: %s\n", tag, n, o.detail.c_str());
  std::fflush(stdout);
  return o.status;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [criterion]\n");
    return 2;
  }
  if (argc == 2) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
      return 2;
    }
    return run_one(static_cast<std::size_t>(n));
  }
  int failed = 0;
  for (std::size_t n = 1; n <= kCriteria.size(); ++n) failed += run_one(n) == 1;
  return failed ? 1 : 0;
}
