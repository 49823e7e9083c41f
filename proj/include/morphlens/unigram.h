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

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphlens/tokenizer.h"

namespace morphlens {

inline constexpr std::size_t kDefaultMattrWindow = 500;
inline constexpr double kDefaultRenyiAlpha = 2.5;

// Occurrence counts per token type.
class FrequencyTable {
 public:
  void add(PieceId id, std::uint64_t n = 1);

  std::uint64_t total() const { return total_; }
  std::size_t types() const { return counts_.size(); }
  const std::unordered_map<PieceId, std::uint64_t>& counts() const { return counts_; }

  template <typename Range>
  static FrequencyTable of(const Range& ids) {
    FrequencyTable t;
    for (auto id : ids) t.add(static_cast<PieceId>(id));
    return t;
  }

 private:
  std::unordered_map<PieceId, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Type-token ratio. Throws on an empty sequence.
double ttr(std::span<const PieceId> tokens);

// Moving-average TTR over every window of `window` consecutive tokens; the
// plain TTR when the sequence is shorter than the window.
double mattr(std::span<const PieceId> tokens, std::size_t window);

// Characters per token, micro-averaged; `chars[i]` is the surface length of
// token i.
double mtl(std::span<const std::uint32_t> chars);

// H_alpha / H_0 of the distribution in `freq` (log base 2). alpha = 1 is the
// Shannon limit. A single-type support gives 0. Throws for alpha < 0 or an
// empty table.
double renyi_efficiency(const FrequencyTable& freq, double alpha);

double renyi_entropy(const FrequencyTable& freq, double alpha);

struct WordMetrics {
  double mwl = 0.0;  // mean characters per word
  double s = 0.0;    // mean tokens per character, per word
};

struct WordSample {
  std::size_t chars;
  std::size_t tokens;
};

WordMetrics word_metrics(std::span<const WordSample> words);

// Streaming MATTR over a token stream.
class MattrAccumulator {
 public:
  explicit MattrAccumulator(std::size_t window);
  void push(PieceId id);
  double value() const;
  std::uint64_t tokens() const { return tokens_; }

 private:
  std::size_t window_;
  std::vector<PieceId> ring_;
  std::size_t head_ = 0;
  std::unordered_map<PieceId, std::uint32_t> counts_;
  double sum_ttr_ = 0.0;
  std::uint64_t windows_ = 0;
  std::uint64_t tokens_ = 0;
};

struct UnigramOptions {
  std::size_t mattr_window = kDefaultMattrWindow;
  double alpha = kDefaultRenyiAlpha;
};

struct UnigramReport {
  std::uint64_t ctc = 0;
  std::size_t types = 0;
  double ttr = 0.0;
  double mattr = 0.0;
  double mtl = 0.0;
  double renyi_efficiency = 0.0;
  double alpha = kDefaultRenyiAlpha;
  std::size_t mattr_window = kDefaultMattrWindow;
  std::uint64_t words = 0;
  double mwl = 0.0;
  double s = 0.0;
};

// Single-pass accumulation of the unigram and word battery. Tokens feed
// the unigram metrics; words (pretokens with their token counts) feed MWL
// and S.
class UnigramAccumulator {
 public:
  explicit UnigramAccumulator(UnigramOptions options = {});

  void add_tokens(std::span<const Token> tokens);
  void add_word(std::size_t chars, std::size_t tokens);

  UnigramReport report() const;

 private:
  UnigramOptions options_;
  FrequencyTable freq_;
  MattrAccumulator mattr_;
  std::uint64_t chars_ = 0;
  std::uint64_t words_ = 0;
  std::uint64_t word_chars_ = 0;
  double sum_s_ = 0.0;
};

void write_unigram_tsv(std::ostream& out, const UnigramReport& report, bool percent);

}  // namespace morphlens
