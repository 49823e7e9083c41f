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

#include "morphlens/unigram.h"

#include <cmath>
#include <iomanip>
#include <unordered_set>

#include "morphlens/error.h"

namespace morphlens {

void FrequencyTable::add(PieceId id, std::uint64_t n) {
  if (n == 0) return;
  counts_[id] += n;
  total_ += n;
}

double ttr(std::span<const PieceId> tokens) {
  if (tokens.empty()) throw Error("ttr: empty token sequence");
  std::unordered_set<PieceId> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

MattrAccumulator::MattrAccumulator(std::size_t window) : window_(window) {
  if (window_ == 0) throw Error("mattr: window must be positive");
  ring_.reserve(std::min<std::size_t>(window_, 1 << 16));
}

void MattrAccumulator::push(PieceId id) {
  ++tokens_;
  if (ring_.size() < window_) {
    ring_.push_back(id);
  } else {
    auto it = counts_.find(ring_[head_]);
    if (--it->second == 0) counts_.erase(it);
    ring_[head_] = id;
    head_ = (head_ + 1) % window_;
  }
  ++counts_[id];
  if (ring_.size() == window_) {
    sum_ttr_ += static_cast<double>(counts_.size()) / static_cast<double>(window_);
    ++windows_;
  }
}

double MattrAccumulator::value() const {
  if (windows_ > 0) return sum_ttr_ / static_cast<double>(windows_);
  if (ring_.empty()) return 0.0;
  return static_cast<double>(counts_.size()) / static_cast<double>(ring_.size());
}

double mattr(std::span<const PieceId> tokens, std::size_t window) {
  if (tokens.empty()) throw Error("mattr: empty token sequence");
  MattrAccumulator acc(window);
  for (auto id : tokens) acc.push(id);
  return acc.value();
}

double mtl(std::span<const std::uint32_t> chars) {
  if (chars.empty()) throw Error("mtl: empty token sequence");
  std::uint64_t total = 0;
  for (auto c : chars) total += c;
  return static_cast<double>(total) / static_cast<double>(chars.size());
}

double renyi_entropy(const FrequencyTable& freq, double alpha) {
  if (!(alpha >= 0.0)) throw Error("renyi: alpha must be >= 0");
  if (freq.total() == 0) throw Error("renyi: empty frequency table");
  const double total = static_cast<double>(freq.total());
  if (alpha == 0.0) return std::log2(static_cast<double>(freq.types()));
  if (alpha == 1.0) {
    double h = 0.0;
    for (const auto& [id, c] : freq.counts()) {
      const double p = static_cast<double>(c) / total;
      h -= p * std::log2(p);
    }
    return h;
  }
  double s = 0.0;
  for (const auto& [id, c] : freq.counts()) s += std::pow(static_cast<double>(c) / total, alpha);
  return std::log2(s) / (1.0 - alpha);
}

double renyi_efficiency(const FrequencyTable& freq, double alpha) {
  const double h = renyi_entropy(freq, alpha);
  if (freq.types() <= 1) return 0.0;
  return h / std::log2(static_cast<double>(freq.types()));
}

WordMetrics word_metrics(std::span<const WordSample> words) {
  if (words.empty()) throw Error("word_metrics: no words");
  double chars = 0.0;
  double s = 0.0;
  for (const auto& w : words) {
    if (w.chars == 0) throw Error("word_metrics: empty word");
    chars += static_cast<double>(w.chars);
    s += static_cast<double>(w.tokens) / static_cast<double>(w.chars);
  }
  const double n = static_cast<double>(words.size());
  return {chars / n, s / n};
}

UnigramAccumulator::UnigramAccumulator(UnigramOptions options)
    : options_(options), mattr_(options.mattr_window) {
  if (!(options_.alpha >= 0.0)) throw Error("renyi: alpha must be >= 0");
}

void UnigramAccumulator::add_tokens(std::span<const Token> tokens) {
  for (const auto& t : tokens) {
    freq_.add(t.id);
    mattr_.push(t.id);
    chars_ += t.chars;
  }
}

void UnigramAccumulator::add_word(std::size_t chars, std::size_t tokens) {
  if (chars == 0) return;
  ++words_;
  word_chars_ += chars;
  sum_s_ += static_cast<double>(tokens) / static_cast<double>(chars);
}

UnigramReport UnigramAccumulator::report() const {
  UnigramReport r;
  r.alpha = options_.alpha;
  r.mattr_window = options_.mattr_window;
  r.ctc = freq_.total();
  r.types = freq_.types();
  r.words = words_;
  if (r.ctc > 0) {
    r.ttr = static_cast<double>(r.types) / static_cast<double>(r.ctc);
    r.mattr = mattr_.value();
    r.mtl = static_cast<double>(chars_) / static_cast<double>(r.ctc);
    r.renyi_efficiency = renyi_efficiency(freq_, options_.alpha);
  }
  if (words_ > 0) {
    r.mwl = static_cast<double>(word_chars_) / static_cast<double>(words_);
    r.s = sum_s_ / static_cast<double>(words_);
  }
  return r;
}

void write_unigram_tsv(std::ostream& out, const UnigramReport& r, bool percent) {
  const double scale = percent ? 100.0 : 1.0;
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(percent ? 2 : 4);
  out << "metric\tvalue\n"
      << "ctc\t" << r.ctc << '\n'
      << "types\t" << r.types << '\n'
      << "ttr\t" << r.ttr * scale << '\n'
      << "mattr\t" << r.mattr * scale << '\n'
      << "mattr_window\t" << r.mattr_window << '\n'
      << "mtl\t" << r.mtl << '\n'
      << "re\t" << r.renyi_efficiency * scale << '\n'
      << "alpha\t" << r.alpha << '\n'
      << "words\t" << r.words << '\n'
      << "mwl\t" << r.mwl << '\n'
      << "s\t" << r.s * scale << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace morphlens
