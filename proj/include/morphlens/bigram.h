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

// Token-bigram accessor statistics.
//
// Every token type keeps, per side, a bounded window of its most recent
// accessors (the neighbouring types within a span). Accessor variety (AV)
// is the number of distinct types in the window, accessor uniqueness (AU)
// is AV over the window fill, and entropic efficiency (eta) is the Shannon
// entropy of the window distribution over log2(min(pool, fill)), where pool
// is the number of types that can appear on that side. Values are averaged
// over all full-window positions (a moving average, like MATTR); a type
// whose lifetime accessor count stays below the window size contributes one
// measurement over its partial window.
//
// Span edges are dummy accessors: counted in b_L/b_R, never windowed.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphlens/tokenizer.h"

namespace morphlens {

struct WindowConfig {
  std::size_t window = 1000;
  // 1 is a true moving average; `window` gives tumbling windows.
  std::size_t stride = 1;
  // Types that never fill a window get no measurement.
  bool full_windows_only = false;
  // Compute eta once over the lifetime accessor distribution.
  bool lifetime_eta = false;
};

// Bounded FIFO of accessor ids with incrementally maintained counts,
// distinct count and sum of c*log2(c).
class AccessorWindow {
 public:
  explicit AccessorWindow(std::size_t capacity) : capacity_(capacity) {}

  void push(PieceId id);

  std::size_t capacity() const { return capacity_; }
  std::size_t fill() const { return ring_.size(); }
  bool full() const { return ring_.size() == capacity_; }
  std::size_t distinct() const { return counts_.size(); }
  std::uint32_t count(PieceId id) const;
  // -sum p*log2(p) over the current contents; 0 for an empty window.
  double entropy_bits() const;
  // Oldest first.
  std::vector<PieceId> contents() const;

 private:
  static double xlog2x(std::uint32_t c);
  void resync();

  std::size_t capacity_;
  std::vector<PieceId> ring_;
  std::size_t head_ = 0;  // oldest element once full
  std::unordered_map<PieceId, std::uint32_t> counts_;
  double sum_xlogx_ = 0.0;
  std::size_t evictions_ = 0;
};

// Accessor statistics of one type on one side.
class AccessorState {
 public:
  explicit AccessorState(std::size_t window = 1000) : window_(window) {}

  void push(PieceId accessor, const WindowConfig& config);
  void add_dummy() { ++dummies_; }

  const AccessorWindow& window() const { return window_; }
  std::uint64_t total_accessors() const { return ta_; }
  std::uint64_t dummies() const { return dummies_; }

  // Moving-average accumulators over measured full windows.
  std::uint64_t measured_windows() const { return measured_; }
  double sum_distinct() const { return sum_distinct_; }
  double sum_entropy_bits() const { return sum_entropy_; }

  // Present only with WindowConfig::lifetime_eta.
  const std::unordered_map<PieceId, std::uint64_t>* lifetime_counts() const {
    return lifetime_ ? &*lifetime_ : nullptr;
  }

 private:
  AccessorWindow window_;
  std::uint64_t ta_ = 0;
  std::uint64_t dummies_ = 0;
  std::uint64_t measured_ = 0;
  double sum_distinct_ = 0.0;
  double sum_entropy_ = 0.0;
  std::optional<std::unordered_map<PieceId, std::uint64_t>> lifetime_;
};

// Whether the state yields a value under `config`.
bool has_measurement(const AccessorState& state, const WindowConfig& config);
double windowed_av(const AccessorState& state);
double windowed_au(const AccessorState& state);
double windowed_eta(const AccessorState& state, std::size_t pool);
double lifetime_eta(const AccessorState& state, std::size_t pool);
// b / (TA + b); 0 for a type never seen.
double boundary_ratio(const AccessorState& state);

// Per-type left/right accessor states for one corpus pass.
class BigramTables {
 public:
  BigramTables(std::size_t type_count, WindowConfig config = {});

  // Feeds tokens in stream order. Span state carries over between calls, so
  // a stream may be fed line by line.
  void observe(std::span<const Token> tokens);
  void observe(const Token& token);
  // Feeds one complete span.
  void observe_span(std::span<const PieceId> span);

  const WindowConfig& config() const { return config_; }
  std::size_t type_count() const { return frequency_.size(); }
  const AccessorState& left(PieceId t) const { return left_[t]; }
  const AccessorState& right(PieceId t) const { return right_[t]; }
  std::uint64_t frequency(PieceId t) const { return frequency_[t]; }
  std::uint64_t total_pairs() const { return total_pairs_; }
  std::uint64_t token_count() const { return tokens_; }

  // |dom A_L|: types with at least one left accessor. This is the pool of
  // possible right accessors, and vice versa.
  std::size_t pool_left_dom() const;
  std::size_t pool_right_dom() const;

 private:
  void ensure(PieceId t);

  WindowConfig config_;
  std::vector<AccessorState> left_;
  std::vector<AccessorState> right_;
  std::vector<std::uint64_t> frequency_;
  std::uint64_t total_pairs_ = 0;
  std::uint64_t tokens_ = 0;
  std::optional<PieceId> prev_;
};

struct SideValues {
  double left = 0.0;
  double right = 0.0;
  double mean() const { return (left + right) / 2.0; }
  double min() const { return left < right ? left : right; }
};

struct TypeMetrics {
  PieceId id = 0;
  std::string type;
  std::uint64_t frequency = 0;
  std::uint64_t ta_left = 0, ta_right = 0;
  std::uint64_t b_left = 0, b_right = 0;
  SideValues av, au, eta, br;
  bool lexical = false;
  bool retained = false;  // lexical and not lexicalized
  bool measured = false;  // retained with a value on both sides
};

struct MacroAverages {
  SideValues av, au, eta;
  double av_mean = 0.0, av_min = 0.0;
  double au_mean = 0.0, au_min = 0.0;
  double eta_mean = 0.0, eta_min = 0.0;
};

struct BigramReport {
  std::vector<TypeMetrics> types;  // observed types, in id order
  std::size_t lexical_count = 0;   // |V'|
  std::size_t filtered_count = 0;  // lexicalized types
  std::size_t retained_count = 0;
  std::size_t measured_count = 0;
  double lr = 0.0;
  MacroAverages macro;
  // No retained type had a measurement; macro averages are zero.
  bool empty_retained = false;
  std::size_t pool_left = 0;
  std::size_t pool_right = 0;
  std::uint64_t total_pairs = 0;
  std::uint64_t token_count = 0;
};

inline constexpr double kLexicalizedThreshold = 0.95;

// Filters non-lexical types (and the unknown piece), marks types with
// min(BR_L, BR_R) >= threshold as lexicalized, and macro-averages the
// remaining types. Throws Error when no lexical type was observed.
BigramReport finalize(const BigramTables& tables, const Vocabulary& vocab,
                      double threshold = kLexicalizedThreshold);

// Per-type TSV with footer lines (`#key<TAB>value`). percent scales the
// ratio metrics (AU, eta, BR, LR) by 100.
void write_bigram_tsv(std::ostream& out, const BigramReport& report, bool percent);

}  // namespace morphlens
