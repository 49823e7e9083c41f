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

#include "morphlens/bigram.h"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "morphlens/error.h"
#include "morphlens/pretokenize.h"

namespace morphlens {

// AccessorWindow

double AccessorWindow::xlog2x(std::uint32_t c) {
  return c <= 1 ? 0.0 : static_cast<double>(c) * std::log2(static_cast<double>(c));
}

void AccessorWindow::push(PieceId id) {
  if (capacity_ == 0) return;
  if (ring_.size() < capacity_) {
    ring_.push_back(id);
  } else {
    const PieceId old = ring_[head_];
    ring_[head_] = id;
    head_ = (head_ + 1) % capacity_;
    auto it = counts_.find(old);
    sum_xlogx_ -= xlog2x(it->second) - xlog2x(it->second - 1);
    if (--it->second == 0) counts_.erase(it);
    ++evictions_;
  }
  auto& c = counts_[id];
  ++c;
  sum_xlogx_ += xlog2x(c) - xlog2x(c - 1);
  // Bound floating-point drift: recompute once per window turnover.
  if (evictions_ >= capacity_) resync();
}

void AccessorWindow::resync() {
  double s = 0.0;
  for (const auto& [id, c] : counts_) s += xlog2x(c);
  sum_xlogx_ = s;
  evictions_ = 0;
}

std::uint32_t AccessorWindow::count(PieceId id) const {
  auto it = counts_.find(id);
  return it == counts_.end() ? 0 : it->second;
}

double AccessorWindow::entropy_bits() const {
  const std::size_t n = ring_.size();
  if (n == 0) return 0.0;
  const double h = std::log2(static_cast<double>(n)) - sum_xlogx_ / static_cast<double>(n);
  return h < 0.0 ? 0.0 : h;
}

std::vector<PieceId> AccessorWindow::contents() const {
  std::vector<PieceId> out;
  out.reserve(ring_.size());
  for (std::size_t i = 0; i < ring_.size(); ++i) out.push_back(ring_[(head_ + i) % ring_.size()]);
  return out;
}

// AccessorState

void AccessorState::push(PieceId accessor, const WindowConfig& config) {
  window_.push(accessor);
  ++ta_;
  if (config.lifetime_eta) {
    if (!lifetime_) lifetime_.emplace();
    ++(*lifetime_)[accessor];
  }
  if (window_.full() && (ta_ - config.window) % config.stride == 0) {
    ++measured_;
    sum_distinct_ += static_cast<double>(window_.distinct());
    sum_entropy_ += window_.entropy_bits();
  }
}

bool has_measurement(const AccessorState& state, const WindowConfig& config) {
  return state.total_accessors() == 0 || !config.full_windows_only || state.measured_windows() > 0;
}

double windowed_av(const AccessorState& state) {
  if (state.measured_windows() > 0) {
    return state.sum_distinct() / static_cast<double>(state.measured_windows());
  }
  return static_cast<double>(state.window().distinct());
}

double windowed_au(const AccessorState& state) {
  if (state.measured_windows() > 0) {
    return state.sum_distinct() /
           (static_cast<double>(state.measured_windows()) * static_cast<double>(state.window().capacity()));
  }
  const auto fill = state.window().fill();
  return fill == 0 ? 0.0 : static_cast<double>(state.window().distinct()) / static_cast<double>(fill);
}

namespace {

double max_entropy_bits(std::size_t pool, std::uint64_t samples) {
  const auto support = std::min<std::uint64_t>(pool, samples);
  return support <= 1 ? 0.0 : std::log2(static_cast<double>(support));
}

}  // namespace

double windowed_eta(const AccessorState& state, std::size_t pool) {
  if (state.measured_windows() > 0) {
    const double h0 = max_entropy_bits(pool, state.window().capacity());
    if (h0 == 0.0) return 0.0;
    return state.sum_entropy_bits() / static_cast<double>(state.measured_windows()) / h0;
  }
  const double h0 = max_entropy_bits(pool, state.window().fill());
  return h0 == 0.0 ? 0.0 : state.window().entropy_bits() / h0;
}

double lifetime_eta(const AccessorState& state, std::size_t pool) {
  const auto* counts = state.lifetime_counts();
  const auto ta = state.total_accessors();
  const double h0 = max_entropy_bits(pool, ta);
  if (!counts || h0 == 0.0) return 0.0;
  double h = 0.0;
  for (const auto& [id, c] : *counts) {
    const double p = static_cast<double>(c) / static_cast<double>(ta);
    h -= p * std::log2(p);
  }
  return h / h0;
}

double boundary_ratio(const AccessorState& state) {
  const auto total = state.total_accessors() + state.dummies();
  return total == 0 ? 0.0 : static_cast<double>(state.dummies()) / static_cast<double>(total);
}

// BigramTables

BigramTables::BigramTables(std::size_t type_count, WindowConfig config) : config_(config) {
  if (config_.window == 0) throw Error("window size must be positive");
  if (config_.stride == 0) throw Error("window stride must be positive");
  left_.assign(type_count, AccessorState(config_.window));
  right_.assign(type_count, AccessorState(config_.window));
  frequency_.assign(type_count, 0);
}

void BigramTables::ensure(PieceId t) {
  if (t >= frequency_.size()) {
    left_.resize(t + 1, AccessorState(config_.window));
    right_.resize(t + 1, AccessorState(config_.window));
    frequency_.resize(t + 1, 0);
  }
}

void BigramTables::observe(const Token& token) {
  const PieceId t = token.id;
  ensure(t);
  ++frequency_[t];
  ++tokens_;
  if (token.word_initial || !prev_) {
    left_[t].add_dummy();
  } else {
    right_[*prev_].push(t, config_);
    left_[t].push(*prev_, config_);
    ++total_pairs_;
  }
  if (token.word_final) {
    right_[t].add_dummy();
    prev_.reset();
  } else {
    prev_ = t;
  }
}

void BigramTables::observe(std::span<const Token> tokens) {
  for (const auto& t : tokens) observe(t);
}

void BigramTables::observe_span(std::span<const PieceId> span) {
  for (std::size_t i = 0; i < span.size(); ++i) {
    observe(Token{span[i], 0, i == 0, i + 1 == span.size()});
  }
}

std::size_t BigramTables::pool_left_dom() const {
  return static_cast<std::size_t>(std::count_if(left_.begin(), left_.end(), [](const AccessorState& s) {
    return s.total_accessors() > 0;
  }));
}

std::size_t BigramTables::pool_right_dom() const {
  return static_cast<std::size_t>(std::count_if(right_.begin(), right_.end(), [](const AccessorState& s) {
    return s.total_accessors() > 0;
  }));
}

// Report

BigramReport finalize(const BigramTables& tables, const Vocabulary& vocab, double threshold) {
  const auto& config = tables.config();
  BigramReport report;
  // Right accessors are drawn from types that have a left accessor.
  report.pool_left = tables.pool_right_dom();
  report.pool_right = tables.pool_left_dom();
  report.total_pairs = tables.total_pairs();
  report.token_count = tables.token_count();

  auto eta_of = [&](const AccessorState& s, std::size_t pool) {
    return config.lifetime_eta ? lifetime_eta(s, pool) : windowed_eta(s, pool);
  };

  MacroAverages sum;
  for (PieceId id = 0; id < tables.type_count(); ++id) {
    if (tables.frequency(id) == 0) continue;
    TypeMetrics m;
    m.id = id;
    m.type = id < vocab.type_count() ? vocab.piece(id) : std::string("<id:") + std::to_string(id) + ">";
    const auto& left = tables.left(id);
    const auto& right = tables.right(id);
    m.frequency = tables.frequency(id);
    m.ta_left = left.total_accessors();
    m.ta_right = right.total_accessors();
    m.b_left = left.dummies();
    m.b_right = right.dummies();
    m.av = {windowed_av(left), windowed_av(right)};
    m.au = {windowed_au(left), windowed_au(right)};
    m.eta = {eta_of(left, report.pool_left), eta_of(right, report.pool_right)};
    m.br = {boundary_ratio(left), boundary_ratio(right)};
    m.lexical = id != vocab.unk_id() && id < vocab.type_count() && is_lexical(m.type);
    if (m.lexical) {
      ++report.lexical_count;
      if (m.br.min() >= threshold) {
        ++report.filtered_count;
      } else {
        m.retained = true;
        ++report.retained_count;
        m.measured = has_measurement(left, config) && has_measurement(right, config);
      }
    }
    if (m.measured) {
      ++report.measured_count;
      sum.av.left += m.av.left;
      sum.av.right += m.av.right;
      sum.au.left += m.au.left;
      sum.au.right += m.au.right;
      sum.eta.left += m.eta.left;
      sum.eta.right += m.eta.right;
      sum.av_mean += m.av.mean();
      sum.av_min += m.av.min();
      sum.au_mean += m.au.mean();
      sum.au_min += m.au.min();
      sum.eta_mean += m.eta.mean();
      sum.eta_min += m.eta.min();
    }
    report.types.push_back(std::move(m));
  }
  if (report.lexical_count == 0) throw Error("no lexical types observed");
  report.lr = static_cast<double>(report.filtered_count) / static_cast<double>(report.lexical_count);
  report.empty_retained = report.measured_count == 0;
  if (!report.empty_retained) {
    const double n = static_cast<double>(report.measured_count);
    auto& a = report.macro;
    a.av = {sum.av.left / n, sum.av.right / n};
    a.au = {sum.au.left / n, sum.au.right / n};
    a.eta = {sum.eta.left / n, sum.eta.right / n};
    a.av_mean = sum.av_mean / n;
    a.av_min = sum.av_min / n;
    a.au_mean = sum.au_mean / n;
    a.au_min = sum.au_min / n;
    a.eta_mean = sum.eta_mean / n;
    a.eta_min = sum.eta_min / n;
  }
  return report;
}

void write_bigram_tsv(std::ostream& out, const BigramReport& report, bool percent) {
  const double scale = percent ? 100.0 : 1.0;
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(percent ? 2 : 4);
  out << "type\tf\tav_L\tav_R\tav_mean\tav_min\tau_mean\teta_mean\tbr_L\tbr_R\tretained\n";
  for (const auto& m : report.types) {
    out << m.type << '\t' << m.frequency << '\t' << m.av.left << '\t' << m.av.right << '\t'
        << m.av.mean() << '\t' << m.av.min() << '\t' << m.au.mean() * scale << '\t'
        << m.eta.mean() * scale << '\t' << m.br.left * scale << '\t' << m.br.right * scale << '\t'
        << (m.retained ? 1 : 0) << '\n';
  }
  const auto& a = report.macro;
  out << "#av\t" << a.av_mean << '\n'
      << "#av_min\t" << a.av_min << '\n'
      << "#av_L\t" << a.av.left << '\n'
      << "#av_R\t" << a.av.right << '\n'
      << "#au\t" << a.au_mean * scale << '\n'
      << "#eta\t" << a.eta_mean * scale << '\n'
      << "#eta_min\t" << a.eta_min * scale << '\n'
      << "#lr\t" << report.lr * scale << '\n'
      << "#lexical_types\t" << report.lexical_count << '\n'
      << "#lexicalized_types\t" << report.filtered_count << '\n'
      << "#retained_types\t" << report.retained_count << '\n'
      << "#measured_types\t" << report.measured_count << '\n'
      << "#empty_retained\t" << (report.empty_retained ? 1 : 0) << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace morphlens
