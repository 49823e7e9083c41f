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

#include "morphlens/tokenizer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "morphlens/error.h"
#include "morphlens/unicode.h"

namespace morphlens {

// Vocabulary

void Vocabulary::add(std::string piece, double score, const std::string& source, std::size_t line) {
  if (piece.empty()) throw ParseError(source, line, "empty piece");
  if (auto bad = utf8::find_invalid(piece)) {
    throw ParseError(source, line, "piece is not valid UTF-8 at byte " + std::to_string(*bad));
  }
  if (!std::isfinite(score)) throw ParseError(source, line, "score is not finite");
  const auto id = static_cast<PieceId>(pieces_.size());
  if (!index_.emplace(piece, id).second) {
    throw ParseError(source, line, "duplicate piece '" + piece + "'");
  }
  pieces_.push_back(std::move(piece));
  scores_.push_back(score);
}

void Vocabulary::finish(MarkerMode marker) {
  listed_ = pieces_.size();
  double min_score = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) min_score = std::min(min_score, scores_[i]);
  if (auto it = index_.find(std::string(kDefaultUnkPiece)); it != index_.end()) {
    unk_ = it->second;
  } else {
    unk_ = static_cast<PieceId>(pieces_.size());
    pieces_.emplace_back(kDefaultUnkPiece);
    index_.emplace(kDefaultUnkPiece, unk_);
    scores_.push_back(0.0);
  }
  scores_[unk_] = min_score - kUnkPenalty;
  switch (marker) {
    case MarkerMode::On: uses_marker_ = true; break;
    case MarkerMode::Off: uses_marker_ = false; break;
    case MarkerMode::Auto:
      uses_marker_ = std::any_of(pieces_.begin(), pieces_.end(), [](const std::string& p) {
        return p.starts_with(kBoundaryMarker);
      });
      break;
  }
}

Vocabulary Vocabulary::parse(std::string_view text, std::string source, MarkerMode marker) {
  Vocabulary v;
  v.source_ = source;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(source, line_no, "expected piece<TAB>logprob");
    std::string_view field = line.substr(tab + 1);
    if (field.find('\t') != std::string_view::npos) {
      throw ParseError(source, line_no, "expected exactly two columns");
    }
    double score = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, score);
    if (ec != std::errc() || ptr != last || field.empty()) {
      throw ParseError(source, line_no, "non-numeric score '" + std::string(field) + "'");
    }
    v.add(std::string(line.substr(0, tab)), score, source, line_no);
  }
  if (v.pieces_.empty()) throw ParseError(source, 0, "empty vocabulary");
  v.finish(marker);
  return v;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path, MarkerMode marker) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open vocabulary");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string(), marker);
}

Vocabulary Vocabulary::from_pieces(const std::vector<std::pair<std::string, double>>& pieces,
                                   MarkerMode marker) {
  if (pieces.empty()) throw Error("empty vocabulary");
  Vocabulary v;
  v.source_ = "<memory>";
  std::size_t i = 0;
  for (const auto& [piece, score] : pieces) v.add(piece, score, v.source_, ++i);
  v.finish(marker);
  return v;
}

std::optional<PieceId> Vocabulary::find(std::string_view piece) const {
  auto it = index_.find(std::string(piece));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// Segmenter

Segmenter::Segmenter(const Vocabulary& vocab, SegmentAlgorithm algorithm)
    : vocab_(&vocab), algorithm_(algorithm) {
  trie_.emplace_back();
  for (PieceId id = 0; id < vocab.type_count(); ++id) {
    if (id == vocab.unk_id()) continue;
    std::uint32_t node = 0;
    for (unsigned char b : vocab.piece(id)) {
      std::uint32_t next = child(node, b);
      if (next == 0) {
        next = static_cast<std::uint32_t>(trie_.size());
        trie_.emplace_back();
        auto& kids = trie_[node].children;
        kids.insert(std::upper_bound(kids.begin(), kids.end(), std::make_pair(b, 0u),
                                     [](const auto& x, const auto& y) { return x.first < y.first; }),
                    {b, next});
      }
      node = next;
    }
    trie_[node].piece = static_cast<std::int32_t>(id);
  }
}

std::uint32_t Segmenter::child(std::uint32_t node, unsigned char byte) const {
  const auto& kids = trie_[node].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), byte,
                             [](const auto& kv, unsigned char b) { return kv.first < b; });
  return (it != kids.end() && it->first == byte) ? it->second : 0;
}

namespace {

std::size_t next_char(std::string_view s, std::size_t pos) {
  ++pos;
  while (pos < s.size() && (static_cast<unsigned char>(s[pos]) & 0xC0) == 0x80) ++pos;
  return pos;
}

}  // namespace

void Segmenter::viterbi(std::string_view text, std::vector<Segment>& out) const {
  const std::size_t n = text.size();
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  std::vector<double> best(n + 1, kUnreached);
  std::vector<std::uint32_t> count(n + 1, 0);
  std::vector<std::uint32_t> back(n + 1, 0);
  std::vector<PieceId> via(n + 1, 0);
  best[0] = 0.0;

  // Pieces of the best path ending at `pos`, in order.
  auto path_to = [&](std::size_t pos) {
    std::vector<PieceId> ids;
    while (pos > 0) {
      ids.push_back(via[pos]);
      pos = back[pos];
    }
    std::reverse(ids.begin(), ids.end());
    return ids;
  };
  auto lex_less = [&](const std::vector<PieceId>& a, const std::vector<PieceId>& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [&](PieceId x, PieceId y) { return vocab_->piece(x) < vocab_->piece(y); });
  };
  auto relax = [&](std::size_t from, std::size_t to, PieceId id) {
    const double cand = best[from] + vocab_->score(id);
    const std::uint32_t cand_count = count[from] + 1;
    bool take = false;
    if (cand > best[to]) {
      take = true;
    } else if (cand == best[to]) {
      if (cand_count < count[to]) {
        take = true;
      } else if (cand_count == count[to]) {
        auto candidate = path_to(from);
        candidate.push_back(id);
        take = lex_less(candidate, path_to(to));
      }
    }
    if (take) {
      best[to] = cand;
      count[to] = cand_count;
      back[to] = static_cast<std::uint32_t>(from);
      via[to] = id;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (best[i] == kUnreached) continue;  // not a character boundary
    const std::size_t char_end = next_char(text, i);
    bool single_char_piece = false;
    std::uint32_t node = 0;
    for (std::size_t j = i; j < n; ++j) {
      node = child(node, static_cast<unsigned char>(text[j]));
      if (node == 0) break;
      if (trie_[node].piece >= 0) {
        relax(i, j + 1, static_cast<PieceId>(trie_[node].piece));
        if (j + 1 == char_end) single_char_piece = true;
      }
    }
    if (!single_char_piece) relax(i, char_end, vocab_->unk_id());
  }

  const std::size_t first = out.size();
  for (std::size_t pos = n; pos > 0; pos = back[pos]) {
    out.push_back({via[pos], back[pos], static_cast<std::uint32_t>(pos)});
  }
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

void Segmenter::greedy(std::string_view text, std::vector<Segment>& out) const {
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t match_end = 0;
    PieceId match = 0;
    std::uint32_t node = 0;
    for (std::size_t j = i; j < text.size(); ++j) {
      node = child(node, static_cast<unsigned char>(text[j]));
      if (node == 0) break;
      if (trie_[node].piece >= 0) {
        match_end = j + 1;
        match = static_cast<PieceId>(trie_[node].piece);
      }
    }
    if (match_end == 0) {
      match_end = next_char(text, i);
      match = vocab_->unk_id();
    }
    out.push_back({match, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(match_end)});
    i = match_end;
  }
}

void Segmenter::segment_raw(std::string_view text, std::vector<Segment>& out) const {
  if (algorithm_ == SegmentAlgorithm::Viterbi) {
    viterbi(text, out);
  } else {
    greedy(text, out);
  }
}

std::vector<Segment> Segmenter::segment_raw(std::string_view text) const {
  std::vector<Segment> out;
  segment_raw(text, out);
  return out;
}

std::string Segmenter::prepare(std::string_view pretoken) const {
  if (!vocab_->uses_marker()) return std::string(pretoken);
  std::string s(kBoundaryMarker);
  s.append(pretoken);
  return s;
}

std::vector<std::string> Segmenter::pieces(std::string_view pretoken) const {
  if (pretoken.empty()) throw Error("cannot segment an empty pretoken");
  std::vector<std::string> out;
  for (const auto& seg : segment_raw(prepare(pretoken))) out.push_back(vocab_->piece(seg.id));
  return out;
}

std::vector<std::string> Segmenter::surfaces(std::string_view pretoken) const {
  if (pretoken.empty()) throw Error("cannot segment an empty pretoken");
  const std::string text = prepare(pretoken);
  std::vector<std::string> out;
  for (const auto& seg : segment_raw(text)) {
    auto s = strip_markers(std::string_view(text).substr(seg.begin, seg.end - seg.begin));
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

double Segmenter::score(const std::vector<Segment>& segments) const {
  double total = 0.0;
  for (const auto& s : segments) total += vocab_->score(s.id);
  return total;
}

std::vector<std::string> segment_viterbi(std::string_view pretoken, const Vocabulary& vocab) {
  return Segmenter(vocab, SegmentAlgorithm::Viterbi).pieces(pretoken);
}

std::vector<std::string> segment_greedy(std::string_view pretoken, const Vocabulary& vocab) {
  return Segmenter(vocab, SegmentAlgorithm::Greedy).pieces(pretoken);
}

// CorpusTokenizer

CorpusTokenizer::CorpusTokenizer(const Segmenter& segmenter, TokenizeOptions options)
    : segmenter_(&segmenter), options_(options), pretokenizer_(options.pre_segmented) {}

void CorpusTokenizer::append_span(std::string_view text, TokenStream& out) const {
  thread_local std::vector<Segment> segments;
  segments.clear();
  segmenter_->segment_raw(text, segments);
  const std::size_t first = out.size();
  for (const auto& seg : segments) {
    const auto chars = surface_length(text.substr(seg.begin, seg.end - seg.begin));
    out.push_back({seg.id, static_cast<std::uint32_t>(chars), false, false});
  }
  if (out.size() > first) {
    out[first].word_initial = true;
    out.back().word_final = true;
  }
}

std::string CorpusTokenizer::prepare_line(std::string_view line) const {
  const bool marker = segmenter_->vocab().uses_marker();
  std::string text;
  text.reserve(line.size() + 8);
  Pretokenizer words_only(true);
  bool first = true;
  words_only.for_each(line, [&](std::string_view word) {
    if (marker) {
      text.append(kBoundaryMarker);
    } else if (!first) {
      text.push_back(' ');
    }
    text.append(word);
    first = false;
  });
  return text;
}

void CorpusTokenizer::tokenize_line(std::string_view line, TokenStream& out) const {
  if (options_.pretokenized) {
    thread_local std::string buf;
    pretokenizer_.for_each(line, [&](std::string_view pretoken) {
      if (segmenter_->vocab().uses_marker()) {
        buf.assign(kBoundaryMarker);
        buf.append(pretoken);
        append_span(buf, out);
      } else {
        append_span(pretoken, out);
      }
    });
  } else {
    const std::string text = prepare_line(line);
    if (!text.empty()) append_span(text, out);
  }
}

TokenStream tokenize_corpus(const Corpus& corpus, const Vocabulary& vocab, bool pretokenized) {
  Segmenter segmenter(vocab);
  CorpusTokenizer tokenizer(segmenter, {.pretokenized = pretokenized});
  TokenStream out;
  corpus.for_each_line([&](const std::string& line) { tokenizer.tokenize_line(line, out); });
  return out;
}

}  // namespace morphlens
