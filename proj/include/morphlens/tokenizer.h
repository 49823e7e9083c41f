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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphlens/corpus.h"
#include "morphlens/pretokenize.h"

namespace morphlens {

using PieceId = std::uint32_t;

inline constexpr std::string_view kDefaultUnkPiece = "<unk>";
// Penalty subtracted from the lowest piece score to score unknown characters.
inline constexpr double kUnkPenalty = 10.0;

enum class MarkerMode { Auto, On, Off };

// Unigram-LM subword vocabulary: unique pieces with natural-log scores.
//
// The unknown piece always has an id. If the source lists it (by default
// "<unk>") that entry is used and excluded from matching; otherwise a
// synthetic one is appended after the listed pieces. size() counts listed
// pieces only; type_count() includes a synthetic unk.
class Vocabulary {
 public:
  // Reads a `piece<TAB>logprob` file. Throws ParseError with the line number
  // on malformed lines, duplicate pieces, or non-numeric scores.
  static Vocabulary load(const std::filesystem::path& path, MarkerMode marker = MarkerMode::Auto);
  static Vocabulary parse(std::string_view text, std::string source = "<memory>",
                          MarkerMode marker = MarkerMode::Auto);
  static Vocabulary from_pieces(const std::vector<std::pair<std::string, double>>& pieces,
                                MarkerMode marker = MarkerMode::Auto);

  std::size_t size() const { return listed_; }
  std::size_t type_count() const { return pieces_.size(); }

  const std::string& piece(PieceId id) const { return pieces_[id]; }
  double score(PieceId id) const { return scores_[id]; }
  std::optional<PieceId> find(std::string_view piece) const;
  bool contains(std::string_view piece) const { return find(piece).has_value(); }

  PieceId unk_id() const { return unk_; }
  const std::string& unk_piece() const { return pieces_[unk_]; }
  double unk_score() const { return scores_[unk_]; }

  // Whether segmentation prepends the boundary marker to each span.
  bool uses_marker() const { return uses_marker_; }

  const std::string& source() const { return source_; }

 private:
  friend class Segmenter;
  void add(std::string piece, double score, const std::string& source, std::size_t line);
  void finish(MarkerMode marker);

  std::string source_;
  std::vector<std::string> pieces_;
  std::vector<double> scores_;
  std::unordered_map<std::string, PieceId> index_;
  std::size_t listed_ = 0;
  PieceId unk_ = 0;
  bool uses_marker_ = false;
};

// One piece of a segmentation; [begin, end) are byte offsets into the text
// that was segmented (marker included).
struct Segment {
  PieceId id;
  std::uint32_t begin;
  std::uint32_t end;
};

enum class SegmentAlgorithm { Viterbi, Greedy };

// Segments text into vocabulary pieces. Immutable after construction and
// safe to share between threads.
//
// Viterbi maximises the sum of piece scores over all covers of the text.
// A character with no single-character piece may be covered by the unknown
// piece (score: lowest piece score minus kUnkPenalty). Ties go to fewer
// pieces, then to the lexicographically smallest piece sequence.
// Greedy takes the longest matching piece left to right.
class Segmenter {
 public:
  explicit Segmenter(const Vocabulary& vocab, SegmentAlgorithm algorithm = SegmentAlgorithm::Viterbi);

  const Vocabulary& vocab() const { return *vocab_; }
  SegmentAlgorithm algorithm() const { return algorithm_; }

  // Segments `text` exactly as given; the overload taking `out` appends.
  void segment_raw(std::string_view text, std::vector<Segment>& out) const;
  std::vector<Segment> segment_raw(std::string_view text) const;

  // Text actually segmented for a word: the pretoken, marker-prefixed when
  // the vocabulary uses markers.
  std::string prepare(std::string_view pretoken) const;

  // Piece strings for a pretoken (unknown characters map to the unk piece).
  std::vector<std::string> pieces(std::string_view pretoken) const;
  // Surface text of each piece with markers removed; concatenates back to
  // the pretoken. Empty surfaces (a lone marker piece) are dropped.
  std::vector<std::string> surfaces(std::string_view pretoken) const;

  // Sum of scores of a segmentation.
  double score(const std::vector<Segment>& segments) const;

 private:
  struct Node {
    std::vector<std::pair<unsigned char, std::uint32_t>> children;
    std::int32_t piece = -1;
  };

  std::uint32_t child(std::uint32_t node, unsigned char byte) const;
  void viterbi(std::string_view text, std::vector<Segment>& out) const;
  void greedy(std::string_view text, std::vector<Segment>& out) const;

  const Vocabulary* vocab_;
  SegmentAlgorithm algorithm_;
  std::vector<Node> trie_;
};

std::vector<std::string> segment_viterbi(std::string_view pretoken, const Vocabulary& vocab);
std::vector<std::string> segment_greedy(std::string_view pretoken, const Vocabulary& vocab);

// A token of a tokenized corpus. word_initial/word_final delimit spans:
// pretokens in pretokenized mode, whole lines otherwise.
struct Token {
  PieceId id;
  std::uint32_t chars;  // surface length in scalar values, markers excluded
  bool word_initial;
  bool word_final;
};

using TokenStream = std::vector<Token>;

struct TokenizeOptions {
  bool pretokenized = true;
  bool pre_segmented = false;
};

// Turns corpus lines into tokens with span flags.
class CorpusTokenizer {
 public:
  CorpusTokenizer(const Segmenter& segmenter, TokenizeOptions options);

  // Appends the tokens of one line to `out`.
  void tokenize_line(std::string_view line, TokenStream& out) const;

  // Line text segmented as a single span in non-pretokenized mode: runs of
  // whitespace collapse to one marker (or one space without markers).
  std::string prepare_line(std::string_view line) const;

  const Segmenter& segmenter() const { return *segmenter_; }
  const TokenizeOptions& options() const { return options_; }
  const Pretokenizer& pretokenizer() const { return pretokenizer_; }

 private:
  void append_span(std::string_view text, TokenStream& out) const;

  const Segmenter* segmenter_;
  TokenizeOptions options_;
  Pretokenizer pretokenizer_;
};

TokenStream tokenize_corpus(const Corpus& corpus, const Vocabulary& vocab, bool pretokenized);

}  // namespace morphlens
