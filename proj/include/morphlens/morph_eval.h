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

// Boundary-alignment evaluation of segmentations against reference morphs.
//
// A boundary is a character offset strictly inside a word. A segmentation
// predicts the cumulative end offsets of its tokens; a reference contributes
// the cumulative end offsets of its morphs. Counts are micro-aggregated
// over words.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphlens/tokenizer.h"

namespace morphlens {

using Boundaries = std::set<std::size_t>;

struct SegmentationRef {
  std::string word;
  std::vector<std::string> morphs;
  // Interior boundaries. Normally derived from morphs; the stem-suffix and
  // suffix-suffix subsets keep only part of them.
  Boundaries boundaries;
};

// Validates that the morphs concatenate to the word. Returns nullopt when
// they do not.
std::optional<SegmentationRef> make_ref(std::string word, std::vector<std::string> morphs);

struct RefLoadResult {
  std::vector<SegmentationRef> refs;
  std::size_t rejected = 0;   // morph concatenation differs from the word
  std::size_t malformed = 0;  // not `word<TAB>m1|m2|...`
  std::vector<std::string> warnings;
};

struct RefOptions {
  // Lowercase words and morphs (simple one-to-one mappings) before use.
  bool casefold = false;
};

RefLoadResult load_refs(const std::filesystem::path& path, RefOptions options = {});
RefLoadResult parse_refs(std::string_view text, const std::string& source = "<memory>",
                         RefOptions options = {});

// Tokens of a word, markers removed.
using WordSegmenter = std::function<std::vector<std::string>(const std::string&)>;

WordSegmenter make_word_segmenter(const Segmenter& segmenter);

// Interior boundaries implied by a sequence of token surfaces.
Boundaries predicted_boundaries(const std::vector<std::string>& tokens);

struct AlignmentCounts {
  std::uint64_t tp = 0;
  std::uint64_t pred_total = 0;
  std::uint64_t ref_total = 0;

  AlignmentCounts& operator+=(const AlignmentCounts& o) {
    tp += o.tp;
    pred_total += o.pred_total;
    ref_total += o.ref_total;
    return *this;
  }
};

struct AlignmentResult {
  AlignmentCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t words = 0;
};

AlignmentResult score_counts(const AlignmentCounts& counts, std::size_t words = 0);

AlignmentCounts compare_boundaries(const Boundaries& predicted, const Boundaries& reference);

// Full boundary P/R/F1. Words with several references are scored against
// the reference giving the highest per-word F1.
AlignmentResult eval_full(const WordSegmenter& segmenter, const std::vector<SegmentationRef>& refs);

struct RefSubsets {
  std::vector<SegmentationRef> stem_suffix;    // first boundary only
  std::vector<SegmentationRef> suffix_suffix;  // all but the first
};

// Only words with at least three morphs take part.
RefSubsets derive_subsets(const std::vector<SegmentationRef>& refs);

enum class MorphScoreMode { ExcludeVocab, CreditVocab };

struct MorphScoreResult {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  std::size_t n_evaluated = 0;
  std::size_t in_vocab = 0;
  AlignmentCounts counts;
};

// Recall of the single stem-suffix boundary per word. Words whose full form
// is a vocabulary piece are skipped (ExcludeVocab) or counted as one
// correctly predicted boundary (CreditVocab). Throws if a reference does not
// have exactly one boundary.
MorphScoreResult morphscore(const WordSegmenter& segmenter, const std::vector<SegmentationRef>& refs,
                            const Vocabulary& vocab, MorphScoreMode mode);

}  // namespace morphlens
