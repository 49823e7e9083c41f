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

#include "morphlens/morph_eval.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "morphlens/error.h"
#include "morphlens/unicode.h"

namespace morphlens {

std::optional<SegmentationRef> make_ref(std::string word, std::vector<std::string> morphs) {
  if (morphs.empty()) return std::nullopt;
  std::string joined;
  Boundaries boundaries;
  std::size_t offset = 0;
  for (const auto& m : morphs) {
    if (m.empty()) return std::nullopt;
    joined += m;
    offset += utf8::length(m);
    boundaries.insert(offset);
  }
  if (joined != word) return std::nullopt;
  boundaries.erase(offset);
  return SegmentationRef{std::move(word), std::move(morphs), std::move(boundaries)};
}

RefLoadResult parse_refs(std::string_view text, const std::string& source, RefOptions options) {
  RefLoadResult result;
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
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos || utf8::find_invalid(line)) {
      ++result.malformed;
      result.warnings.push_back(where + "malformed reference line skipped");
      continue;
    }
    std::vector<std::string> morphs;
    std::string_view rest = line.substr(tab + 1);
    while (true) {
      const auto bar = rest.find('|');
      morphs.emplace_back(options.casefold ? fold_case(rest.substr(0, bar)) : std::string(rest.substr(0, bar)));
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
    auto word = std::string(line.substr(0, tab));
    if (options.casefold) word = fold_case(word);
    auto ref = make_ref(std::move(word), std::move(morphs));
    if (!ref) {
      ++result.rejected;
      result.warnings.push_back(where + "morphs do not concatenate to the word; skipped");
      continue;
    }
    result.refs.push_back(std::move(*ref));
  }
  return result;
}

RefLoadResult load_refs(const std::filesystem::path& path, RefOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open reference file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_refs(buf.str(), path.string(), options);
}

WordSegmenter make_word_segmenter(const Segmenter& segmenter) {
  return [&segmenter](const std::string& word) { return segmenter.surfaces(word); };
}

Boundaries predicted_boundaries(const std::vector<std::string>& tokens) {
  Boundaries out;
  std::size_t offset = 0;
  for (const auto& t : tokens) {
    offset += surface_length(t);
    out.insert(offset);
  }
  out.erase(0);
  out.erase(offset);
  return out;
}

AlignmentCounts compare_boundaries(const Boundaries& predicted, const Boundaries& reference) {
  AlignmentCounts c;
  c.pred_total = predicted.size();
  c.ref_total = reference.size();
  for (auto b : predicted) c.tp += reference.count(b);
  return c;
}

AlignmentResult score_counts(const AlignmentCounts& counts, std::size_t words) {
  AlignmentResult r;
  r.counts = counts;
  r.words = words;
  r.precision = counts.pred_total ? static_cast<double>(counts.tp) / static_cast<double>(counts.pred_total) : 0.0;
  r.recall = counts.ref_total ? static_cast<double>(counts.tp) / static_cast<double>(counts.ref_total) : 0.0;
  r.f1 = (r.precision + r.recall) > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

namespace {

std::vector<std::string> run_segmenter(const WordSegmenter& segmenter, const std::string& word) {
  try {
    return segmenter(word);
  } catch (const std::exception& e) {
    throw Error("segmenter failed on '" + word + "': " + e.what());
  }
}

}  // namespace

AlignmentResult eval_full(const WordSegmenter& segmenter, const std::vector<SegmentationRef>& refs) {
  if (refs.empty()) throw Error("eval_full: no references");
  // Group alternative references of the same surface form, keeping first-seen order.
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<const SegmentationRef*>> groups;
  for (const auto& r : refs) {
    auto [it, inserted] = slot.emplace(r.word, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&r);
  }
  AlignmentCounts total;
  for (const auto& group : groups) {
    const auto predicted = predicted_boundaries(run_segmenter(segmenter, group.front()->word));
    AlignmentCounts best = compare_boundaries(predicted, group.front()->boundaries);
    double best_f1 = score_counts(best).f1;
    for (std::size_t i = 1; i < group.size(); ++i) {
      auto c = compare_boundaries(predicted, group[i]->boundaries);
      const double f1 = score_counts(c).f1;
      if (f1 > best_f1) {
        best = c;
        best_f1 = f1;
      }
    }
    total += best;
  }
  return score_counts(total, groups.size());
}

RefSubsets derive_subsets(const std::vector<SegmentationRef>& refs) {
  RefSubsets out;
  for (const auto& r : refs) {
    if (r.morphs.size() < 3 || r.boundaries.empty()) continue;
    SegmentationRef stem = r;
    stem.boundaries = {*r.boundaries.begin()};
    SegmentationRef suffixes = r;
    suffixes.boundaries.erase(suffixes.boundaries.begin());
    out.stem_suffix.push_back(std::move(stem));
    out.suffix_suffix.push_back(std::move(suffixes));
  }
  return out;
}

MorphScoreResult morphscore(const WordSegmenter& segmenter, const std::vector<SegmentationRef>& refs,
                            const Vocabulary& vocab, MorphScoreMode mode) {
  MorphScoreResult result;
  for (const auto& r : refs) {
    if (r.boundaries.size() != 1) {
      throw Error("morphscore: reference '" + r.word + "' has " + std::to_string(r.boundaries.size()) +
                  " boundaries, expected exactly 1");
    }
  }
  for (const auto& r : refs) {
    const bool in_vocab = vocab.contains(r.word) ||
                          (vocab.uses_marker() && vocab.contains(std::string(kBoundaryMarker) + r.word));
    if (in_vocab) {
      ++result.in_vocab;
      if (mode == MorphScoreMode::ExcludeVocab) continue;
      ++result.n_evaluated;
      result.counts += AlignmentCounts{1, 1, 1};
      continue;
    }
    ++result.n_evaluated;
    const auto predicted = predicted_boundaries(run_segmenter(segmenter, r.word));
    result.counts += compare_boundaries(predicted, r.boundaries);
  }
  const auto scored = score_counts(result.counts);
  result.recall = scored.recall;
  result.precision = scored.precision;
  result.f1 = scored.f1;
  return result;
}

}  // namespace morphlens
