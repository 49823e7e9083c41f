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

// Multi-language runs: corpus -> tokens -> metrics -> one comparison table.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphlens/bigram.h"
#include "morphlens/corpus.h"
#include "morphlens/tokenizer.h"
#include "morphlens/unigram.h"

namespace morphlens {

enum class OutputFormat { Tsv, Csv, Json };

OutputFormat parse_output_format(std::string_view s);
std::string_view to_string(OutputFormat f);

struct AnalysisOptions {
  WindowConfig window;
  UnigramOptions unigram;
  TokenizeOptions tokenize;
  SegmentAlgorithm algorithm = SegmentAlgorithm::Viterbi;
};

struct LanguageSpec {
  std::string name;
  std::filesystem::path corpus;
  std::filesystem::path vocab;
  std::string group;  // label only, never used in computation
};

struct RunConfig {
  std::vector<LanguageSpec> languages;
  AnalysisOptions analysis;
  OutputFormat format = OutputFormat::Tsv;
  bool percent = false;
  // Column name; a leading '-' sorts descending.
  std::string sort_by = "eta";
  // 0: MORPHLENS_WORKERS, else hardware concurrency.
  std::size_t workers = 0;

  // YAML document; relative paths resolve against `base_dir`. Throws
  // ConfigError.
  static RunConfig parse(std::string_view text, const std::filesystem::path& base_dir = {},
                         const std::string& source = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  // Checks paths and ranges. Throws ConfigError.
  void validate() const;
};

struct LanguageMetrics {
  std::uint64_t ctc = 0, ccc = 0, cbc = 0, cwc = 0, csc = 0;
  double av = 0.0, eta = 0.0, au = 0.0, lr = 0.0;
  double mattr = 0.0, mtl = 0.0, re = 0.0, s = 0.0, mwl = 0.0;
  double av_min = 0.0, eta_min = 0.0, au_min = 0.0;
  std::uint64_t lexical_types = 0, lexicalized_types = 0, measured_types = 0;

  bool operator==(const LanguageMetrics&) const = default;
};

// Single pass over the corpus. Word-level metrics (CWC, MWL, S) always use
// pretokenized words, whatever the tokenization mode.
LanguageMetrics analyze(const Corpus& corpus, const Vocabulary& vocab,
                        const AnalysisOptions& options = {});

// Per-type bigram report for one corpus.
BigramReport bigram_corpus(const Corpus& corpus, const Vocabulary& vocab,
                           const AnalysisOptions& options = {});

// Unigram report for one corpus, word metrics included.
UnigramReport unigram_corpus(const Corpus& corpus, const Vocabulary& vocab,
                             const AnalysisOptions& options = {});

struct ReportRow {
  std::string language;
  std::string group;
  bool ok = true;
  std::string error;
  LanguageMetrics metrics;

  bool operator==(const ReportRow&) const = default;
};

struct ComparisonReport {
  std::vector<ReportRow> rows;
  std::string sort_by = "eta";

  bool failed() const;
  bool operator==(const ComparisonReport&) const = default;
};

// Column names accepted by sort_rows, in emit order.
const std::vector<std::string>& report_columns();

// Stable sort by a column; failed rows go last.
void sort_rows(ComparisonReport& report, const std::string& sort_by);

std::size_t resolve_workers(std::size_t requested);

// Runs every language (concurrently), isolating failures per row.
ComparisonReport run(const RunConfig& config);

// Percent mode multiplies every ratio column by 100 except AV, MTL and MWL.
std::string emit(const ComparisonReport& report, OutputFormat format, bool percent);

ComparisonReport report_from_json(std::string_view json);

}  // namespace morphlens
