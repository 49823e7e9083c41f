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
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morphlens/pretokenize.h"

namespace morphlens {

// Single-consumer cursor over the lines of a corpus. Lines are yielded with
// the "\n" or "\r\n" terminator removed and are validated as UTF-8; an invalid
// byte raises Utf8Error carrying its absolute offset in the source.
class LineReader {
 public:
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;
  ~LineReader();

  // Reads the next line into `line`. Returns false at end of input.
  bool next(std::string& line);

  std::uint64_t lines_read() const { return lines_read_; }

 private:
  friend class Corpus;
  LineReader(std::string source, std::unique_ptr<std::istream> in);
  LineReader(std::string source, std::shared_ptr<const std::vector<std::string>> lines);

  std::string source_;
  std::unique_ptr<std::istream> in_;
  std::shared_ptr<const std::vector<std::string>> lines_;
  std::uint64_t offset_ = 0;
  std::uint64_t lines_read_ = 0;
};

// A line-oriented UTF-8 text source. Copies share the underlying data;
// iteration order is the file order and is deterministic.
class Corpus {
 public:
  // Throws IoError when the path does not name a readable file.
  static Corpus from_file(const std::filesystem::path& path);
  // Lines must not contain newlines; they are validated here.
  static Corpus from_lines(std::vector<std::string> lines, std::string name = "<memory>");
  // Splits `text` exactly like a file with the same bytes would be.
  static Corpus from_text(std::string text, std::string name = "<memory>");

  const std::string& name() const { return name_; }

  LineReader open() const;

  template <typename F>
  void for_each_line(F&& f) const {
    auto reader = open();
    std::string line;
    while (reader.next(line)) f(line);
  }

  std::vector<std::string> lines() const;
  std::uint64_t line_count() const;

 private:
  Corpus() = default;

  std::string name_;
  std::optional<std::filesystem::path> path_;
  std::shared_ptr<const std::string> text_;
  std::shared_ptr<const std::vector<std::string>> lines_;
};

// Alias matching the streaming read operation.
inline Corpus read_lines(const std::filesystem::path& path) { return Corpus::from_file(path); }

// Uniform sample of `n` lines without replacement in one pass (reservoir
// algorithm R driven by Rng(seed)). The sample keeps the original line order.
// Returns every line when the corpus has at most `n`.
Corpus sample_lines(const Corpus& corpus, std::size_t n, std::uint64_t seed);

struct CorpusCounts {
  std::uint64_t ccc = 0;  // scalar values, terminators excluded
  std::uint64_t cbc = 0;  // UTF-8 bytes, terminators excluded
  std::uint64_t cwc = 0;  // pretokens; 0 without a pretokenizer
  std::uint64_t csc = 0;  // lines
  std::optional<std::uint64_t> ctc;  // tokens, once tokenized
};

CorpusCounts corpus_counts(const Corpus& corpus, const Pretokenizer* words = nullptr);

// Ratio of UTF-8 byte counts, target over reference.
double byte_premium(const Corpus& target, const Corpus& reference);

}  // namespace morphlens
