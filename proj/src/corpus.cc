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

#include "morphlens/corpus.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "morphlens/error.h"
#include "morphlens/random.h"
#include "morphlens/unicode.h"

namespace morphlens {

LineReader::LineReader(std::string source, std::unique_ptr<std::istream> in)
    : source_(std::move(source)), in_(std::move(in)) {}

LineReader::LineReader(std::string source, std::shared_ptr<const std::vector<std::string>> lines)
    : source_(std::move(source)), lines_(std::move(lines)) {}

LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;
LineReader::~LineReader() = default;

bool LineReader::next(std::string& line) {
  if (lines_) {
    if (lines_read_ >= lines_->size()) return false;
    line = (*lines_)[lines_read_++];
    return true;
  }
  if (!std::getline(*in_, line)) {
    if (in_->bad()) throw IoError(source_ + ": read failed");
    return false;
  }
  const std::uint64_t start = offset_;
  offset_ += line.size() + (in_->eof() ? 0 : 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (auto bad = utf8::find_invalid(line)) throw Utf8Error(source_, start + *bad);
  ++lines_read_;
  return true;
}

Corpus Corpus::from_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError(path.string() + ": no such file");
  }
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError(path.string() + ": cannot open for reading");
  Corpus c;
  c.name_ = path.string();
  c.path_ = path;
  return c;
}

Corpus Corpus::from_lines(std::vector<std::string> lines, std::string name) {
  for (const auto& l : lines) {
    if (l.find('\n') != std::string::npos) throw Error(name + ": line contains a newline");
    if (auto bad = utf8::find_invalid(l)) throw Utf8Error(name, *bad);
  }
  Corpus c;
  c.name_ = std::move(name);
  c.lines_ = std::make_shared<const std::vector<std::string>>(std::move(lines));
  return c;
}

Corpus Corpus::from_text(std::string text, std::string name) {
  Corpus c;
  c.name_ = std::move(name);
  c.text_ = std::make_shared<const std::string>(std::move(text));
  return c;
}

LineReader Corpus::open() const {
  if (lines_) return LineReader(name_, lines_);
  if (text_) return LineReader(name_, std::make_unique<std::istringstream>(*text_));
  auto in = std::make_unique<std::ifstream>(*path_, std::ios::binary);
  if (!*in) throw IoError(name_ + ": cannot open for reading");
  return LineReader(name_, std::move(in));
}

std::vector<std::string> Corpus::lines() const {
  std::vector<std::string> out;
  for_each_line([&](const std::string& l) { out.push_back(l); });
  return out;
}

std::uint64_t Corpus::line_count() const {
  if (lines_) return lines_->size();
  std::uint64_t n = 0;
  for_each_line([&](const std::string&) { ++n; });
  return n;
}

Corpus sample_lines(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("sample_lines: n must be positive");
  Rng rng(seed);
  std::vector<std::pair<std::uint64_t, std::string>> reservoir;
  reservoir.reserve(n);
  std::uint64_t i = 0;
  corpus.for_each_line([&](const std::string& line) {
    if (reservoir.size() < n) {
      reservoir.emplace_back(i, line);
    } else {
      const std::uint64_t j = rng.index(i + 1);
      if (j < n) reservoir[j] = {i, line};
    }
    ++i;
  });
  std::sort(reservoir.begin(), reservoir.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> lines;
  lines.reserve(reservoir.size());
  for (auto& [idx, line] : reservoir) lines.push_back(std::move(line));
  return Corpus::from_lines(std::move(lines), corpus.name() + "[sample]");
}

CorpusCounts corpus_counts(const Corpus& corpus, const Pretokenizer* words) {
  CorpusCounts counts;
  corpus.for_each_line([&](const std::string& line) {
    counts.cbc += line.size();
    counts.ccc += utf8::length(line);
    counts.csc += 1;
    if (words) counts.cwc += words->count(line);
  });
  return counts;
}

double byte_premium(const Corpus& target, const Corpus& reference) {
  const auto ref = corpus_counts(reference).cbc;
  if (ref == 0) throw Error("byte_premium: reference corpus " + reference.name() + " has no bytes");
  const auto tgt = corpus_counts(target).cbc;
  return static_cast<double>(tgt) / static_cast<double>(ref);
}

}  // namespace morphlens
