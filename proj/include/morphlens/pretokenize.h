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

#include <string>
#include <string_view>
#include <vector>

namespace morphlens {

// Splits lines into word units.
//
// Maximal runs of White_Space separate pretokens. Unless the input is
// pre-segmented, every maximal run of Punctuation-category characters also
// becomes a pretoken of its own. Pretokens are never empty and never split
// a scalar value.
class Pretokenizer {
 public:
  Pretokenizer() = default;
  // pre_segmented: whitespace alone marks word boundaries (input already run
  // through an external word segmenter).
  explicit Pretokenizer(bool pre_segmented) : pre_segmented_(pre_segmented) {}

  bool pre_segmented() const { return pre_segmented_; }

  std::vector<std::string> operator()(std::string_view line) const;

  // Calls `emit(std::string_view)` for each pretoken without allocating.
  template <typename Emit>
  void for_each(std::string_view line, Emit&& emit) const;

  std::size_t count(std::string_view line) const;

 private:
  bool pre_segmented_ = false;
};

std::vector<std::string> pretokenize(std::string_view line);

// False iff the type contains a Punctuation (P*) or decimal digit (Nd)
// character. Boundary markers are ignored.
bool is_lexical(std::string_view type);

namespace detail {

enum class CharClass { Space, Punct, Other };

CharClass classify_at(std::string_view s, std::size_t& pos);

}  // namespace detail

template <typename Emit>
void Pretokenizer::for_each(std::string_view line, Emit&& emit) const {
  std::size_t pos = 0;
  std::size_t start = 0;
  auto current = detail::CharClass::Space;
  while (pos < line.size()) {
    const std::size_t at = pos;
    auto cls = detail::classify_at(line, pos);
    if (pre_segmented_ && cls == detail::CharClass::Punct) cls = detail::CharClass::Other;
    if (cls != current) {
      if (current != detail::CharClass::Space) emit(line.substr(start, at - start));
      start = at;
      current = cls;
    }
  }
  if (current != detail::CharClass::Space) emit(line.substr(start));
}

}  // namespace morphlens
