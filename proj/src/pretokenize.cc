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

#include "morphlens/pretokenize.h"

#include "morphlens/unicode.h"

namespace morphlens {

namespace detail {

CharClass classify_at(std::string_view s, std::size_t& pos) {
  const std::size_t at = pos;
  auto cp = utf8::decode(s, pos);
  if (!cp) {
    // Invalid bytes are rejected by the corpus reader; treat strays as text.
    pos = at + 1;
    return CharClass::Other;
  }
  if (is_white_space(*cp)) return CharClass::Space;
  if (is_punctuation(*cp)) return CharClass::Punct;
  return CharClass::Other;
}

}  // namespace detail

std::vector<std::string> Pretokenizer::operator()(std::string_view line) const {
  std::vector<std::string> out;
  for_each(line, [&](std::string_view piece) { out.emplace_back(piece); });
  return out;
}

std::size_t Pretokenizer::count(std::string_view line) const {
  std::size_t n = 0;
  for_each(line, [&](std::string_view) { ++n; });
  return n;
}

std::vector<std::string> pretokenize(std::string_view line) { return Pretokenizer{}(line); }

bool is_lexical(std::string_view type) {
  std::size_t pos = 0;
  while (pos < type.size()) {
    const std::size_t at = pos;
    auto cp = utf8::decode(type, pos);
    if (!cp) {
      pos = at + 1;
      continue;
    }
    if (*cp == kBoundaryMarkerCp) continue;
    if (is_punctuation(*cp) || is_decimal_digit(*cp)) return false;
  }
  return true;
}

}  // namespace morphlens
