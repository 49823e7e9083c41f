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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morphlens {

using CodePoint = char32_t;

// Word-boundary marker prepended to word-initial pieces (U+2581).
inline constexpr std::string_view kBoundaryMarker = "\xE2\x96\x81";
inline constexpr CodePoint kBoundaryMarkerCp = 0x2581;

// Unicode general categories. The numeric values match the byte encoding
// used by tools/gen_unicode_tables.py.
enum class GeneralCategory : std::uint8_t {
  Cn, Lu, Ll, Lt, Lm, Lo, Mn, Mc, Me, Nd, Nl, No,
  Pc, Pd, Ps, Pe, Pi, Pf, Po, Sm, Sc, Sk, So,
  Zs, Zl, Zp, Cc, Cf, Cs, Co,
};

// Version of the Unicode Character Database the category table was built from.
const char* unicode_version();

GeneralCategory general_category(CodePoint cp);

inline bool is_punctuation(GeneralCategory c) {
  return c >= GeneralCategory::Pc && c <= GeneralCategory::Po;
}
inline bool is_letter(GeneralCategory c) {
  return c >= GeneralCategory::Lu && c <= GeneralCategory::Lo;
}

// Simple one-to-one lowercase mapping; identity where none exists.
CodePoint to_lower(CodePoint cp);

bool is_punctuation(CodePoint cp);
bool is_decimal_digit(CodePoint cp);
// The White_Space binary property.
bool is_white_space(CodePoint cp);

namespace utf8 {

// Decodes one scalar value starting at `pos`. On success advances `pos` and
// returns the scalar; on malformed input (including surrogates and overlong
// forms) returns nullopt and leaves `pos` unchanged.
std::optional<CodePoint> decode(std::string_view s, std::size_t& pos);

// Offset of the first invalid byte, or nullopt if `s` is valid UTF-8.
std::optional<std::size_t> find_invalid(std::string_view s);

void append(std::string& out, CodePoint cp);

// Decodes a string already known to be valid.
std::vector<CodePoint> to_code_points(std::string_view s);

// Number of scalar values in a valid string.
std::size_t length(std::string_view s);

}  // namespace utf8

// Applies to_lower to every scalar of a valid string. Keeps the scalar count.
std::string fold_case(std::string_view s);

// Removes every occurrence of the boundary marker.
std::string strip_markers(std::string_view s);

// Length in scalar values after removing boundary markers.
std::size_t surface_length(std::string_view s);

}  // namespace morphlens
