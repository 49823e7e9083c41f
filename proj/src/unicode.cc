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

#include "morphlens/unicode.h"

#include <algorithm>
#include <iterator>

namespace morphlens {

namespace {

struct CategoryRange {
  CodePoint lo;
  CodePoint hi;
  GeneralCategory category;
};

struct LowerMapping {
  CodePoint from;
  CodePoint to;
};

#include "unicode_data.inc"

}  // namespace

const char* unicode_version() { return MORPHLENS_UCD_VERSION; }

GeneralCategory general_category(CodePoint cp) {
  const auto* end = std::end(kCategoryRanges);
  const auto* it = std::upper_bound(std::begin(kCategoryRanges), end, cp,
                                    [](CodePoint v, const CategoryRange& r) { return v < r.lo; });
  if (it == std::begin(kCategoryRanges)) return GeneralCategory::Cn;
  --it;
  return cp <= it->hi ? it->category : GeneralCategory::Cn;
}

CodePoint to_lower(CodePoint cp) {
  if (cp < 0x80) return cp >= 'A' && cp <= 'Z' ? cp + 0x20 : cp;
  const auto* end = std::end(kLowerMappings);
  const auto* it = std::lower_bound(std::begin(kLowerMappings), end, cp,
                                    [](const LowerMapping& m, CodePoint v) { return m.from < v; });
  return it != end && it->from == cp ? it->to : cp;
}

bool is_punctuation(CodePoint cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F && cp != 0x24 && cp != 0x2B) ||
           (cp >= 0x3A && cp <= 0x40 && cp != 0x3C && cp != 0x3D && cp != 0x3E) ||
           (cp >= 0x5B && cp <= 0x60 && cp != 0x5E && cp != 0x60) ||
           cp == 0x7B || cp == 0x7D;
  }
  return is_punctuation(general_category(cp));
}

bool is_decimal_digit(CodePoint cp) {
  if (cp < 0x80) return cp >= '0' && cp <= '9';
  return general_category(cp) == GeneralCategory::Nd;
}

bool is_white_space(CodePoint cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

namespace utf8 {

std::optional<CodePoint> decode(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) return std::nullopt;
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len;
  CodePoint cp;
  CodePoint min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
  pos += len;
  return cp;
}

std::optional<std::size_t> find_invalid(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    // ASCII fast path
    if (static_cast<unsigned char>(s[pos]) < 0x80) {
      ++pos;
      continue;
    }
    const std::size_t at = pos;
    if (!decode(s, pos)) return at;
  }
  return std::nullopt;
}

void append(std::string& out, CodePoint cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::vector<CodePoint> to_code_points(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto cp = decode(s, pos);
    if (!cp) {
      // Skip a stray byte; callers validate beforehand.
      ++pos;
      continue;
    }
    out.push_back(*cp);
  }
  return out;
}

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace utf8

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (CodePoint cp : utf8::to_code_points(s)) utf8::append(out, to_lower(cp));
  return out;
}

std::string strip_markers(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s.substr(pos, kBoundaryMarker.size()) == kBoundaryMarker) {
      pos += kBoundaryMarker.size();
      continue;
    }
    out.push_back(s[pos++]);
  }
  return out;
}

std::size_t surface_length(std::string_view s) {
  std::size_t n = utf8::length(s);
  std::size_t pos = 0;
  while ((pos = s.find(kBoundaryMarker, pos)) != std::string_view::npos) {
    --n;
    pos += kBoundaryMarker.size();
  }
  return n;
}

}  // namespace morphlens
