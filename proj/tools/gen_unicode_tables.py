#!/usr/bin/env python3
# Copyright 2026 The morphlens Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the general-category and lowercase tables and the BMP test fixture.

Usage: gen_unicode_tables.py <repo-root>

The output depends on the Unicode Character Database bundled with the running
Python (unicodedata.unidata_version). The checked-in files were produced with
UCD 13.0.0; regenerate both files together when bumping the version.
"""
import sys
import unicodedata
from pathlib import Path

CATEGORIES = [
    "Cn", "Lu", "Ll", "Lt", "Lm", "Lo", "Mn", "Mc", "Me", "Nd", "Nl", "No",
    "Pc", "Pd", "Ps", "Pe", "Pi", "Pf", "Po", "Sm", "Sc", "Sk", "So",
    "Zs", "Zl", "Zp", "Cc", "Cf", "Cs", "Co",
]
INDEX = {c: i for i, c in enumerate(CATEGORIES)}
MAX_CP = 0x10FFFF


def category(cp):
    return INDEX[unicodedata.category(chr(cp))]


def main():
    root = Path(sys.argv[1])
    ranges = []
    start, current = 0, category(0)
    for cp in range(1, MAX_CP + 1):
        c = category(cp)
        if c != current:
            ranges.append((start, cp - 1, current))
            start, current = cp, c
    ranges.append((start, MAX_CP, current))
    # Unassigned ranges are implied by gaps.
    ranges = [r for r in ranges if r[2] != INDEX["Cn"]]

    out = root / "src" / "unicode_data.inc"
    with out.open("w", encoding="ascii") as f:
        f.write("// Generated by tools/gen_unicode_tables.py. Do not edit.\n")
        f.write(f"// Unicode Character Database {unicodedata.unidata_version}\n")
        f.write(f'#define MORPHLENS_UCD_VERSION "{unicodedata.unidata_version}"\n')
        f.write("static constexpr CategoryRange kCategoryRanges[] = {\n")
        for lo, hi, c in ranges:
            f.write(f"    {{0x{lo:04X}, 0x{hi:04X}, GeneralCategory::{CATEGORIES[c]}}},\n")
        f.write("};\n")
        # One-to-one lowercase mappings only; multi-character results are skipped.
        f.write("static constexpr LowerMapping kLowerMappings[] = {\n")
        for cp in range(MAX_CP + 1):
            if 0xD800 <= cp <= 0xDFFF:
                continue
            low = chr(cp).lower()
            if len(low) == 1 and ord(low) != cp:
                f.write(f"    {{0x{cp:04X}, 0x{ord(low):04X}}},\n")
        f.write("};\n")

    fixture = root / "tests" / "data" / "bmp_general_category.bin"
    fixture.write_bytes(bytes(category(cp) for cp in range(0x10000)))
    print(f"UCD {unicodedata.unidata_version}: {len(ranges)} ranges")


if __name__ == "__main__":
    main()
