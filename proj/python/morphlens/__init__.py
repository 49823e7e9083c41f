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

"""Tokenizer-aware corpus metrics: accessor variety, entropic efficiency,
unigram diversity, morphological alignment and significance tests."""

from morphlens._core import (
    ConfigError,
    Corpus,
    IoError,
    MorphlensError,
    ParseError,
    Segmenter,
    Utf8Error,
    Vocabulary,
    analyze,
    bigram_report,
    byte_premium,
    corpus_counts,
    eval_full,
    mattr,
    morphscore,
    parse_refs,
    pretokenize,
    renyi_efficiency,
    run,
    run_rows,
    sample_lines,
    stats,
    tokenize,
    ttr,
    unigram_report,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Corpus",
    "IoError",
    "MorphlensError",
    "ParseError",
    "Segmenter",
    "Utf8Error",
    "Vocabulary",
    "analyze",
    "bigram_report",
    "byte_premium",
    "corpus_counts",
    "eval_full",
    "mattr",
    "morphscore",
    "parse_refs",
    "pretokenize",
    "renyi_efficiency",
    "run",
    "run_rows",
    "sample_lines",
    "stats",
    "tokenize",
    "ttr",
    "unigram_report",
]
