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

#include "morphlens/report.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "morphlens/error.h"
#include "morphlens/unicode.h"

namespace morphlens {

OutputFormat parse_output_format(std::string_view s) {
  if (s == "tsv") return OutputFormat::Tsv;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + std::string(s) + "' (tsv, csv, json)");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Tsv: return "tsv";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
  }
  return "tsv";
}

// Configuration

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key, const std::string& source) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(source + ":" + std::to_string(node.Mark().line + 1) + ": bad value for '" +
                      key + "'");
  }
}

std::size_t positive(const YAML::Node& node, const std::string& key, const std::string& source) {
  const auto v = scalar<long long>(node, key, source);
  if (v < 1) {
    throw ConfigError(source + ":" + std::to_string(node.Mark().line + 1) + ": '" + key +
                      "' must be >= 1");
  }
  return static_cast<std::size_t>(v);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text, const std::filesystem::path& base_dir,
                           const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source + ": expected a mapping at top level");

  RunConfig c;
  auto& a = c.analysis;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const auto& v = kv.second;
    if (key == "window") {
      a.window.window = positive(v, key, source);
    } else if (key == "stride") {
      a.window.stride = positive(v, key, source);
    } else if (key == "full_windows_only") {
      a.window.full_windows_only = scalar<bool>(v, key, source);
    } else if (key == "lifetime_eta") {
      a.window.lifetime_eta = scalar<bool>(v, key, source);
    } else if (key == "mattr_window") {
      a.unigram.mattr_window = positive(v, key, source);
    } else if (key == "alpha") {
      a.unigram.alpha = scalar<double>(v, key, source);
    } else if (key == "pretokenize") {
      a.tokenize.pretokenized = scalar<bool>(v, key, source);
    } else if (key == "pre_segmented") {
      a.tokenize.pre_segmented = scalar<bool>(v, key, source);
    } else if (key == "algorithm") {
      const auto s = scalar<std::string>(v, key, source);
      if (s == "viterbi") {
        a.algorithm = SegmentAlgorithm::Viterbi;
      } else if (s == "greedy") {
        a.algorithm = SegmentAlgorithm::Greedy;
      } else {
        throw ConfigError(source + ": unknown algorithm '" + s + "' (viterbi, greedy)");
      }
    } else if (key == "format") {
      c.format = parse_output_format(scalar<std::string>(v, key, source));
    } else if (key == "percent") {
      c.percent = scalar<bool>(v, key, source);
    } else if (key == "sort_by") {
      c.sort_by = scalar<std::string>(v, key, source);
    } else if (key == "workers") {
      c.workers = positive(v, key, source);
    } else if (key == "languages") {
      if (!v.IsSequence()) throw ConfigError(source + ": 'languages' must be a list");
      for (const auto& entry : v) {
        const auto where = source + ":" + std::to_string(entry.Mark().line + 1);
        if (!entry.IsMap()) throw ConfigError(where + ": language entry must be a mapping");
        LanguageSpec lang;
        for (const auto& f : entry) {
          const auto field = f.first.as<std::string>();
          const auto value = scalar<std::string>(f.second, field, source);
          if (field == "name") {
            lang.name = value;
          } else if (field == "corpus") {
            lang.corpus = resolve(base_dir, value);
          } else if (field == "vocab") {
            lang.vocab = resolve(base_dir, value);
          } else if (field == "group") {
            lang.group = value;
          } else {
            throw ConfigError(where + ": unknown language field '" + field + "'");
          }
        }
        if (lang.name.empty() || lang.corpus.empty() || lang.vocab.empty()) {
          throw ConfigError(where + ": language needs name, corpus and vocab");
        }
        c.languages.push_back(std::move(lang));
      }
    } else {
      throw ConfigError(source + ":" + std::to_string(kv.first.Mark().line + 1) +
                        ": unknown key '" + key + "'");
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.parent_path(), path.string());
}

void RunConfig::validate() const {
  if (languages.empty()) throw ConfigError("config lists no languages");
  for (const auto& l : languages) {
    if (!std::filesystem::is_regular_file(l.corpus)) {
      throw ConfigError(l.name + ": corpus not found: " + l.corpus.string());
    }
    if (!std::filesystem::is_regular_file(l.vocab)) {
      throw ConfigError(l.name + ": vocabulary not found: " + l.vocab.string());
    }
  }
  if (analysis.window.window < 1 || analysis.window.stride < 1) {
    throw ConfigError("window and stride must be >= 1");
  }
  if (analysis.unigram.mattr_window < 1) throw ConfigError("mattr_window must be >= 1");
  if (!(analysis.unigram.alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  const std::string key = !sort_by.empty() && sort_by[0] == '-' ? sort_by.substr(1) : sort_by;
  const auto& cols = report_columns();
  if (std::find(cols.begin(), cols.end(), key) == cols.end()) {
    throw ConfigError("unknown sort_by column '" + sort_by + "'");
  }
}

// Analysis

namespace {

// Drives tokenization line by line and feeds optional consumers.
class CorpusPass {
 public:
  CorpusPass(const Vocabulary& vocab, const AnalysisOptions& options)
      : options_(options),
        segmenter_(vocab, options.algorithm),
        tokenizer_(segmenter_, options.tokenize),
        words_(options.tokenize.pre_segmented) {}

  void run(const Corpus& corpus, LanguageMetrics* counts, BigramTables* tables,
           UnigramAccumulator* unigram) {
    corpus.for_each_line([&](const std::string& line) {
      if (counts) {
        ++counts->csc;
        counts->cbc += line.size();
        counts->ccc += utf8::length(line);
      }
      stream_.clear();
      tokenizer_.tokenize_line(line, stream_);
      if (tables) tables->observe(stream_);
      if (unigram) unigram->add_tokens(stream_);
      if (unigram || counts) feed_words(line, counts, unigram);
    });
  }

 private:
  void feed_words(std::string_view line, LanguageMetrics* counts, UnigramAccumulator* unigram) {
    auto word = [&](std::size_t chars, std::size_t tokens) {
      if (counts) ++counts->cwc;
      if (unigram) unigram->add_word(chars, tokens);
    };
    if (options_.tokenize.pretokenized) {
      std::size_t chars = 0, tokens = 0;
      for (const auto& t : stream_) {
        chars += t.chars;
        ++tokens;
        if (t.word_final) {
          word(chars, tokens);
          chars = tokens = 0;
        }
      }
      return;
    }
    words_.for_each(line, [&](std::string_view w) {
      prepared_ = segmenter_.prepare(w);
      segments_.clear();
      segmenter_.segment_raw(prepared_, segments_);
      word(utf8::length(w), segments_.size());
    });
  }

  const AnalysisOptions& options_;
  Segmenter segmenter_;
  CorpusTokenizer tokenizer_;
  Pretokenizer words_;
  TokenStream stream_;
  std::vector<Segment> segments_;
  std::string prepared_;
};

}  // namespace

BigramReport bigram_corpus(const Corpus& corpus, const Vocabulary& vocab, const AnalysisOptions& options) {
  BigramTables tables(vocab.type_count(), options.window);
  CorpusPass(vocab, options).run(corpus, nullptr, &tables, nullptr);
  return finalize(tables, vocab);
}

UnigramReport unigram_corpus(const Corpus& corpus, const Vocabulary& vocab, const AnalysisOptions& options) {
  UnigramAccumulator unigram(options.unigram);
  CorpusPass(vocab, options).run(corpus, nullptr, nullptr, &unigram);
  return unigram.report();
}

LanguageMetrics analyze(const Corpus& corpus, const Vocabulary& vocab, const AnalysisOptions& options) {
  BigramTables tables(vocab.type_count(), options.window);
  UnigramAccumulator unigram(options.unigram);
  LanguageMetrics m;
  CorpusPass(vocab, options).run(corpus, &m, &tables, &unigram);

  const auto bigram = finalize(tables, vocab);
  const auto uni = unigram.report();
  m.ctc = uni.ctc;
  m.av = bigram.macro.av_mean;
  m.av_min = bigram.macro.av_min;
  m.eta = bigram.macro.eta_mean;
  m.eta_min = bigram.macro.eta_min;
  m.au = bigram.macro.au_mean;
  m.au_min = bigram.macro.au_min;
  m.lr = bigram.lr;
  m.lexical_types = bigram.lexical_count;
  m.lexicalized_types = bigram.filtered_count;
  m.measured_types = bigram.measured_count;
  m.mattr = uni.mattr;
  m.mtl = uni.mtl;
  m.re = uni.renyi_efficiency;
  m.s = uni.s;
  m.mwl = uni.mwl;
  return m;
}

// Report rows

namespace {

struct Column {
  const char* name;
  std::function<double(const LanguageMetrics&)> get;
  bool integer;
  bool percent;
};

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"av", [](const auto& m) { return m.av; }, false, false},
      {"eta", [](const auto& m) { return m.eta; }, false, true},
      {"au", [](const auto& m) { return m.au; }, false, true},
      {"lr", [](const auto& m) { return m.lr; }, false, true},
      {"mattr", [](const auto& m) { return m.mattr; }, false, true},
      {"mtl", [](const auto& m) { return m.mtl; }, false, false},
      {"re", [](const auto& m) { return m.re; }, false, true},
      {"s", [](const auto& m) { return m.s; }, false, true},
      {"mwl", [](const auto& m) { return m.mwl; }, false, false},
      {"av_min", [](const auto& m) { return m.av_min; }, false, false},
      {"eta_min", [](const auto& m) { return m.eta_min; }, false, true},
      {"au_min", [](const auto& m) { return m.au_min; }, false, true},
      {"ctc", [](const auto& m) { return static_cast<double>(m.ctc); }, true, false},
      {"ccc", [](const auto& m) { return static_cast<double>(m.ccc); }, true, false},
      {"cbc", [](const auto& m) { return static_cast<double>(m.cbc); }, true, false},
      {"cwc", [](const auto& m) { return static_cast<double>(m.cwc); }, true, false},
      {"csc", [](const auto& m) { return static_cast<double>(m.csc); }, true, false},
      {"lexical_types", [](const auto& m) { return static_cast<double>(m.lexical_types); }, true, false},
      {"lexicalized_types", [](const auto& m) { return static_cast<double>(m.lexicalized_types); }, true,
       false},
      {"measured_types", [](const auto& m) { return static_cast<double>(m.measured_types); }, true, false},
  };
  return cols;
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out{"language", "group"};
    for (const auto& c : columns()) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

bool ComparisonReport::failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.ok; });
}

void sort_rows(ComparisonReport& report, const std::string& sort_by) {
  const bool descending = !sort_by.empty() && sort_by[0] == '-';
  const std::string key = descending ? sort_by.substr(1) : sort_by;
  report.sort_by = sort_by;
  auto by_ok = [](const ReportRow& a, const ReportRow& b) { return a.ok && !b.ok; };
  if (key == "language" || key == "group") {
    auto text = [&](const ReportRow& r) -> const std::string& { return key == "language" ? r.language : r.group; };
    std::stable_sort(report.rows.begin(), report.rows.end(), [&](const ReportRow& a, const ReportRow& b) {
      if (a.ok != b.ok) return by_ok(a, b);
      return descending ? text(b) < text(a) : text(a) < text(b);
    });
    return;
  }
  const auto& cols = columns();
  const auto it = std::find_if(cols.begin(), cols.end(), [&](const Column& c) { return key == c.name; });
  if (it == cols.end()) throw ConfigError("unknown sort_by column '" + sort_by + "'");
  std::stable_sort(report.rows.begin(), report.rows.end(), [&](const ReportRow& a, const ReportRow& b) {
    if (a.ok != b.ok) return by_ok(a, b);
    const double x = it->get(a.metrics);
    const double y = it->get(b.metrics);
    return descending ? y < x : x < y;
  });
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MORPHLENS_WORKERS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("MORPHLENS_WORKERS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ComparisonReport run(const RunConfig& config) {
  config.validate();
  ComparisonReport report;
  report.rows.resize(config.languages.size());
  const std::size_t workers = std::min(resolve_workers(config.workers), config.languages.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < config.languages.size(); i = next++) {
      const auto& lang = config.languages[i];
      auto& row = report.rows[i];
      row.language = lang.name;
      row.group = lang.group;
      try {
        const auto vocab = Vocabulary::load(lang.vocab);
        const auto corpus = Corpus::from_file(lang.corpus);
        row.metrics = analyze(corpus, vocab, config.analysis);
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.metrics = {};
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  sort_rows(report, config.sort_by);
  return report;
}

// Emission

namespace {

std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string tsv_field(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

nlohmann::ordered_json metrics_json(const LanguageMetrics& m) {
  nlohmann::ordered_json j;
  for (const auto& c : columns()) {
    if (c.integer) {
      j[c.name] = static_cast<std::uint64_t>(c.get(m));
    } else {
      j[c.name] = c.get(m);
    }
  }
  return j;
}

}  // namespace

std::string emit(const ComparisonReport& report, OutputFormat format, bool percent) {
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["sort_by"] = report.sort_by;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
      nlohmann::ordered_json row;
      row["language"] = r.language;
      row["group"] = r.group;
      row["status"] = r.ok ? "ok" : "failed";
      if (!r.ok) row["error"] = r.error;
      row["metrics"] = r.ok ? metrics_json(r.metrics) : nlohmann::ordered_json(nullptr);
      j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
  }
  const char sep = format == OutputFormat::Csv ? ',' : '\t';
  auto field = [&](const std::string& s) { return format == OutputFormat::Csv ? csv_field(s) : tsv_field(s); };
  const int decimals = percent ? 2 : 4;
  std::string out = "language";
  out += sep;
  out += "group";
  out += sep;
  out += "status";
  for (const auto& c : columns()) {
    out += sep;
    out += c.name;
  }
  out += sep;
  out += "error\n";
  for (const auto& r : report.rows) {
    out += field(r.language);
    out += sep;
    out += field(r.group);
    out += sep;
    out += r.ok ? "ok" : "failed";
    for (const auto& c : columns()) {
      out += sep;
      if (!r.ok) continue;
      const double v = c.get(r.metrics);
      if (c.integer) {
        out += std::to_string(static_cast<std::uint64_t>(v));
      } else {
        out += format_number(percent && c.percent ? v * 100.0 : v, decimals);
      }
    }
    out += sep;
    out += field(r.error);
    out += '\n';
  }
  return out;
}

ComparisonReport report_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("<json>", 0, e.what());
  }
  try {
    ComparisonReport report;
    report.sort_by = j.at("sort_by").get<std::string>();
    for (const auto& row : j.at("rows")) {
      ReportRow r;
      r.language = row.at("language").get<std::string>();
      r.group = row.at("group").get<std::string>();
      r.ok = row.at("status").get<std::string>() == "ok";
      if (row.contains("error")) r.error = row.at("error").get<std::string>();
      if (r.ok) {
        const auto& m = row.at("metrics");
        auto& x = r.metrics;
        x.av = m.at("av").get<double>();
        x.eta = m.at("eta").get<double>();
        x.au = m.at("au").get<double>();
        x.lr = m.at("lr").get<double>();
        x.mattr = m.at("mattr").get<double>();
        x.mtl = m.at("mtl").get<double>();
        x.re = m.at("re").get<double>();
        x.s = m.at("s").get<double>();
        x.mwl = m.at("mwl").get<double>();
        x.av_min = m.at("av_min").get<double>();
        x.eta_min = m.at("eta_min").get<double>();
        x.au_min = m.at("au_min").get<double>();
        x.ctc = m.at("ctc").get<std::uint64_t>();
        x.ccc = m.at("ccc").get<std::uint64_t>();
        x.cbc = m.at("cbc").get<std::uint64_t>();
        x.cwc = m.at("cwc").get<std::uint64_t>();
        x.csc = m.at("csc").get<std::uint64_t>();
        x.lexical_types = m.at("lexical_types").get<std::uint64_t>();
        x.lexicalized_types = m.at("lexicalized_types").get<std::uint64_t>();
        x.measured_types = m.at("measured_types").get<std::uint64_t>();
      }
      report.rows.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("<json>", 0, e.what());
  }
}

}  // namespace morphlens
