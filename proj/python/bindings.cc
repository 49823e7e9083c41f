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

// Python module morphlens._core.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "morphlens/bigram.h"
#include "morphlens/corpus.h"
#include "morphlens/error.h"
#include "morphlens/morph_eval.h"
#include "morphlens/pretokenize.h"
#include "morphlens/report.h"
#include "morphlens/stats.h"
#include "morphlens/tokenizer.h"
#include "morphlens/unigram.h"

namespace py = pybind11;
using namespace morphlens;

namespace {

MarkerMode parse_marker(const std::string& s) {
  if (s == "auto") return MarkerMode::Auto;
  if (s == "on") return MarkerMode::On;
  if (s == "off") return MarkerMode::Off;
  throw py::value_error("marker must be 'auto', 'on' or 'off'");
}

SegmentAlgorithm parse_algorithm(const std::string& s) {
  if (s == "viterbi") return SegmentAlgorithm::Viterbi;
  if (s == "greedy") return SegmentAlgorithm::Greedy;
  throw py::value_error("algorithm must be 'viterbi' or 'greedy'");
}

AnalysisOptions make_options(std::size_t window, std::size_t stride, bool full_windows_only,
                             bool lifetime_eta, std::size_t mattr_window, double alpha, bool pretokenize,
                             bool pre_segmented, const std::string& algorithm) {
  AnalysisOptions o;
  o.window.window = window;
  o.window.stride = stride;
  o.window.full_windows_only = full_windows_only;
  o.window.lifetime_eta = lifetime_eta;
  o.unigram.mattr_window = mattr_window;
  o.unigram.alpha = alpha;
  o.tokenize.pretokenized = pretokenize;
  o.tokenize.pre_segmented = pre_segmented;
  o.algorithm = parse_algorithm(algorithm);
  if (window < 1 || stride < 1 || mattr_window < 1) throw py::value_error("window sizes must be >= 1");
  return o;
}

#define MORPHLENS_OPTION_ARGS                                                                    \
  py::arg("window") = 1000, py::arg("stride") = 1, py::arg("full_windows_only") = false,         \
  py::arg("lifetime_eta") = false, py::arg("mattr_window") = kDefaultMattrWindow,                \
  py::arg("alpha") = kDefaultRenyiAlpha, py::arg("pretokenize") = true,                          \
  py::arg("pre_segmented") = false, py::arg("algorithm") = "viterbi"

py::dict metrics_dict(const LanguageMetrics& m) {
  py::dict d;
  d["av"] = m.av;
  d["eta"] = m.eta;
  d["au"] = m.au;
  d["lr"] = m.lr;
  d["mattr"] = m.mattr;
  d["mtl"] = m.mtl;
  d["re"] = m.re;
  d["s"] = m.s;
  d["mwl"] = m.mwl;
  d["av_min"] = m.av_min;
  d["eta_min"] = m.eta_min;
  d["au_min"] = m.au_min;
  d["ctc"] = m.ctc;
  d["ccc"] = m.ccc;
  d["cbc"] = m.cbc;
  d["cwc"] = m.cwc;
  d["csc"] = m.csc;
  d["lexical_types"] = m.lexical_types;
  d["lexicalized_types"] = m.lexicalized_types;
  d["measured_types"] = m.measured_types;
  return d;
}

py::dict sides(const SideValues& s) {
  py::dict d;
  d["left"] = s.left;
  d["right"] = s.right;
  d["mean"] = s.mean();
  d["min"] = s.min();
  return d;
}

py::dict bigram_dict(const BigramReport& r) {
  py::list types;
  for (const auto& t : r.types) {
    py::dict d;
    d["type"] = t.type;
    d["frequency"] = t.frequency;
    d["ta_left"] = t.ta_left;
    d["ta_right"] = t.ta_right;
    d["b_left"] = t.b_left;
    d["b_right"] = t.b_right;
    d["av"] = sides(t.av);
    d["au"] = sides(t.au);
    d["eta"] = sides(t.eta);
    d["br"] = sides(t.br);
    d["lexical"] = t.lexical;
    d["retained"] = t.retained;
    d["measured"] = t.measured;
    types.append(d);
  }
  py::dict d;
  d["types"] = types;
  d["av"] = r.macro.av_mean;
  d["av_min"] = r.macro.av_min;
  d["au"] = r.macro.au_mean;
  d["au_min"] = r.macro.au_min;
  d["eta"] = r.macro.eta_mean;
  d["eta_min"] = r.macro.eta_min;
  d["lr"] = r.lr;
  d["lexical_types"] = r.lexical_count;
  d["lexicalized_types"] = r.filtered_count;
  d["retained_types"] = r.retained_count;
  d["measured_types"] = r.measured_count;
  d["empty_retained"] = r.empty_retained;
  d["total_pairs"] = r.total_pairs;
  d["token_count"] = r.token_count;
  return d;
}

py::dict unigram_dict(const UnigramReport& r) {
  py::dict d;
  d["ctc"] = r.ctc;
  d["types"] = r.types;
  d["ttr"] = r.ttr;
  d["mattr"] = r.mattr;
  d["mattr_window"] = r.mattr_window;
  d["mtl"] = r.mtl;
  d["re"] = r.renyi_efficiency;
  d["alpha"] = r.alpha;
  d["words"] = r.words;
  d["mwl"] = r.mwl;
  d["s"] = r.s;
  return d;
}

py::dict test_dict(const stats::TestResult& t) {
  py::dict d;
  d["statistic"] = t.statistic;
  d["df"] = t.df;
  d["p_value"] = t.p_value;
  d["alternative"] = std::string(stats::to_string(t.alternative));
  d["alpha"] = t.alpha ? py::cast(*t.alpha) : py::none();
  d["reject"] = t.reject ? py::cast(*t.reject) : py::none();
  return d;
}

py::dict alignment_dict(const AlignmentResult& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["tp"] = r.counts.tp;
  d["pred_total"] = r.counts.pred_total;
  d["ref_total"] = r.counts.ref_total;
  d["words"] = r.words;
  return d;
}

stats::Sample sample(const std::vector<double>& v) { return stats::Sample(v); }

std::vector<SegmentationRef> to_refs(const std::vector<std::pair<std::string, std::vector<std::string>>>& refs) {
  std::vector<SegmentationRef> out;
  for (const auto& [word, morphs] : refs) {
    auto r = make_ref(word, morphs);
    if (!r) throw py::value_error("morphs do not concatenate to '" + word + "'");
    out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tokenizer-aware corpus metrics";

  auto error = py::register_exception<Error>(m, "MorphlensError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<Utf8Error>(m, "Utf8Error", error.ptr());

  py::class_<Vocabulary, std::shared_ptr<Vocabulary>>(m, "Vocabulary")
      .def_static(
          "load", [](const std::filesystem::path& p, const std::string& marker) {
            return std::make_shared<Vocabulary>(Vocabulary::load(p, parse_marker(marker)));
          },
          py::arg("path"), py::arg("marker") = "auto")
      .def_static(
          "parse", [](const std::string& text, const std::string& marker) {
            return std::make_shared<Vocabulary>(Vocabulary::parse(text, "<memory>", parse_marker(marker)));
          },
          py::arg("text"), py::arg("marker") = "auto")
      .def_static(
          "from_pieces",
          [](const std::vector<std::pair<std::string, double>>& pieces, const std::string& marker) {
            return std::make_shared<Vocabulary>(Vocabulary::from_pieces(pieces, parse_marker(marker)));
          },
          py::arg("pieces"), py::arg("marker") = "auto")
      .def("__len__", &Vocabulary::size)
      .def("__contains__", &Vocabulary::contains)
      .def_property_readonly("type_count", &Vocabulary::type_count)
      .def_property_readonly("uses_marker", &Vocabulary::uses_marker)
      .def_property_readonly("unk_piece", &Vocabulary::unk_piece)
      .def("piece", [](const Vocabulary& v, PieceId id) {
        if (id >= v.type_count()) throw py::index_error("piece id out of range");
        return v.piece(id);
      })
      .def("score", [](const Vocabulary& v, PieceId id) {
        if (id >= v.type_count()) throw py::index_error("piece id out of range");
        return v.score(id);
      })
      .def("find", &Vocabulary::find);

  py::class_<Segmenter>(m, "Segmenter")
      .def(py::init([](const Vocabulary& v, const std::string& algorithm) {
             return Segmenter(v, parse_algorithm(algorithm));
           }),
           py::arg("vocab"), py::arg("algorithm") = "viterbi", py::keep_alive<1, 2>())
      .def("pieces", &Segmenter::pieces, py::arg("pretoken"))
      .def("surfaces", &Segmenter::surfaces, py::arg("pretoken"));

  m.def(
      "pretokenize",
      [](const std::string& line, bool pre_segmented) { return Pretokenizer(pre_segmented)(line); },
      py::arg("line"), py::arg("pre_segmented") = false);

  py::class_<Corpus>(m, "Corpus")
      .def_static("from_file", &Corpus::from_file, py::arg("path"))
      .def_static("from_text", [](std::string text) { return Corpus::from_text(std::move(text)); },
                  py::arg("text"))
      .def_static("from_lines",
                  [](std::vector<std::string> lines) { return Corpus::from_lines(std::move(lines)); },
                  py::arg("lines"))
      .def("lines", &Corpus::lines)
      .def("__len__", &Corpus::line_count);

  m.def("sample_lines", &sample_lines, py::arg("corpus"), py::arg("n"), py::arg("seed"));
  m.def("byte_premium", &byte_premium, py::arg("target"), py::arg("reference"));
  m.def(
      "corpus_counts",
      [](const Corpus& c, bool pretokenize) {
        const Pretokenizer words;
        const auto r = corpus_counts(c, pretokenize ? &words : nullptr);
        py::dict d;
        d["ccc"] = r.ccc;
        d["cbc"] = r.cbc;
        d["cwc"] = r.cwc;
        d["csc"] = r.csc;
        return d;
      },
      py::arg("corpus"), py::arg("pretokenize") = true);

  m.def(
      "tokenize",
      [](const Corpus& c, const Vocabulary& v, bool pretokenize) {
        std::vector<std::string> out;
        for (const auto& t : tokenize_corpus(c, v, pretokenize)) out.push_back(v.piece(t.id));
        return out;
      },
      py::arg("corpus"), py::arg("vocab"), py::arg("pretokenize") = true);

  m.def(
      "analyze",
      [](const Corpus& c, const Vocabulary& v, std::size_t window, std::size_t stride, bool full, bool lifetime,
         std::size_t mw, double alpha, bool pretok, bool preseg, const std::string& algo) {
        const auto o = make_options(window, stride, full, lifetime, mw, alpha, pretok, preseg, algo);
        LanguageMetrics r;
        {
          py::gil_scoped_release release;
          r = analyze(c, v, o);
        }
        return metrics_dict(r);
      },
      py::arg("corpus"), py::arg("vocab"), MORPHLENS_OPTION_ARGS);

  m.def(
      "bigram_report",
      [](const Corpus& c, const Vocabulary& v, std::size_t window, std::size_t stride, bool full, bool lifetime,
         std::size_t mw, double alpha, bool pretok, bool preseg, const std::string& algo) {
        return bigram_dict(
            bigram_corpus(c, v, make_options(window, stride, full, lifetime, mw, alpha, pretok, preseg, algo)));
      },
      py::arg("corpus"), py::arg("vocab"), MORPHLENS_OPTION_ARGS);

  m.def(
      "unigram_report",
      [](const Corpus& c, const Vocabulary& v, std::size_t window, std::size_t stride, bool full, bool lifetime,
         std::size_t mw, double alpha, bool pretok, bool preseg, const std::string& algo) {
        return unigram_dict(
            unigram_corpus(c, v, make_options(window, stride, full, lifetime, mw, alpha, pretok, preseg, algo)));
      },
      py::arg("corpus"), py::arg("vocab"), MORPHLENS_OPTION_ARGS);

  m.def("ttr", [](const std::vector<PieceId>& t) { return ttr(t); }, py::arg("tokens"));
  m.def("mattr", [](const std::vector<PieceId>& t, std::size_t w) { return mattr(t, w); }, py::arg("tokens"),
        py::arg("window") = kDefaultMattrWindow);
  m.def(
      "renyi_efficiency",
      [](const std::vector<std::uint64_t>& counts, double alpha) {
        FrequencyTable t;
        for (std::size_t i = 0; i < counts.size(); ++i) t.add(static_cast<PieceId>(i), counts[i]);
        return renyi_efficiency(t, alpha);
      },
      py::arg("counts"), py::arg("alpha") = kDefaultRenyiAlpha);

  // Morphological alignment. References are (word, [morphs]) pairs.
  m.def(
      "parse_refs",
      [](const std::string& text, bool casefold) {
        const auto r = parse_refs(text, "<memory>", {.casefold = casefold});
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (const auto& ref : r.refs) out.emplace_back(ref.word, ref.morphs);
        return out;
      },
      py::arg("text"), py::arg("casefold") = false);
  m.def(
      "eval_full",
      [](const Segmenter& seg, const std::vector<std::pair<std::string, std::vector<std::string>>>& refs,
         const std::string& subset) {
        auto r = to_refs(refs);
        if (subset == "stem-suffix") {
          r = derive_subsets(r).stem_suffix;
        } else if (subset == "suffix-suffix") {
          r = derive_subsets(r).suffix_suffix;
        } else if (subset != "full") {
          throw py::value_error("subset must be 'full', 'stem-suffix' or 'suffix-suffix'");
        }
        return alignment_dict(eval_full(make_word_segmenter(seg), r));
      },
      py::arg("segmenter"), py::arg("refs"), py::arg("subset") = "full");
  m.def(
      "morphscore",
      [](const Segmenter& seg, const std::vector<std::pair<std::string, std::vector<std::string>>>& refs,
         bool credit_vocab) {
        const auto r = morphscore(make_word_segmenter(seg), to_refs(refs), seg.vocab(),
                                  credit_vocab ? MorphScoreMode::CreditVocab : MorphScoreMode::ExcludeVocab);
        py::dict d;
        d["recall"] = r.recall;
        d["precision"] = r.precision;
        d["f1"] = r.f1;
        d["n_evaluated"] = r.n_evaluated;
        d["in_vocab"] = r.in_vocab;
        return d;
      },
      py::arg("segmenter"), py::arg("refs"), py::arg("credit_vocab") = false);

  // Statistics.
  auto st = m.def_submodule("stats", "Significance tests and estimators");
  st.def("t_cdf", &stats::t_cdf, py::arg("x"), py::arg("df"));
  st.def("t_sf", &stats::t_sf, py::arg("x"), py::arg("df"));
  st.def("t_quantile", &stats::t_quantile, py::arg("p"), py::arg("df"));
  st.def(
      "descriptive",
      [](const std::vector<double>& v) {
        const auto d = stats::descriptive(sample(v));
        py::dict out;
        out["mean"] = d.mean;
        out["variance"] = d.variance;
        out["median"] = d.median;
        out["n"] = d.n;
        return out;
      },
      py::arg("values"));
  st.def(
      "correlation", [](const std::vector<double>& x, const std::vector<double>& y) {
        return stats::correlation(sample(x), sample(y));
      },
      py::arg("x"), py::arg("y"));
  st.def(
      "welch_t_test",
      [](const std::vector<double>& a, const std::vector<double>& b, const std::string& alternative,
         std::optional<double> alpha) {
        return test_dict(stats::welch_t_test(sample(a), sample(b), stats::parse_alternative(alternative), alpha));
      },
      py::arg("a"), py::arg("b"), py::arg("alternative"), py::arg("alpha") = py::none());
  st.def(
      "gap_reduction_test",
      [](const std::vector<double>& g1b, const std::vector<double>& g2b, const std::vector<double>& g1a,
         const std::vector<double>& g2a, double alpha) {
        const auto r = stats::gap_reduction_test({sample(g1b), sample(g2b), sample(g1a), sample(g2a)}, alpha);
        auto d = test_dict(r.test);
        d["delta_before"] = r.delta_before;
        d["delta_after"] = r.delta_after;
        d["s_y"] = r.s_y;
        d["critical_t"] = r.critical_t;
        d["delta_alpha"] = r.delta_alpha;
        d["gap_not_positive"] = r.gap_not_positive;
        return d;
      },
      py::arg("group1_before"), py::arg("group2_before"), py::arg("group1_after"), py::arg("group2_after"),
      py::arg("alpha"));
  st.def(
      "holm_bonferroni",
      [](const std::vector<double>& p, double alpha) {
        const auto r = stats::holm_bonferroni(p, alpha);
        py::dict d;
        d["holm"] = r.holm;
        d["bonferroni"] = r.bonferroni;
        d["bonferroni_alpha"] = r.bonferroni_alpha;
        return d;
      },
      py::arg("p_values"), py::arg("alpha"));
  st.def(
      "duplication_effect",
      [](const std::vector<double>& a, const std::vector<double>& b, std::size_t k, const std::string& alternative,
         std::optional<double> alpha) {
        const auto e = stats::duplication_effect(sample(a), sample(b), k, stats::parse_alternative(alternative), alpha);
        py::dict d;
        d["k"] = e.k;
        d["original"] = test_dict(e.original);
        d["duplicated"] = test_dict(e.duplicated);
        d["t_ratio"] = e.t_ratio;
        d["nu_ratio"] = e.nu_ratio;
        d["variance_factor1"] = e.variance_factor1;
        d["variance_factor2"] = e.variance_factor2;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("k"), py::arg("alternative") = "two-sided", py::arg("alpha") = py::none());
  st.def(
      "ols_simple",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto r = stats::ols_simple(sample(x), sample(y));
        py::dict d;
        d["beta0"] = r.beta0;
        d["beta1"] = r.beta1;
        d["se1"] = r.se1;
        d["t1"] = r.t1;
        d["p1"] = r.p1;
        d["df"] = r.df;
        d["r2"] = r.r2;
        d["adj_r2"] = r.adj_r2;
        d["n"] = r.n;
        return d;
      },
      py::arg("x"), py::arg("y"));

  // Multi-language runs.
  m.def(
      "run",
      [](const std::filesystem::path& config, std::optional<std::string> format, std::optional<bool> percent) {
        const auto c = RunConfig::load(config);
        ComparisonReport r;
        {
          py::gil_scoped_release release;
          r = run(c);
        }
        return emit(r, format ? parse_output_format(*format) : c.format, percent.value_or(c.percent));
      },
      py::arg("config"), py::arg("format") = py::none(), py::arg("percent") = py::none(),
      "Runs a YAML config and returns the emitted report text.");
  m.def(
      "run_rows",
      [](const std::filesystem::path& config) {
        const auto c = RunConfig::load(config);
        ComparisonReport r;
        {
          py::gil_scoped_release release;
          r = run(c);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["language"] = row.language;
          d["group"] = row.group;
          d["ok"] = row.ok;
          d["error"] = row.error;
          d["metrics"] = row.ok ? py::object(metrics_dict(row.metrics)) : py::none();
          rows.append(d);
        }
        return rows;
      },
      py::arg("config"));
}
