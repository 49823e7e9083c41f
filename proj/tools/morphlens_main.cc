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

// morphlens command line tool.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morphlens/bigram.h"
#include "morphlens/corpus.h"
#include "morphlens/error.h"
#include "morphlens/morph_eval.h"
#include "morphlens/report.h"
#include "morphlens/stats.h"
#include "morphlens/tokenizer.h"
#include "morphlens/unigram.h"

namespace {

using namespace morphlens;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError(path + ": cannot open for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    stream().flush();
    if (file_ && !*file_) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json test_json(const stats::TestResult& t) {
  json j;
  j["statistic"] = t.statistic;
  j["df"] = t.df;
  j["p"] = t.p_value;
  j["alternative"] = std::string(stats::to_string(t.alternative));
  if (t.alpha) j["alpha"] = *t.alpha;
  if (t.reject) j["reject"] = *t.reject;
  return j;
}

json describe(const stats::Sample& s) {
  const auto d = stats::descriptive(s);
  return json{{"n", d.n}, {"mean", d.mean}, {"variance", d.variance}, {"median", d.median}};
}

struct CorpusArgs {
  std::string corpus;
  std::string vocab;
  bool no_pretokenize = false;
  bool pre_segmented = false;
  bool greedy = false;
  std::string out;

  void add(CLI::App* app) {
    app->add_option("corpus", corpus, "UTF-8 text, one sentence per line")->required();
    app->add_option("--vocab", vocab, "piece<TAB>logprob vocabulary")->required();
    app->add_flag("--no-pretokenize", no_pretokenize, "segment whole lines as one span");
    app->add_flag("--pre-segmented", pre_segmented, "split on whitespace only");
    app->add_flag("--greedy", greedy, "greedy longest-match instead of Viterbi");
    app->add_option("--out", out, "output path (default stdout)");
  }

  AnalysisOptions options() const {
    AnalysisOptions o;
    o.tokenize.pretokenized = !no_pretokenize;
    o.tokenize.pre_segmented = pre_segmented;
    o.algorithm = greedy ? SegmentAlgorithm::Greedy : SegmentAlgorithm::Viterbi;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tokenizer-aware corpus metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "morphlens 0.1.0");

  // counts
  auto* counts = app.add_subcommand("counts", "character, byte, word and line counts");
  std::string counts_path;
  bool counts_pretok = false;
  bool counts_pre_segmented = false;
  counts->add_option("path", counts_path)->required();
  counts->add_flag("--pretokenize", counts_pretok, "also count pretokens");
  counts->add_flag("--pre-segmented", counts_pre_segmented, "split words on whitespace only");

  // byte-premium
  auto* bp = app.add_subcommand("byte-premium", "UTF-8 byte ratio of parallel texts");
  std::string bp_target, bp_ref;
  bp->add_option("target", bp_target)->required();
  bp->add_option("reference", bp_ref)->required();

  // sample
  auto* sample = app.add_subcommand("sample", "seeded uniform sample of lines");
  std::string sample_path, sample_out;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  sample->add_option("path", sample_path)->required();
  sample->add_option("-n,--lines", sample_n, "lines to keep")->required();
  sample->add_option("--seed", sample_seed, "random seed")->default_val(0);
  sample->add_option("--out", sample_out);

  // tokenize
  auto* tokenize = app.add_subcommand("tokenize", "one space-separated token line per input line");
  CorpusArgs tok_args;
  tok_args.add(tokenize);

  // bigram
  auto* bigram = app.add_subcommand("bigram", "per-type accessor metrics");
  CorpusArgs bi_args;
  bi_args.add(bigram);
  WindowConfig window;
  bool bi_percent = false;
  bigram->add_option("--window", window.window, "accessor window size")->default_val(1000)->check(CLI::PositiveNumber);
  bigram->add_option("--stride", window.stride, "window stride")->default_val(1)->check(CLI::PositiveNumber);
  bigram->add_flag("--full-windows-only", window.full_windows_only, "skip types that never fill a window");
  bigram->add_flag("--lifetime-eta", window.lifetime_eta, "eta over the lifetime accessor distribution");
  bigram->add_flag("--percent", bi_percent, "scale ratio metrics by 100");

  // unigram
  auto* unigram = app.add_subcommand("unigram", "token distribution metrics");
  CorpusArgs uni_args;
  uni_args.add(unigram);
  UnigramOptions uni_opts;
  bool uni_percent = false;
  unigram->add_option("--mattr-window", uni_opts.mattr_window)->default_val(kDefaultMattrWindow)->check(CLI::PositiveNumber);
  unigram->add_option("--alpha", uni_opts.alpha, "Renyi order")->default_val(kDefaultRenyiAlpha)->check(CLI::NonNegativeNumber);
  unigram->add_flag("--percent", uni_percent, "scale ratio metrics by 100");

  // align
  auto* align = app.add_subcommand("align", "boundary alignment against reference morphs");
  std::string align_refs, align_vocab, align_mode = "full", align_out;
  bool align_greedy = false;
  bool align_casefold = false;
  align->add_option("refs", align_refs, "word<TAB>m1|m2|... references")->required();
  align->add_option("--vocab", align_vocab)->required();
  align->add_option("--mode", align_mode)
      ->check(CLI::IsMember({"full", "morphscore-exclude", "morphscore-credit", "stem-suffix", "suffix-suffix"}))
      ->default_val("full");
  align->add_flag("--greedy", align_greedy);
  align->add_flag("--casefold", align_casefold, "lowercase reference words and morphs");
  align->add_option("--out", align_out);

  // stats
  auto* st = app.add_subcommand("stats", "significance tests; JSON output");
  st->require_subcommand(1);
  std::vector<std::string> st_in;
  double st_alpha = 0.05;
  std::string st_alt = "two-sided";
  std::size_t st_k = 3;
  auto add_common = [&](CLI::App* sub, std::size_t files, const std::string& help) {
    sub->add_option("--in", st_in, help)->required()->expected(static_cast<int>(files));
    sub->add_option("--alpha", st_alpha)->default_val(0.05);
    return sub;
  };
  auto* st_welch = add_common(st->add_subcommand("welch", "Welch t test of a - b"), 2, "a.csv b.csv");
  st_welch->add_option("--alternative", st_alt)->check(CLI::IsMember({"two-sided", "less", "greater"}));
  auto* st_gap = add_common(st->add_subcommand("gap", "one-sided gap-reduction test"), 4,
                            "g1_before.csv g2_before.csv g1_after.csv g2_after.csv");
  auto* st_holm = add_common(st->add_subcommand("holm", "Holm and Bonferroni decisions"), 1, "p.csv");
  auto* st_dup = add_common(st->add_subcommand("dup", "effect of k-fold duplication on Welch"), 2, "a.csv b.csv");
  st_dup->add_option("--k", st_k)->default_val(3)->check(CLI::PositiveNumber);
  st_dup->add_option("--alternative", st_alt)->check(CLI::IsMember({"two-sided", "less", "greater"}));
  auto* st_ols = add_common(st->add_subcommand("ols", "simple linear regression y on x"), 2, "x.csv y.csv");

  // run
  auto* run = app.add_subcommand("run", "multi-language comparison report");
  std::string run_config, run_out, run_format;
  std::size_t run_workers = 0;
  run->add_option("--config", run_config, "YAML run configuration")->required();
  run->add_option("--out", run_out);
  run->add_option("--format", run_format, "override the configured format")
      ->check(CLI::IsMember({"tsv", "csv", "json"}));
  run->add_option("--workers", run_workers, "worker threads (default MORPHLENS_WORKERS or all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (counts->parsed()) {
      const auto corpus = Corpus::from_file(counts_path);
      const Pretokenizer words(counts_pre_segmented);
      const auto c = corpus_counts(corpus, counts_pretok ? &words : nullptr);
      std::cout << "ccc\t" << c.ccc << "\ncbc\t" << c.cbc << '\n';
      if (counts_pretok) std::cout << "cwc\t" << c.cwc << '\n';
      std::cout << "csc\t" << c.csc << '\n';
    } else if (bp->parsed()) {
      const double v = byte_premium(Corpus::from_file(bp_target), Corpus::from_file(bp_ref));
      std::cout << std::setprecision(6) << v << '\n';
    } else if (sample->parsed()) {
      Output out(sample_out);
      sample_lines(Corpus::from_file(sample_path), sample_n, sample_seed)
          .for_each_line([&](const std::string& line) { out.stream() << line << '\n'; });
      out.close();
    } else if (tokenize->parsed()) {
      const auto vocab = Vocabulary::load(tok_args.vocab);
      const auto opts = tok_args.options();
      const Segmenter segmenter(vocab, opts.algorithm);
      const CorpusTokenizer tokenizer(segmenter, opts.tokenize);
      Output out(tok_args.out);
      TokenStream stream;
      Corpus::from_file(tok_args.corpus).for_each_line([&](const std::string& line) {
        stream.clear();
        tokenizer.tokenize_line(line, stream);
        for (std::size_t i = 0; i < stream.size(); ++i) {
          if (i) out.stream() << ' ';
          out.stream() << vocab.piece(stream[i].id);
        }
        out.stream() << '\n';
      });
      out.close();
    } else if (bigram->parsed()) {
      const auto vocab = Vocabulary::load(bi_args.vocab);
      auto opts = bi_args.options();
      opts.window = window;
      const auto report = bigram_corpus(Corpus::from_file(bi_args.corpus), vocab, opts);
      Output out(bi_args.out);
      write_bigram_tsv(out.stream(), report, bi_percent);
      out.close();
    } else if (unigram->parsed()) {
      const auto vocab = Vocabulary::load(uni_args.vocab);
      auto opts = uni_args.options();
      opts.unigram = uni_opts;
      const auto report = unigram_corpus(Corpus::from_file(uni_args.corpus), vocab, opts);
      Output out(uni_args.out);
      write_unigram_tsv(out.stream(), report, uni_percent);
      out.close();
    } else if (align->parsed()) {
      const auto vocab = Vocabulary::load(align_vocab);
      const Segmenter segmenter(vocab, align_greedy ? SegmentAlgorithm::Greedy : SegmentAlgorithm::Viterbi);
      auto loaded = load_refs(align_refs, {.casefold = align_casefold});
      for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
      const auto seg = make_word_segmenter(segmenter);
      Output out(align_out);
      auto& os = out.stream();
      os << std::fixed << std::setprecision(4) << "metric\tvalue\nmode\t" << align_mode << '\n';
      if (align_mode.rfind("morphscore", 0) == 0) {
        const auto mode =
            align_mode == "morphscore-credit" ? MorphScoreMode::CreditVocab : MorphScoreMode::ExcludeVocab;
        const auto r = morphscore(seg, loaded.refs, vocab, mode);
        os << "evaluated\t" << r.n_evaluated << "\nin_vocab\t" << r.in_vocab << "\ntp\t" << r.counts.tp
           << "\npredicted\t" << r.counts.pred_total << "\nreference\t" << r.counts.ref_total << "\nrecall\t"
           << r.recall << "\nprecision\t" << r.precision << "\nf1\t" << r.f1 << '\n';
      } else {
        auto refs = std::move(loaded.refs);
        if (align_mode != "full") {
          auto subsets = derive_subsets(refs);
          refs = align_mode == "stem-suffix" ? std::move(subsets.stem_suffix) : std::move(subsets.suffix_suffix);
        }
        const auto r = eval_full(seg, refs);
        os << "words\t" << r.words << "\ntp\t" << r.counts.tp << "\npredicted\t" << r.counts.pred_total
           << "\nreference\t" << r.counts.ref_total << "\nprecision\t" << r.precision << "\nrecall\t" << r.recall
           << "\nf1\t" << r.f1 << '\n';
      }
      os << "rejected_refs\t" << loaded.rejected << "\nmalformed_refs\t" << loaded.malformed << '\n';
      out.close();
    } else if (st->parsed()) {
      std::vector<stats::Sample> in;
      for (const auto& p : st_in) in.push_back(stats::load_csv_column(p));
      const auto alt = stats::parse_alternative(st_alt);
      json j;
      if (st_welch->parsed()) {
        j["test"] = "welch";
        j["a"] = describe(in[0]);
        j["b"] = describe(in[1]);
        j["result"] = test_json(stats::welch_t_test(in[0], in[1], alt, st_alpha));
      } else if (st_gap->parsed()) {
        const auto r = stats::gap_reduction_test({in[0], in[1], in[2], in[3]}, st_alpha);
        j["test"] = "gap";
        j["delta_before"] = r.delta_before;
        j["delta_after"] = r.delta_after;
        j["s_y"] = r.s_y;
        j["critical_t"] = r.critical_t;
        j["delta_alpha"] = r.delta_alpha;
        j["result"] = test_json(r.test);
        if (r.gap_not_positive) {
          j["warning"] = "delta_before <= 0; check group order";
          std::cerr << "warning: delta_before <= 0; check group order\n";
        }
      } else if (st_holm->parsed()) {
        const auto r = stats::holm_bonferroni(in[0].values(), st_alpha);
        j["test"] = "holm";
        j["alpha"] = st_alpha;
        j["p"] = std::vector<double>(in[0].values().begin(), in[0].values().end());
        j["holm_reject"] = r.holm;
        j["bonferroni_reject"] = r.bonferroni;
        j["bonferroni_alpha"] = r.bonferroni_alpha;
      } else if (st_dup->parsed()) {
        const auto r = stats::duplication_effect(in[0], in[1], st_k, alt, st_alpha);
        j["test"] = "dup";
        j["k"] = r.k;
        j["original"] = test_json(r.original);
        j["duplicated"] = test_json(r.duplicated);
        j["t_ratio"] = r.t_ratio;
        j["nu_ratio"] = r.nu_ratio;
        j["variance_factor_a"] = r.variance_factor1;
        j["variance_factor_b"] = r.variance_factor2;
      } else if (st_ols->parsed()) {
        const auto r = stats::ols_simple(in[0], in[1]);
        j["test"] = "ols";
        j["n"] = r.n;
        j["beta0"] = r.beta0;
        j["beta1"] = r.beta1;
        j["se1"] = r.se1;
        j["t1"] = r.t1;
        j["p1"] = r.p1;
        j["df"] = r.df;
        j["r2"] = r.r2;
        j["adj_r2"] = r.adj_r2;
      }
      std::cout << j.dump(2) << '\n';
    } else if (run->parsed()) {
      RunConfig config;
      try {
        config = RunConfig::load(run_config);
        if (!run_format.empty()) config.format = parse_output_format(run_format);
        if (run_workers) config.workers = run_workers;
        config.validate();
        resolve_workers(config.workers);
      } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
      }
      const auto report = morphlens::run(config);
      Output out(run_out);
      out.stream() << emit(report, config.format, config.percent);
      out.close();
      for (const auto& row : report.rows) {
        if (!row.ok) std::cerr << "error: " << row.language << ": " << row.error << '\n';
      }
      return report.failed() ? kExitFailure : kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
