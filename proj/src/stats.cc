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

#include "morphlens/stats.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "morphlens/error.h"
#include "morphlens/random.h"

namespace morphlens::stats {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error("sample is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("sample contains a non-finite value");
  }
}

double mean(const Sample& s) {
  double sum = 0.0;
  for (double v : s.values()) sum += v;
  return sum / static_cast<double>(s.size());
}

double variance(const Sample& s) {
  if (s.size() < 2) return 0.0;
  const double m = mean(s);
  double ss = 0.0;
  for (double v : s.values()) ss += (v - m) * (v - m);
  return ss / static_cast<double>(s.size() - 1);
}

double median(const Sample& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

Descriptive descriptive(const Sample& s) { return {mean(s), variance(s), median(s), s.size()}; }

double trimmed_mean(const Sample& s, double fraction) {
  if (!(fraction >= 0.0 && fraction < 0.5)) throw Error("trim fraction must be in [0, 0.5)");
  std::vector<double> v(s.values().begin(), s.values().end());
  std::sort(v.begin(), v.end());
  const auto cut = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(v.size())));
  double sum = 0.0;
  for (std::size_t i = cut; i < v.size() - cut; ++i) sum += v[i];
  return sum / static_cast<double>(v.size() - 2 * cut);
}

double correlation(const Sample& x, const Sample& y) {
  if (x.size() != y.size()) throw Error("correlation: samples differ in length");
  if (x.size() < 2) throw Error("correlation: need at least two observations");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("correlation: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Incomplete beta and Student t

namespace {

constexpr double kBetaTolerance = 1e-12;
constexpr int kBetaMaxIterations = 100000;

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kBetaTolerance) return h;
  }
  throw Error("incomplete beta: continued fraction did not converge");
}

// I_x(a, b) given both x and 1 - x, so callers can pass an accurate
// complement.
double incomplete_beta_split(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log(one_minus_x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

void check_df(double df) {
  if (!(df > 0.0)) throw Error("degrees of freedom must be positive");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw Error("incomplete beta: parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw Error("incomplete beta: x outside [0, 1]");
  return incomplete_beta_split(a, b, x, 1.0 - x);
}

double t_sf(double x, double df) {
  check_df(df);
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  const double x2 = x * x;
  // Two-sided tail mass P(|T| > |x|) = I_{df/(df+x^2)}(df/2, 1/2).
  const double tails = incomplete_beta_split(df / 2.0, 0.5, df / (df + x2), x2 / (df + x2));
  return x > 0.0 ? tails / 2.0 : 1.0 - tails / 2.0;
}

double t_cdf(double x, double df) {
  check_df(df);
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  return t_sf(-x, df);
}

double t_quantile(double p, double df) {
  check_df(df);
  if (!(p > 0.0 && p < 1.0)) throw Error("t_quantile: p must be in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -t_quantile(1.0 - p, df);
  // Upper quantile: solve t_sf(q) = 1 - p on the tail for precision.
  const double tail = 1.0 - p;
  double lo = 0.0;
  double hi = 1.0;
  while (t_sf(hi, df) > tail) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) break;
  }
  for (int i = 0; i < 2000 && hi - lo > 0.0; ++i) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid == lo || mid == hi) break;
    if (t_sf(mid, df) > tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Both ends are within one ulp; take the one closer in probability.
  return std::fabs(t_sf(lo, df) - tail) <= std::fabs(t_sf(hi, df) - tail) ? lo : hi;
}

Alternative parse_alternative(std::string_view s) {
  if (s == "two-sided" || s == "two_sided") return Alternative::TwoSided;
  if (s == "less") return Alternative::Less;
  if (s == "greater") return Alternative::Greater;
  throw Error("unknown alternative '" + std::string(s) + "' (two-sided, less, greater)");
}

std::string_view to_string(Alternative a) {
  switch (a) {
    case Alternative::TwoSided: return "two-sided";
    case Alternative::Less: return "less";
    case Alternative::Greater: return "greater";
  }
  return "two-sided";
}

double t_p_value(double t, double df, Alternative alternative) {
  switch (alternative) {
    case Alternative::Less: return t_cdf(t, df);
    case Alternative::Greater: return t_sf(t, df);
    case Alternative::TwoSided: return std::min(1.0, 2.0 * t_sf(std::fabs(t), df));
  }
  return 1.0;
}

namespace {

void decide(TestResult& r, std::optional<double> alpha) {
  if (!alpha) return;
  if (!(*alpha > 0.0 && *alpha < 1.0)) throw Error("alpha must be in (0, 1)");
  r.alpha = alpha;
  r.reject = r.p_value < *alpha;
}

}  // namespace

TestResult welch_t_test(const Sample& s1, const Sample& s2, Alternative alternative,
                        std::optional<double> alpha) {
  if (s1.size() < 2 || s2.size() < 2) throw Error("welch_t_test: each sample needs n >= 2");
  const double n1 = static_cast<double>(s1.size());
  const double n2 = static_cast<double>(s2.size());
  const double v1 = variance(s1) / n1;
  const double v2 = variance(s2) / n2;
  if (v1 + v2 == 0.0) throw Error("welch_t_test: both samples have zero variance");
  TestResult r;
  r.alternative = alternative;
  r.statistic = (mean(s1) - mean(s2)) / std::sqrt(v1 + v2);
  r.df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  r.p_value = t_p_value(r.statistic, r.df, alternative);
  decide(r, alpha);
  return r;
}

GapTestResult gap_reduction_test(const GapTestInput& in, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must be in (0, 1)");
  const Sample* groups[] = {&in.group1_before, &in.group2_before, &in.group1_after, &in.group2_after};
  double var_sum = 0.0;
  double df_denominator = 0.0;
  for (const Sample* g : groups) {
    if (g->size() < 2) throw Error("gap_reduction_test: each group needs n >= 2");
    const double n = static_cast<double>(g->size());
    const double v = variance(*g) / n;
    var_sum += v;
    df_denominator += v * v / (n - 1.0);
  }
  if (var_sum == 0.0) throw Error("gap_reduction_test: all groups have zero variance");
  GapTestResult r;
  r.delta_before = mean(in.group1_before) - mean(in.group2_before);
  r.delta_after = mean(in.group1_after) - mean(in.group2_after);
  r.gap_not_positive = !(r.delta_before > 0.0);
  r.s_y = std::sqrt(var_sum);
  r.test.alternative = Alternative::Greater;
  r.test.statistic = (r.delta_before - r.delta_after) / r.s_y;
  r.test.df = var_sum * var_sum / df_denominator;
  r.test.p_value = t_sf(r.test.statistic, r.test.df);
  r.critical_t = t_quantile(1.0 - alpha, r.test.df);
  r.delta_alpha = r.delta_before - r.critical_t * r.s_y;
  r.test.alpha = alpha;
  r.test.reject = r.test.statistic > r.critical_t;
  return r;
}

MultipleComparison holm_bonferroni(std::span<const double> p_values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must be in (0, 1)");
  const std::size_t m = p_values.size();
  MultipleComparison out;
  out.holm.assign(m, false);
  out.bonferroni.assign(m, false);
  if (m == 0) return out;
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p-values must lie in [0, 1]");
  }
  out.bonferroni_alpha = alpha / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) out.bonferroni[i] = p_values[i] <= out.bonferroni_alpha;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  for (std::size_t rank = 0; rank < m; ++rank) {
    const std::size_t i = order[rank];
    if (p_values[i] > alpha / static_cast<double>(m - rank)) break;
    out.holm[i] = true;
  }
  return out;
}

Sample duplicate_sample(const Sample& s, std::size_t k) {
  if (k == 0) throw Error("duplicate_sample: k must be positive");
  std::vector<double> v;
  v.reserve(s.size() * k);
  for (std::size_t i = 0; i < k; ++i) v.insert(v.end(), s.values().begin(), s.values().end());
  return Sample(std::move(v));
}

DuplicationEffect duplication_effect(const Sample& s1, const Sample& s2, std::size_t k,
                                     Alternative alternative, std::optional<double> alpha) {
  DuplicationEffect e;
  e.k = k;
  e.original = welch_t_test(s1, s2, alternative, alpha);
  e.duplicated = welch_t_test(duplicate_sample(s1, k), duplicate_sample(s2, k), alternative, alpha);
  e.t_ratio = e.original.statistic != 0.0 ? e.duplicated.statistic / e.original.statistic
                                          : std::numeric_limits<double>::quiet_NaN();
  e.nu_ratio = e.duplicated.df / e.original.df;
  const double kd = static_cast<double>(k);
  auto factor = [kd](std::size_t n) {
    const double nd = static_cast<double>(n);
    return (nd - 1.0) / (nd - 1.0 / kd);
  };
  e.variance_factor1 = factor(s1.size());
  e.variance_factor2 = factor(s2.size());
  return e;
}

RegressionResult ols_simple(const Sample& x, const Sample& y) {
  if (x.size() != y.size()) throw Error("ols_simple: samples differ in length");
  if (x.size() < 3) throw Error("ols_simple: need at least three observations");
  const std::size_t n = x.size();
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error("ols_simple: predictor has zero variance");
  RegressionResult r;
  r.n = n;
  r.df = static_cast<double>(n - 2);
  r.beta1 = sxy / sxx;
  r.beta0 = my - r.beta1 * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.beta0 + r.beta1 * x[i]);
    rss += e * e;
  }
  r.se1 = std::sqrt(rss / r.df / sxx);
  if (r.se1 > 0.0) {
    r.t1 = r.beta1 / r.se1;
    r.p1 = t_p_value(r.t1, r.df, Alternative::TwoSided);
  } else if (r.beta1 != 0.0) {
    r.t1 = std::copysign(std::numeric_limits<double>::infinity(), r.beta1);
    r.p1 = 0.0;
  } else {
    r.t1 = 0.0;
    r.p1 = 1.0;
  }
  r.r2 = syy > 0.0 ? std::clamp(1.0 - rss / syy, 0.0, 1.0) : 1.0;
  r.adj_r2 = 1.0 - (1.0 - r.r2) * static_cast<double>(n - 1) / r.df;
  return r;
}

Sample parse_csv_column(std::string_view text, const std::string& source) {
  std::vector<double> values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) continue;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || end != line.data() + line.size() || !std::isfinite(v)) {
      if (line_no == 1) continue;  // header
      if (line.find(',') != std::string_view::npos) {
        throw ParseError(source, line_no, "expected a single column");
      }
      throw ParseError(source, line_no, "not a finite number: '" + std::string(line) + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ParseError(source, 0, "no numeric values");
  return Sample(std::move(values));
}

Sample load_csv_column(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_column(buf.str(), path.string());
}

SamplePair normal_pair(std::uint64_t seed, std::size_t n, double mean1, double sd1, double mean2,
                       double sd2) {
  Rng rng(seed);
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = rng.normal(mean1, sd1);
  for (auto& v : b) v = rng.normal(mean2, sd2);
  return {Sample(std::move(a)), Sample(std::move(b))};
}

SamplePair squared_uniform(std::uint64_t seed, std::size_t n, double lo, double hi) {
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform(lo, hi);
    y[i] = x[i] * x[i];
  }
  return {Sample(std::move(x)), Sample(std::move(y))};
}

}  // namespace morphlens::stats
