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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace morphlens::stats {

// Nonempty vector of finite observations.
class Sample {
 public:
  Sample() = default;
  // Throws Error for an empty vector or non-finite values.
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

struct Descriptive {
  double mean = 0.0;
  double variance = 0.0;  // n-1 denominator; 0 when n == 1
  double median = 0.0;
  std::size_t n = 0;
};

Descriptive descriptive(const Sample& s);
double mean(const Sample& s);
double variance(const Sample& s);
double median(const Sample& s);
// Mean after dropping floor(fraction * n) values from each end;
// fraction in [0, 0.5).
double trimmed_mean(const Sample& s, double fraction);

// Pearson correlation. Throws for unequal lengths, n < 2, or zero variance.
double correlation(const Sample& x, const Sample& y);

// Regularised incomplete beta I_x(a, b), continued fraction with relative
// tolerance 1e-12.
double incomplete_beta(double a, double b, double x);

// Student t distribution with `df` > 0 degrees of freedom.
double t_cdf(double x, double df);
// P(T > x).
double t_sf(double x, double df);
// Inverse of t_cdf for p in (0, 1), by bisection on the CDF.
double t_quantile(double p, double df);

enum class Alternative { TwoSided, Less, Greater };

Alternative parse_alternative(std::string_view s);
std::string_view to_string(Alternative a);

// p-value of an observed t statistic.
double t_p_value(double t, double df, Alternative alternative);

struct TestResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  Alternative alternative = Alternative::TwoSided;
  std::optional<double> alpha;
  std::optional<bool> reject;
};

// Unequal-variance t test of mean(s1) - mean(s2). Requires n >= 2 in both
// samples and a nonzero pooled variance.
TestResult welch_t_test(const Sample& s1, const Sample& s2, Alternative alternative,
                        std::optional<double> alpha = std::nullopt);

struct GapTestInput {
  Sample group1_before, group2_before, group1_after, group2_after;
};

struct GapTestResult {
  TestResult test;  // one-sided: the gap shrank
  double delta_before = 0.0;
  double delta_after = 0.0;
  double s_y = 0.0;
  double critical_t = 0.0;   // t_{1-alpha, nu}
  double delta_alpha = 0.0;  // delta_before - critical_t * s_y
  bool gap_not_positive = false;  // delta_before <= 0: groups likely swapped
};

// Tests whether (delta_before - delta_after) / S_Y exceeds t_{1-alpha, nu},
// with S_Y^2 the sum of the four mean variances and nu from
// Welch-Satterthwaite over the four terms.
GapTestResult gap_reduction_test(const GapTestInput& input, double alpha);

struct MultipleComparison {
  std::vector<bool> holm;  // in input order
  std::vector<bool> bonferroni;
  double bonferroni_alpha = 0.0;
};

// Holm step-down and plain Bonferroni decisions.
MultipleComparison holm_bonferroni(std::span<const double> p_values, double alpha);

// k concatenated copies of the sample.
Sample duplicate_sample(const Sample& s, std::size_t k);

struct DuplicationEffect {
  std::size_t k = 1;
  TestResult original;
  TestResult duplicated;
  double t_ratio = 0.0;   // t_dup / t, close to sqrt(k)
  double nu_ratio = 0.0;  // nu_dup / nu, close to k
  double variance_factor1 = 0.0;  // S*^2 / S^2 for sample 1: (n-1)/(n-1/k)
  double variance_factor2 = 0.0;
};

DuplicationEffect duplication_effect(const Sample& s1, const Sample& s2, std::size_t k,
                                     Alternative alternative = Alternative::TwoSided,
                                     std::optional<double> alpha = std::nullopt);

struct RegressionResult {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double se1 = 0.0;
  double t1 = 0.0;
  double p1 = 1.0;
  double df = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::size_t n = 0;
};

// Least-squares fit y = beta0 + beta1 * x with a two-sided slope t test
// on n - 2 degrees of freedom. Requires n >= 3 and var(x) > 0.
RegressionResult ols_simple(const Sample& x, const Sample& y);

// One numeric column, one value per line. A non-numeric first line is taken
// as a header; blank lines are skipped. Throws ParseError.
Sample parse_csv_column(std::string_view text, const std::string& source = "<memory>");
Sample load_csv_column(const std::filesystem::path& path);

// Seeded generators for the worked examples (see Rng for the exact stream).

struct SamplePair {
  Sample first;
  Sample second;
};

// n draws from N(mean1, sd1^2), then n draws from N(mean2, sd2^2).
SamplePair normal_pair(std::uint64_t seed, std::size_t n, double mean1, double sd1, double mean2,
                       double sd2);

// n draws X ~ U(lo, hi) and Y = X^2.
SamplePair squared_uniform(std::uint64_t seed, std::size_t n, double lo, double hi);

}  // namespace morphlens::stats
