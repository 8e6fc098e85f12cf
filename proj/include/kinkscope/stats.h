// Copyright 2026 The Kinkscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Goodness-of-fit machinery for confronting simulated kink statistics with
// closed-form predictions.

#ifndef KINKSCOPE_STATS_H_
#define KINKSCOPE_STATS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace kinkscope {

// Outcome of one hypothesis test. pass == (statistic <= threshold).
struct GofReport {
  std::string test;  // "chi_square", "mean_z", "ks"
  double statistic = 0.0;
  int dof = 1;
  double threshold = 0.0;
  double alpha = 0.0;
  bool pass = false;
};

// Classical pooling rule: bins with fewer expected counts are merged.
inline constexpr double kMinExpectedCount = 5.0;
// Floor on expected counts, keeps the statistic finite for empty-law bins.
inline constexpr double kExpectedFloor = 1e-300;

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
};

// Pearson statistic sum (O - E)^2 / E with E = trials * expected_probs.
// Bins with E < min_expected are merged into a neighbour, working in from
// both tails; an interior bin goes to its smaller neighbour. dof is the
// number of bins left minus one.
//
// Throws InvalidArgument on length mismatch, sum(observed) != trials,
// probabilities not summing to 1 (1e-9), or fewer than two pooled bins.
ChiSquareResult ChiSquareStatistic(std::span<const std::uint64_t> observed,
                                   std::span<const double> expected_probs,
                                   std::uint64_t trials,
                                   double min_expected = kMinExpectedCount);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double RegularizedGammaP(double a, double x);
double RegularizedGammaQ(double a, double x);

// Upper-alpha quantile x of chi^2(dof): Q(dof/2, x/2) == alpha, found by
// bisection.
double ChiSquareCritical(int dof, double alpha);

// Upper-tail probability of chi^2(dof) at `statistic`.
double ChiSquarePValue(double statistic, int dof);

// Standard normal upper quantile: P(Z > z) == upper_tail.
double NormalUpperQuantile(double upper_tail);

// One-sample Kolmogorov-Smirnov distance between the empirical law of
// `samples` and `cdf`. Throws InvalidArgument on an empty or non-finite
// sample.
double KsStatistic(std::span<const double> samples,
                   const std::function<double(double)>& cdf);

// Two-sample KS distance sup |F_a - F_b|.
double KsTwoSampleStatistic(std::span<const double> a,
                            std::span<const double> b);

// Asymptotic survival function of sqrt(n) D_n,
// 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double KolmogorovSurvival(double lambda);
// Critical D for n samples at level alpha, lambda_alpha / sqrt(n).
double KsCritical(std::size_t n, double alpha);

struct MeanInterval {
  double mean = 0.0;
  double halfwidth = 0.0;
  double variance = 0.0;  // sample variance, n - 1 denominator
  bool degenerate = false;  // zero sample variance
};

// Normal-approximation confidence interval mean +- z sqrt(s^2 / n) from a
// histogram of integer observations (index = value). Needs trials >= 2.
MeanInterval MeanCi(std::span<const std::uint64_t> count_histogram,
                    std::uint64_t trials, double confidence);

}  // namespace kinkscope

#endif  // KINKSCOPE_STATS_H_
