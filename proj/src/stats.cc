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

#include "kinkscope/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "kinkscope/errors.h"

namespace kinkscope {
namespace {

struct Bin {
  double observed;
  double expected;
};

void MergeInto(std::vector<Bin>& bins, std::size_t from, std::size_t to) {
  bins[to].observed += bins[from].observed;
  bins[to].expected += bins[from].expected;
  bins.erase(bins.begin() + static_cast<std::ptrdiff_t>(from));
}

void PoolSmallBins(std::vector<Bin>& bins, double min_expected) {
  while (bins.size() > 1 && bins.front().expected < min_expected) {
    MergeInto(bins, 0, 1);
  }
  while (bins.size() > 1 && bins.back().expected < min_expected) {
    MergeInto(bins, bins.size() - 1, bins.size() - 2);
  }
  for (;;) {
    if (bins.size() < 3) return;
    std::size_t i = 1;
    while (i + 1 < bins.size() && bins[i].expected >= min_expected) ++i;
    if (i + 1 == bins.size()) return;
    const std::size_t target =
        bins[i - 1].expected <= bins[i + 1].expected ? i - 1 : i + 1;
    MergeInto(bins, i, target);
  }
}

// Series for P(a, x), valid for x < a + 1.
double GammaPSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double GammaQContinuedFraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void RequireGammaArgs(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw InvalidArgument("incomplete gamma needs a > 0 and x >= 0");
  }
}

}  // namespace

ChiSquareResult ChiSquareStatistic(std::span<const std::uint64_t> observed,
                                   std::span<const double> expected_probs,
                                   std::uint64_t trials, double min_expected) {
  if (observed.size() != expected_probs.size()) {
    throw InvalidArgument("observed and expected have different lengths");
  }
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const std::uint64_t total =
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  if (total != trials) {
    throw InvalidArgument("observed counts do not sum to trials");
  }
  const double prob_sum =
      std::accumulate(expected_probs.begin(), expected_probs.end(), 0.0);
  if (std::abs(prob_sum - 1.0) > 1e-9) {
    throw InvalidArgument("expected probabilities do not sum to 1");
  }
  std::vector<Bin> bins;
  bins.reserve(observed.size());
  const double n = static_cast<double>(trials);
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected_probs[i] < 0.0) {
      throw InvalidArgument("expected probabilities must be non-negative");
    }
    bins.push_back({static_cast<double>(observed[i]), n * expected_probs[i]});
  }
  PoolSmallBins(bins, min_expected);
  if (bins.size() < 2) {
    throw InvalidArgument("fewer than two bins left after pooling");
  }
  ChiSquareResult result;
  for (const Bin& bin : bins) {
    const double e = std::max(bin.expected, kExpectedFloor);
    const double diff = bin.observed - bin.expected;
    result.statistic += diff * diff / e;
  }
  result.dof = static_cast<int>(bins.size()) - 1;
  return result;
}

double RegularizedGammaP(double a, double x) {
  RequireGammaArgs(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return GammaPSeries(a, x);
  return 1.0 - GammaQContinuedFraction(a, x);
}

double RegularizedGammaQ(double a, double x) {
  RequireGammaArgs(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - GammaPSeries(a, x);
  return GammaQContinuedFraction(a, x);
}

double ChiSquarePValue(double statistic, int dof) {
  if (dof < 1) throw InvalidArgument("dof must be positive");
  if (!(statistic >= 0.0)) throw InvalidArgument("statistic must be >= 0");
  return RegularizedGammaQ(dof / 2.0, statistic / 2.0);
}

double ChiSquareCritical(int dof, double alpha) {
  if (dof < 1) throw InvalidArgument("dof must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = dof + 10.0;
  while (ChiSquarePValue(hi, dof) > alpha) hi *= 2.0;
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (ChiSquarePValue(mid, dof) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double NormalUpperQuantile(double upper_tail) {
  if (!(upper_tail > 0.0 && upper_tail < 1.0)) {
    throw InvalidArgument("tail probability must lie in (0, 1)");
  }
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::numbers::sqrt2) > upper_tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double KsStatistic(std::span<const double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("KS needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  if (!std::all_of(sorted.begin(), sorted.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw InvalidArgument("KS samples must be finite");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double KsTwoSampleStatistic(std::span<const double> a,
                            std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw InvalidArgument("two-sample KS needs non-empty samples");
  }
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double KolmogorovSurvival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // Jacobi-transformed series, fast for small lambda.
    constexpr double kPi = std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double m = 2.0 * k - 1.0;
      cdf += std::exp(-m * m * kPi * kPi / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * kPi) / lambda;
    return 1.0 - cdf;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 2.0 * sum;
}

double KsCritical(std::size_t n, double alpha) {
  if (n == 0) throw InvalidArgument("KS critical value needs n > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = 10.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (KolmogorovSurvival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(n));
}

MeanInterval MeanCi(std::span<const std::uint64_t> count_histogram,
                    std::uint64_t trials, double confidence) {
  if (trials < 2) throw InvalidArgument("confidence interval needs trials >= 2");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidArgument("confidence must lie in (0, 1)");
  }
  const std::uint64_t total = std::accumulate(
      count_histogram.begin(), count_histogram.end(), std::uint64_t{0});
  if (total != trials) {
    throw InvalidArgument("histogram does not sum to trials");
  }
  const double n = static_cast<double>(trials);
  double sum = 0.0;
  for (std::size_t k = 0; k < count_histogram.size(); ++k) {
    sum += static_cast<double>(k) * static_cast<double>(count_histogram[k]);
  }
  MeanInterval ci;
  ci.mean = sum / n;
  double ss = 0.0;
  for (std::size_t k = 0; k < count_histogram.size(); ++k) {
    const double d = static_cast<double>(k) - ci.mean;
    ss += d * d * static_cast<double>(count_histogram[k]);
  }
  ci.variance = ss / (n - 1.0);
  ci.degenerate = ci.variance == 0.0;
  const double z = NormalUpperQuantile((1.0 - confidence) / 2.0);
  ci.halfwidth = z * std::sqrt(ci.variance / n);
  return ci;
}

}  // namespace kinkscope
