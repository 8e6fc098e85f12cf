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

#include "kinkscope/mc_engine.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

#include "kinkscope/errors.h"
#include "kinkscope/theory.h"

namespace kinkscope {
namespace {

// Algorithm R over a stream of radii.
class Reservoir {
 public:
  Reservoir(std::size_t cap, RngStream rng) : cap_(cap), rng_(std::move(rng)) {
    samples_.reserve(std::min<std::size_t>(cap, 1 << 16));
  }

  void Offer(double r) {
    ++seen_;
    if (samples_.size() < cap_) {
      samples_.push_back(r);
      return;
    }
    const std::uint64_t j = rng_.UniformIndex(seen_ - 1);
    if (j < cap_) samples_[j] = r;
  }

  std::vector<double> TakeSamples() { return std::move(samples_); }
  std::uint64_t seen() const { return seen_; }

 private:
  std::size_t cap_;
  RngStream rng_;
  std::vector<double> samples_;
  std::uint64_t seen_ = 0;
};

// Moves the first `take` elements of a uniformly shuffled copy of `pool`
// into `out`.
void TakeRandomSubset(std::vector<double> pool, std::size_t take,
                      RngStream& rng, std::vector<double>& out) {
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.UniformIndex(pool.size() - 1 - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
}

std::vector<double> MergeReservoirs(const MonteCarloSummary& a,
                                    const MonteCarloSummary& b,
                                    std::size_t cap, RngStream& rng) {
  const bool a_complete = a.radii_sample.size() == a.radii_seen;
  const bool b_complete = b.radii_sample.size() == b.radii_seen;
  if (a_complete && b_complete &&
      a.radii_sample.size() + b.radii_sample.size() <= cap) {
    std::vector<double> out = a.radii_sample;
    out.insert(out.end(), b.radii_sample.begin(), b.radii_sample.end());
    return out;
  }
  // Sequential hypergeometric split of the cap between the two sources.
  const std::uint64_t k = std::min<std::uint64_t>(cap, a.radii_seen + b.radii_seen);
  std::uint64_t remaining_a = a.radii_seen;
  std::uint64_t remaining_b = b.radii_seen;
  std::size_t from_a = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    const double u = rng.Uniform01();
    const double p_a = static_cast<double>(remaining_a) /
                       static_cast<double>(remaining_a + remaining_b);
    if (u < p_a) {
      ++from_a;
      --remaining_a;
    } else {
      --remaining_b;
    }
  }
  const std::size_t from_b = static_cast<std::size_t>(k) - from_a;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k));
  TakeRandomSubset(a.radii_sample, from_a, rng, out);
  TakeRandomSubset(b.radii_sample, from_b, rng, out);
  return out;
}

MonteCarloSummary RunBlock(const ExperimentConfig& config,
                           std::size_t block, std::uint64_t block_trials) {
  MonteCarloSummary summary = EmptySummary(config);
  RngStream params_rng(config.seed, block);
  std::optional<Reservoir> reservoir;
  if (config.collect_radii) {
    reservoir.emplace(config.radii_cap,
                      RngStream(config.seed, kReservoirStreamBase + block));
  }
  for (std::uint64_t t = 0; t < block_trials; ++t) {
    const NetworkParams params =
        SampleParams(config.distribution, config.width, params_rng);
    const KinkReport kinks = KinkPositions(params, config.domain);
    ++summary.count_histogram[kinks.count()];
    if (reservoir) {
      for (double x : kinks.positions) reservoir->Offer(std::abs(x));
    }
  }
  summary.trials = block_trials;
  summary.config.trials = block_trials;
  if (reservoir) {
    summary.radii_seen = reservoir->seen();
    summary.radii_sample = reservoir->TakeSamples();
  }
  RecomputeMoments(summary);
  return summary;
}

bool SameExperiment(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.distribution == b.distribution && a.width == b.width &&
         a.domain == b.domain;
}

GofReport MeanTest(const MonteCarloSummary& s, double expected,
                   double alpha) {
  if (s.trials < 2) throw InvalidArgument("mean test needs at least 2 trials");
  GofReport report;
  report.test = "mean_z";
  report.alpha = alpha;
  report.dof = 1;
  const double se =
      std::sqrt(s.empirical_variance / static_cast<double>(s.trials));
  const double diff = std::abs(s.empirical_mean - expected);
  if (se > 0.0) {
    report.statistic = diff / se;
  } else {
    report.statistic =
        diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  report.threshold = NormalUpperQuantile(alpha / 2.0);
  report.pass = report.statistic <= report.threshold;
  return report;
}

}  // namespace

void RecomputeMoments(MonteCarloSummary& s) {
  if (s.trials == 0) {
    s.empirical_mean = 0.0;
    s.empirical_variance = 0.0;
    return;
  }
  const double n = static_cast<double>(s.trials);
  double sum = 0.0;
  for (std::size_t k = 0; k < s.count_histogram.size(); ++k) {
    sum += static_cast<double>(k) * static_cast<double>(s.count_histogram[k]);
  }
  s.empirical_mean = sum / n;
  if (s.trials < 2) {
    s.empirical_variance = 0.0;
    return;
  }
  double ss = 0.0;
  for (std::size_t k = 0; k < s.count_histogram.size(); ++k) {
    const double d = static_cast<double>(k) - s.empirical_mean;
    ss += d * d * static_cast<double>(s.count_histogram[k]);
  }
  s.empirical_variance = ss / (n - 1.0);
}

void ExperimentConfig::Validate() const {
  if (width == 0) throw InvalidArgument("width must be positive");
  if (workers == 0) throw InvalidArgument("workers must be positive");
  if (trials < workers) {
    throw InvalidArgument("trials must be at least the number of workers");
  }
  if (collect_radii && radii_cap == 0) {
    throw InvalidArgument("radii_cap must be positive when collecting radii");
  }
}

MonteCarloSummary EmptySummary(const ExperimentConfig& config) {
  MonteCarloSummary summary{.config = config};
  summary.config.trials = 0;
  summary.count_histogram.assign(config.width + 1, 0);
  return summary;
}

MonteCarloSummary RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const std::size_t workers = config.workers;
  const std::uint64_t base = config.trials / workers;
  const std::uint64_t extra = config.trials % workers;

  std::vector<std::optional<MonteCarloSummary>> partials(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t b = 0; b < workers; ++b) {
      const std::uint64_t block_trials = base + (b < extra ? 1 : 0);
      threads.emplace_back([&, b, block_trials] {
        try {
          partials[b] = RunBlock(config, b, block_trials);
        } catch (...) {
          errors[b] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RngStream merge_rng(config.seed, kMergeStream);
  MonteCarloSummary total = EmptySummary(config);
  for (const auto& part : partials) {
    total = MergeSummaries(total, *part, merge_rng);
  }
  total.config = config;
  return total;
}

MonteCarloSummary MergeSummaries(const MonteCarloSummary& a,
                                 const MonteCarloSummary& b, RngStream& rng) {
  if (!SameExperiment(a.config, b.config)) {
    throw ConfigMismatch("cannot merge summaries of different experiments");
  }
  if (a.count_histogram.size() != b.count_histogram.size()) {
    throw ConfigMismatch("histogram lengths differ");
  }
  if (b.trials == 0 && b.radii_seen == 0) return a;
  if (a.trials == 0 && a.radii_seen == 0) {
    MonteCarloSummary out = b;
    out.config.seed = a.config.seed;
    out.config.workers = a.config.workers;
    return out;
  }
  MonteCarloSummary out = a;
  for (std::size_t k = 0; k < out.count_histogram.size(); ++k) {
    out.count_histogram[k] += b.count_histogram[k];
  }
  out.trials = a.trials + b.trials;
  out.config.trials = out.trials;
  out.config.collect_radii = a.config.collect_radii || b.config.collect_radii;
  const std::size_t cap = std::max(a.config.radii_cap, b.config.radii_cap);
  out.radii_sample = MergeReservoirs(a, b, cap, rng);
  out.radii_seen = a.radii_seen + b.radii_seen;
  RecomputeMoments(out);
  return out;
}

MonteCarloSummary MergeSummaries(const MonteCarloSummary& a,
                                 const MonteCarloSummary& b) {
  RngStream rng(a.config.seed, kMergeStream);
  return MergeSummaries(a, b, rng);
}

bool TheoryComparison::all_pass() const {
  for (const auto* report : {&chi_square, &mean, &ks}) {
    if (report->has_value() && !(*report)->pass) return false;
  }
  return true;
}

GofReport ComparePmf(const MonteCarloSummary& summary, double alpha) {
  const Shape shape = summary.config.distribution.shape();
  if (shape == Shape::kSpherical) {
    throw UnsupportedModel(
        "no closed-form kink-count distribution for the spherical model");
  }
  if (!summary.config.domain.is_finite()) {
    throw InvalidArgument(
        "kink-count distribution is degenerate on the unbounded domain");
  }
  const std::vector<double> pmf =
      KinkCountPmf(summary.config.width,
                   HitProbability(shape, summary.config.domain.radius()));
  const ChiSquareResult chi =
      ChiSquareStatistic(summary.count_histogram, pmf, summary.trials);
  GofReport report;
  report.test = "chi_square";
  report.statistic = chi.statistic;
  report.dof = chi.dof;
  report.alpha = alpha;
  report.threshold = ChiSquareCritical(chi.dof, alpha);
  report.pass = report.statistic <= report.threshold;
  return report;
}

TheoryComparison CompareToTheory(const MonteCarloSummary& summary,
                                 double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  const ExperimentConfig& config = summary.config;
  const Shape shape = config.distribution.shape();
  TheoryComparison out;
  if (config.domain.is_finite()) {
    const double expected =
        ExpectedKinks(shape, config.width, config.domain.radius());
    if (shape == Shape::kSpherical) {
      out.notes.push_back(
          "kink-count distribution not available for the spherical model; "
          "mean test only");
    } else {
      out.chi_square = ComparePmf(summary, alpha);
    }
    out.mean = MeanTest(summary, expected, alpha);
    return out;
  }
  if (shape == Shape::kSpherical) {
    throw UnsupportedModel(
        "no closed-form predictions for the spherical model on the "
        "unbounded domain");
  }
  if (summary.radii_sample.empty()) {
    throw InvalidArgument(
        "unbounded-domain comparison needs collected kink radii");
  }
  GofReport ks;
  ks.test = "ks";
  ks.alpha = alpha;
  ks.dof = 1;
  ks.statistic = KsStatistic(summary.radii_sample, [shape](double r) {
    return KinkRadiusCdf(shape, r);
  });
  ks.threshold = KsCritical(summary.radii_sample.size(), alpha);
  ks.pass = ks.statistic <= ks.threshold;
  out.ks = ks;
  out.notes.push_back("kink count is almost surely w on the unbounded domain");
  return out;
}

}  // namespace kinkscope
