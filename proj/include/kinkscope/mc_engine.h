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

// Seeded, shardable Monte Carlo experiments over random networks.
//
// Trials are split into `workers` contiguous blocks. Block b draws its
// networks from RngStream(seed, b) and its radius reservoir decisions from
// RngStream(seed, kReservoirStreamBase + b); partial summaries are merged
// in block order. The result is therefore a pure function of the config,
// independent of thread scheduling.

#ifndef KINKSCOPE_MC_ENGINE_H_
#define KINKSCOPE_MC_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kinkscope/core_model.h"
#include "kinkscope/samplers.h"
#include "kinkscope/stats.h"

namespace kinkscope {

inline constexpr std::size_t kDefaultRadiiCap = 100000;
inline constexpr double kDefaultAlpha = 0.001;
inline constexpr std::uint64_t kReservoirStreamBase = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kMergeStream = std::uint64_t{1} << 33;

struct ExperimentConfig {
  ParamDistribution distribution;
  std::size_t width = 1;
  DomainRadius domain = DomainRadius::Infinite();
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool collect_radii = false;
  std::size_t radii_cap = kDefaultRadiiCap;

  // Throws InvalidArgument on width == 0, trials < workers, workers == 0, or
  // radii_cap == 0 with collect_radii.
  void Validate() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

struct MonteCarloSummary {
  ExperimentConfig config;
  // Index = observed number of kinks; length width + 1.
  std::vector<std::uint64_t> count_histogram;
  std::uint64_t trials = 0;
  double empirical_mean = 0.0;
  // Sample variance (n - 1 denominator); 0 below two trials.
  double empirical_variance = 0.0;
  // |x| of observed kinks, a uniform reservoir sample of at most radii_cap.
  std::vector<double> radii_sample;
  // Number of radii offered to the reservoir.
  std::uint64_t radii_seen = 0;

  friend bool operator==(const MonteCarloSummary&,
                         const MonteCarloSummary&) = default;
};

// Recomputes empirical_mean and empirical_variance from count_histogram.
void RecomputeMoments(MonteCarloSummary& summary);

// A zero-trial summary for `config`; the identity of MergeSummaries.
MonteCarloSummary EmptySummary(const ExperimentConfig& config);

MonteCarloSummary RunExperiment(const ExperimentConfig& config);

// Adds histograms and trial counts, recomputes the moments, and merges the
// radius reservoirs so that the result is again a uniform sample of all
// radii seen. Throws ConfigMismatch unless shape, scale, width and domain
// agree.
MonteCarloSummary MergeSummaries(const MonteCarloSummary& a,
                                 const MonteCarloSummary& b, RngStream& rng);
// Uses RngStream(a.config.seed, kMergeStream).
MonteCarloSummary MergeSummaries(const MonteCarloSummary& a,
                                 const MonteCarloSummary& b);

// Results of confronting a summary with the closed forms. Absent members
// were not applicable to this summary.
struct TheoryComparison {
  std::optional<GofReport> chi_square;  // histogram vs Binomial(w, P)
  std::optional<GofReport> mean;        // two-sided z-test vs E[#kinks]
  std::optional<GofReport> ks;          // radii vs KinkRadiusCdf
  std::vector<std::string> notes;

  bool all_pass() const;
};

// Chi-square goodness of fit of the kink-count histogram against the
// binomial law. Throws UnsupportedModel for the spherical model and
// InvalidArgument for an unbounded domain.
GofReport ComparePmf(const MonteCarloSummary& summary,
                     double alpha = kDefaultAlpha);

// Finite domain: chi-square and mean test (rectangular, Gaussian) or mean
// test only (spherical, R <= 1). Unbounded domain: KS of the radii against
// the per-kink CDF (rectangular, Gaussian).
TheoryComparison CompareToTheory(const MonteCarloSummary& summary,
                                 double alpha = kDefaultAlpha);

}  // namespace kinkscope

#endif  // KINKSCOPE_MC_ENGINE_H_
