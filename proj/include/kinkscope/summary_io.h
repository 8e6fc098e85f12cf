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

// JSON and CSV encodings of experiment configs, summaries and test reports.
//
// Summary document:
//   {
//     "schema_version": "kinkscope.summary/1",
//     "config": {"shape": "rect", "scale": 1.0, "width": 10,
//                "domain": {"kind": "finite", "R": 1.0},
//                "trials": 200000, "seed": 42, "workers": 4,
//                "collect_radii": false, "radii_cap": 100000},
//     "count_histogram": [...], "trials": 200000,
//     "empirical_mean": ..., "empirical_variance": ...,
//     "radii_sample": [...], "radii_seen": 0
//   }
// An unbounded domain is written as {"kind": "infinite"}.

#ifndef KINKSCOPE_SUMMARY_IO_H_
#define KINKSCOPE_SUMMARY_IO_H_

#include <ostream>
#include <span>
#include <string>

#include "json.hpp"
#include "kinkscope/core_model.h"
#include "kinkscope/mc_engine.h"
#include "kinkscope/stats.h"

namespace kinkscope {

inline constexpr const char* kSummarySchemaVersion = "kinkscope.summary/1";

nlohmann::json DomainToJson(const DomainRadius& domain);
DomainRadius DomainFromJson(const nlohmann::json& j);

nlohmann::json ConfigToJson(const ExperimentConfig& config);
ExperimentConfig ConfigFromJson(const nlohmann::json& j);

nlohmann::json SummaryToJson(const MonteCarloSummary& summary);
// Throws InvalidArgument on a missing field, wrong type, unknown schema
// version, or a document that violates the summary invariants.
MonteCarloSummary SummaryFromJson(const nlohmann::json& j);

nlohmann::json ParamsToJson(const NetworkParams& params);
NetworkParams ParamsFromJson(const nlohmann::json& j);

nlohmann::json GofToJson(const GofReport& report);
nlohmann::json ComparisonToJson(const TheoryComparison& comparison);

// Shortest decimal text that round-trips to `value`.
std::string FormatDouble(double value);

// Single column with header "r".
void WriteRadiiCsv(std::span<const double> radii, std::ostream& out);
// Columns "w_prime,count".
void WriteHistogramCsv(std::span<const std::uint64_t> histogram,
                       std::ostream& out);

}  // namespace kinkscope

#endif  // KINKSCOPE_SUMMARY_IO_H_
