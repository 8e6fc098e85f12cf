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

#include "kinkscope/summary_io.h"

#include <charconv>
#include <numeric>

#include "kinkscope/errors.h"

namespace kinkscope {
namespace {

using nlohmann::json;

const json& Field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double NumberField(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_number()) {
    throw InvalidArgument(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::uint64_t CountField(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_number_unsigned()) {
    throw InvalidArgument(std::string("field '") + key +
                          "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> DoubleArray(const json& v, const char* key) {
  if (!v.is_array()) {
    throw InvalidArgument(std::string("field '") + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) {
      throw InvalidArgument(std::string("field '") + key +
                            "' must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json DomainToJson(const DomainRadius& domain) {
  if (domain.is_finite()) return {{"kind", "finite"}, {"R", domain.radius()}};
  return {{"kind", "infinite"}};
}

DomainRadius DomainFromJson(const json& j) {
  const json& kind = Field(j, "kind");
  if (kind == "infinite") return DomainRadius::Infinite();
  if (kind == "finite") return DomainRadius::Finite(NumberField(j, "R"));
  throw InvalidArgument("domain kind must be 'finite' or 'infinite'");
}

json ConfigToJson(const ExperimentConfig& config) {
  return {
      {"shape", std::string(ShapeName(config.distribution.shape()))},
      {"scale", config.distribution.scale()},
      {"width", config.width},
      {"domain", DomainToJson(config.domain)},
      {"trials", config.trials},
      {"seed", config.seed},
      {"workers", config.workers},
      {"collect_radii", config.collect_radii},
      {"radii_cap", config.radii_cap},
  };
}

ExperimentConfig ConfigFromJson(const json& j) {
  const json& shape = Field(j, "shape");
  if (!shape.is_string()) throw InvalidArgument("shape must be a string");
  const json& collect = Field(j, "collect_radii");
  if (!collect.is_boolean()) {
    throw InvalidArgument("collect_radii must be a boolean");
  }
  ExperimentConfig config{
      .distribution = ParamDistribution(ParseShape(shape.get<std::string>()),
                                        NumberField(j, "scale")),
      .width = static_cast<std::size_t>(CountField(j, "width")),
      .domain = DomainFromJson(Field(j, "domain")),
      .trials = CountField(j, "trials"),
      .seed = CountField(j, "seed"),
      .workers = static_cast<std::size_t>(CountField(j, "workers")),
      .collect_radii = collect.get<bool>(),
      .radii_cap = static_cast<std::size_t>(CountField(j, "radii_cap")),
  };
  if (config.width == 0) throw InvalidArgument("width must be positive");
  return config;
}

json SummaryToJson(const MonteCarloSummary& summary) {
  return {
      {"schema_version", kSummarySchemaVersion},
      {"config", ConfigToJson(summary.config)},
      {"count_histogram", summary.count_histogram},
      {"trials", summary.trials},
      {"empirical_mean", summary.empirical_mean},
      {"empirical_variance", summary.empirical_variance},
      {"radii_sample", summary.radii_sample},
      {"radii_seen", summary.radii_seen},
  };
}

MonteCarloSummary SummaryFromJson(const json& j) {
  const json& version = Field(j, "schema_version");
  if (version != kSummarySchemaVersion) {
    throw InvalidArgument("unsupported summary schema version");
  }
  MonteCarloSummary summary{.config = ConfigFromJson(Field(j, "config"))};
  const json& hist = Field(j, "count_histogram");
  if (!hist.is_array()) {
    throw InvalidArgument("count_histogram must be an array");
  }
  for (const json& e : hist) {
    if (!e.is_number_unsigned()) {
      throw InvalidArgument("count_histogram must hold non-negative integers");
    }
    summary.count_histogram.push_back(e.get<std::uint64_t>());
  }
  if (summary.count_histogram.size() != summary.config.width + 1) {
    throw InvalidArgument("count_histogram must have width + 1 entries");
  }
  summary.trials = CountField(j, "trials");
  const std::uint64_t total =
      std::accumulate(summary.count_histogram.begin(),
                      summary.count_histogram.end(), std::uint64_t{0});
  if (total != summary.trials) {
    throw InvalidArgument("count_histogram does not sum to trials");
  }
  summary.radii_sample = DoubleArray(Field(j, "radii_sample"), "radii_sample");
  summary.radii_seen = j.contains("radii_seen")
                           ? CountField(j, "radii_seen")
                           : summary.radii_sample.size();
  if (summary.radii_seen < summary.radii_sample.size()) {
    throw InvalidArgument("radii_seen is smaller than the radii sample");
  }
  // The histogram is authoritative; stored moments are only checked for type.
  NumberField(j, "empirical_mean");
  NumberField(j, "empirical_variance");
  RecomputeMoments(summary);
  return summary;
}

json ParamsToJson(const NetworkParams& params) {
  const auto vec = [](std::span<const double> s) {
    return std::vector<double>(s.begin(), s.end());
  };
  return {
      {"width", params.width()},
      {"first_weights", vec(params.first_weights())},
      {"first_biases", vec(params.first_biases())},
      {"out_weights", vec(params.out_weights())},
      {"out_bias", params.out_bias()},
  };
}

NetworkParams ParamsFromJson(const json& j) {
  NetworkParams params(DoubleArray(Field(j, "first_weights"), "first_weights"),
                       DoubleArray(Field(j, "first_biases"), "first_biases"),
                       DoubleArray(Field(j, "out_weights"), "out_weights"),
                       NumberField(j, "out_bias"));
  if (j.contains("width") && CountField(j, "width") != params.width()) {
    throw InvalidArgument("width does not match the parameter arrays");
  }
  return params;
}

json GofToJson(const GofReport& report) {
  json statistic = report.statistic;
  // JSON has no infinity.
  if (!std::isfinite(report.statistic)) statistic = "inf";
  return {
      {"test", report.test},   {"statistic", statistic},
      {"dof", report.dof},     {"threshold", report.threshold},
      {"alpha", report.alpha}, {"pass", report.pass},
  };
}

json ComparisonToJson(const TheoryComparison& comparison) {
  const auto optional_report = [](const std::optional<GofReport>& r) {
    return r ? GofToJson(*r) : json("not available");
  };
  return {
      {"chi_square", optional_report(comparison.chi_square)},
      {"mean", optional_report(comparison.mean)},
      {"ks", optional_report(comparison.ks)},
      {"notes", comparison.notes},
      {"all_pass", comparison.all_pass()},
  };
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void WriteRadiiCsv(std::span<const double> radii, std::ostream& out) {
  out << "r\n";
  for (double r : radii) out << FormatDouble(r) << '\n';
}

void WriteHistogramCsv(std::span<const std::uint64_t> histogram,
                       std::ostream& out) {
  out << "w_prime,count\n";
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    out << k << ',' << histogram[k] << '\n';
  }
}

}  // namespace kinkscope
