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

#include "kinkscope/cli.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kinkscope/errors.h"
#include "kinkscope/mc_engine.h"
#include "kinkscope/samplers.h"
#include "kinkscope/stats.h"
#include "kinkscope/summary_io.h"
#include "kinkscope/theory.h"

namespace kinkscope::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Thrown for unwritable or unreadable files; maps to kExitIo.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PredictOptions {
  std::string shape;
  std::size_t width = 0;
  double radius = 0.0;
  double scale = 1.0;
  bool pretty = false;
};

struct SimulateOptions {
  std::string shape;
  std::size_t width = 0;
  std::optional<double> radius;
  bool unbounded = false;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  double scale = 1.0;
  std::size_t radii_cap = kDefaultRadiiCap;
  bool collect_radii = false;
  std::string out_path;
  std::string radii_csv;
  std::string hist_csv;
  bool pretty = false;
};

struct CompareOptions {
  std::string sim_path;
  double alpha = kDefaultAlpha;
  bool pretty = false;
};

struct SweepOptions {
  std::string shape = "sphere";
  std::string width_list;
  double radius = 1.0;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  double confidence = 0.95;
  bool density_curve = false;
  std::size_t width = 1;
  double r_max = 4.0;
  double r_step = 0.05;
  std::string csv_path;
};

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr) {
    std::uint64_t value = 0;
    const std::string text(env);
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw InvalidArgument(std::string(kSeedEnvVar) +
                            " must be an unsigned integer");
    }
    return value;
  }
  return 0;
}

json MakeReport(const std::string& command, json inputs, json outputs,
                Clock::time_point start) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      Clock::now() - start);
  return {
      {"schema_version", kReportSchemaVersion},
      {"command", command},
      {"inputs", std::move(inputs)},
      {"outputs", std::move(outputs)},
      {"timing_ms", elapsed.count()},
  };
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) throw IoError("cannot open '" + path + "' for writing");
  return stream;
}

void FinishWrite(std::ofstream& stream, const std::string& path) {
  stream.flush();
  if (!stream) throw IoError("failed writing '" + path + "'");
}

void PrintPmfTable(std::ostream& out, const std::vector<double>& pmf) {
  out << "  w'  pmf\n";
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    out << "  " << std::setw(3) << k << " " << FormatDouble(pmf[k]) << '\n';
  }
}

int Predict(const PredictOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  const Shape shape = ParseShape(opt.shape);
  ParamDistribution(shape, opt.scale);  // validates the scale
  if (opt.width == 0) throw InvalidArgument("--w must be positive");
  if (!(opt.radius > 0.0) || !std::isfinite(opt.radius)) {
    throw InvalidArgument("--R must be positive and finite");
  }
  const Prediction prediction = Predict(shape, opt.width, opt.radius);

  json outputs = {{"mean", prediction.mean}};
  if (prediction.hit_probability) {
    outputs["hit_probability"] = *prediction.hit_probability;
    outputs["pmf"] = prediction.pmf;
  } else {
    const double asymptotic =
        SphericalExpectedAsymptotic(opt.width, opt.radius);
    outputs["pmf"] = "not available";
    outputs["exact"] = prediction.mean;
    outputs["asymptotic"] = asymptotic;
    outputs["ratio"] = prediction.mean / asymptotic;
  }
  const json inputs = {
      {"shape", std::string(ShapeName(shape))},
      {"w", opt.width},
      {"R", opt.radius},
      {"scale", opt.scale},
      {"scale_affects_prediction", false},
  };
  if (!opt.pretty) {
    out << MakeReport("predict", inputs, outputs, start).dump(2) << '\n';
    return kExitOk;
  }
  out << "shape " << ShapeName(shape) << "  w " << opt.width << "  R "
      << FormatDouble(opt.radius) << "  (scale " << FormatDouble(opt.scale)
      << " does not affect predictions)\n";
  if (prediction.hit_probability) {
    out << "  P     " << FormatDouble(*prediction.hit_probability) << '\n';
    out << "  mean  " << FormatDouble(prediction.mean) << '\n';
    PrintPmfTable(out, prediction.pmf);
  } else {
    out << "  exact       " << FormatDouble(prediction.mean) << '\n';
    out << "  asymptotic  " << FormatDouble(outputs["asymptotic"].get<double>())
        << '\n';
    out << "  pmf         not available\n";
  }
  return kExitOk;
}

int Simulate(const SimulateOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  if (opt.unbounded == opt.radius.has_value()) {
    throw InvalidArgument("give exactly one of --R and --unbounded");
  }
  ExperimentConfig config{
      .distribution = ParamDistribution(ParseShape(opt.shape), opt.scale),
      .width = opt.width,
      .domain = opt.unbounded ? DomainRadius::Infinite()
                              : DomainRadius::Finite(*opt.radius),
      .trials = opt.trials,
      .seed = ResolveSeed(opt.seed),
      .workers = opt.workers,
      .collect_radii =
          opt.collect_radii || opt.unbounded || !opt.radii_csv.empty(),
      .radii_cap = opt.radii_cap,
  };
  config.Validate();

  std::optional<std::ofstream> summary_file;
  std::optional<std::ofstream> radii_file;
  std::optional<std::ofstream> hist_file;
  if (!opt.out_path.empty()) summary_file = OpenForWrite(opt.out_path);
  if (!opt.radii_csv.empty()) radii_file = OpenForWrite(opt.radii_csv);
  if (!opt.hist_csv.empty()) hist_file = OpenForWrite(opt.hist_csv);

  const MonteCarloSummary summary = RunExperiment(config);

  if (summary_file) {
    *summary_file << SummaryToJson(summary).dump(2) << '\n';
    FinishWrite(*summary_file, opt.out_path);
  }
  if (radii_file) {
    WriteRadiiCsv(summary.radii_sample, *radii_file);
    FinishWrite(*radii_file, opt.radii_csv);
  }
  if (hist_file) {
    WriteHistogramCsv(summary.count_histogram, *hist_file);
    FinishWrite(*hist_file, opt.hist_csv);
  }

  if (opt.pretty) {
    out << "shape " << ShapeName(config.distribution.shape()) << "  w "
        << config.width << "  trials " << summary.trials << "  seed "
        << config.seed << '\n';
    out << "  mean      " << FormatDouble(summary.empirical_mean) << '\n';
    out << "  variance  " << FormatDouble(summary.empirical_variance) << '\n';
    out << "  w'  count\n";
    for (std::size_t k = 0; k < summary.count_histogram.size(); ++k) {
      out << "  " << std::setw(3) << k << " " << summary.count_histogram[k]
          << '\n';
    }
    return kExitOk;
  }
  json files = json::object();
  if (!opt.out_path.empty()) files["summary"] = opt.out_path;
  if (!opt.radii_csv.empty()) files["radii_csv"] = opt.radii_csv;
  if (!opt.hist_csv.empty()) files["hist_csv"] = opt.hist_csv;
  const json outputs = {
      {"trials", summary.trials},
      {"count_histogram", summary.count_histogram},
      {"empirical_mean", summary.empirical_mean},
      {"empirical_variance", summary.empirical_variance},
      {"radii_collected", summary.radii_sample.size()},
      {"radii_seen", summary.radii_seen},
      {"files", files},
  };
  out << MakeReport("simulate", ConfigToJson(config), outputs, start).dump(2)
      << '\n';
  return kExitOk;
}

int Compare(const CompareOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  std::ifstream in(opt.sim_path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + opt.sim_path + "'");
  json document;
  try {
    document = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed summary '" + opt.sim_path +
                          "': " + e.what());
  }
  const MonteCarloSummary summary = SummaryFromJson(document);
  const TheoryComparison comparison = CompareToTheory(summary, opt.alpha);

  const ExperimentConfig& config = summary.config;
  json outputs = ComparisonToJson(comparison);
  if (config.domain.is_finite()) {
    outputs["expected_mean"] = ExpectedKinks(
        config.distribution.shape(), config.width, config.domain.radius());
    outputs["empirical_mean"] = summary.empirical_mean;
  }
  const json inputs = {
      {"sim", opt.sim_path}, {"alpha", opt.alpha}, {"config", ConfigToJson(config)}};
  if (opt.pretty) {
    for (const auto* r :
         {&comparison.chi_square, &comparison.mean, &comparison.ks}) {
      if (!r->has_value()) continue;
      const GofReport& g = **r;
      out << std::left << std::setw(11) << g.test << std::right
          << " statistic " << FormatDouble(g.statistic) << "  threshold "
          << FormatDouble(g.threshold) << "  " << (g.pass ? "PASS" : "FAIL")
          << '\n';
    }
    for (const std::string& note : comparison.notes) out << note << '\n';
  } else {
    out << MakeReport("compare", inputs, outputs, start).dump(2) << '\n';
  }
  return comparison.all_pass() ? kExitOk : kExitStatisticalFailure;
}

int Sweep(const SweepOptions& opt, std::ostream& out) {
  std::optional<std::ofstream> file;
  if (!opt.csv_path.empty()) file = OpenForWrite(opt.csv_path);
  std::ostream& csv = file ? static_cast<std::ostream&>(*file) : out;

  if (opt.density_curve) {
    if (opt.width == 0) throw InvalidArgument("--w must be positive");
    if (!(opt.r_step > 0.0) || !(opt.r_max >= 0.0)) {
      throw InvalidArgument("--r-step must be positive, --r-max >= 0");
    }
    const auto steps =
        static_cast<std::size_t>(std::floor(opt.r_max / opt.r_step + 1e-9));
    csv << "r,rect_pdf,gauss_pdf\n";
    for (std::size_t j = 0; j <= steps; ++j) {
      const double r = static_cast<double>(j) * opt.r_step;
      csv << FormatDouble(r) << ','
          << FormatDouble(KinkRadiusIntensity(Shape::kRectangular, opt.width, r))
          << ','
          << FormatDouble(KinkRadiusIntensity(Shape::kGaussian, opt.width, r))
          << '\n';
    }
    if (file) FinishWrite(*file, opt.csv_path);
    return kExitOk;
  }

  if (ParseShape(opt.shape) != Shape::kSpherical) {
    throw InvalidArgument("sweep tabulates the spherical model; use "
                          "--shape sphere or --density-curve");
  }
  if (opt.width_list.empty()) throw InvalidArgument("--w-list is required");
  const std::vector<std::size_t> widths = ParseWidthList(opt.width_list);
  const std::uint64_t seed = ResolveSeed(opt.seed);
  // Validate the whole range before simulating anything.
  for (std::size_t w : widths) SphericalExpectedExact(w, opt.radius);

  csv << "w,exact,asymptotic,empirical_mean,ci_halfwidth\n";
  for (std::size_t w : widths) {
    const ExperimentConfig config{
        .distribution = ParamDistribution::Spherical(1.0),
        .width = w,
        .domain = DomainRadius::Finite(opt.radius),
        .trials = opt.trials,
        .seed = seed,
        .workers = opt.workers,
    };
    const MonteCarloSummary summary = RunExperiment(config);
    const MeanInterval ci =
        MeanCi(summary.count_histogram, summary.trials, opt.confidence);
    csv << w << ',' << FormatDouble(SphericalExpectedExact(w, opt.radius))
        << ',' << FormatDouble(SphericalExpectedAsymptotic(w, opt.radius))
        << ',' << FormatDouble(ci.mean) << ',' << FormatDouble(ci.halfwidth)
        << '\n';
  }
  if (file) FinishWrite(*file, opt.csv_path);
  return kExitOk;
}

}  // namespace

std::vector<std::size_t> ParseWidthList(const std::string& text) {
  const auto parse_one = [](const std::string& token) {
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size() || value == 0) {
      throw InvalidArgument("bad width '" + token + "' in --w-list");
    }
    return value;
  };
  std::vector<std::size_t> widths;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      widths.push_back(parse_one(token));
      continue;
    }
    const std::size_t lo = parse_one(token.substr(0, dots));
    const std::size_t hi = parse_one(token.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("empty range '" + token + "'");
    for (std::size_t w = lo; w <= hi; ++w) widths.push_back(w);
  }
  if (widths.empty()) throw InvalidArgument("--w-list is empty");
  return widths;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Kink statistics of random one-hidden-layer ReLU networks",
               "kinkscope"};
  app.require_subcommand(1);

  PredictOptions predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Closed-form kink-count predictions");
  predict_cmd->add_option("--shape", predict.shape, "rect, gauss or sphere")
      ->required();
  predict_cmd->add_option("--w", predict.width, "Network width")->required();
  predict_cmd->add_option("--R", predict.radius, "Domain radius")->required();
  predict_cmd->add_option("--scale", predict.scale,
                          "T or nu (does not affect predictions)");
  predict_cmd->add_flag("--pretty", predict.pretty, "Human-readable table");

  SimulateOptions simulate;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo kink statistics");
  simulate_cmd->add_option("--shape", simulate.shape)->required();
  simulate_cmd->add_option("--w", simulate.width)->required();
  auto* radius_opt = simulate_cmd->add_option("--R", simulate.radius);
  simulate_cmd->add_flag("--unbounded", simulate.unbounded)
      ->excludes(radius_opt);
  simulate_cmd->add_option("--trials", simulate.trials)->required();
  simulate_cmd->add_option("--seed", simulate.seed);
  simulate_cmd->add_option("--workers", simulate.workers);
  simulate_cmd->add_option("--scale", simulate.scale);
  simulate_cmd->add_option("--radii-cap", simulate.radii_cap);
  simulate_cmd->add_flag("--collect-radii", simulate.collect_radii);
  simulate_cmd->add_option("--out", simulate.out_path, "Summary JSON path");
  simulate_cmd->add_option("--radii-csv", simulate.radii_csv);
  simulate_cmd->add_option("--hist-csv", simulate.hist_csv);
  simulate_cmd->add_flag("--pretty", simulate.pretty);

  CompareOptions compare;
  auto* compare_cmd =
      app.add_subcommand("compare", "Test a summary against the closed forms");
  compare_cmd->add_option("--sim", compare.sim_path)->required();
  compare_cmd->add_option("--alpha", compare.alpha);
  compare_cmd->add_flag("--pretty", compare.pretty);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Spherical sqrt(w) table, or radial density curves");
  sweep_cmd->add_option("--shape", sweep.shape);
  sweep_cmd->add_option("--w-list", sweep.width_list, "e.g. 2..8 or 2,4,8");
  sweep_cmd->add_option("--R", sweep.radius);
  sweep_cmd->add_option("--trials", sweep.trials);
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--workers", sweep.workers);
  sweep_cmd->add_option("--confidence", sweep.confidence);
  sweep_cmd->add_flag("--density-curve", sweep.density_curve);
  sweep_cmd->add_option("--w", sweep.width);
  sweep_cmd->add_option("--r-max", sweep.r_max);
  sweep_cmd->add_option("--r-step", sweep.r_step);
  sweep_cmd->add_option("--csv", sweep.csv_path);

  std::vector<const char*> argv{"kinkscope"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*predict_cmd) return Predict(predict, out);
    if (*simulate_cmd) return Simulate(simulate, out);
    if (*compare_cmd) return Compare(compare, out);
    if (*sweep_cmd) return Sweep(sweep, out);
  } catch (const OutOfTheoryRange& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutOfTheoryRange;
  } catch (const UnsupportedModel& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutOfTheoryRange;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kinkscope::cli
