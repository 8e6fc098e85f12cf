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

#include "kinkscope/core_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinkscope/errors.h"

namespace kinkscope {
namespace {

bool AllFinite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

NetworkParams::NetworkParams(std::vector<double> first_weights,
                             std::vector<double> first_biases,
                             std::vector<double> out_weights, double out_bias)
    : first_weights_(std::move(first_weights)),
      first_biases_(std::move(first_biases)),
      out_weights_(std::move(out_weights)),
      out_bias_(out_bias) {
  const std::size_t w = first_weights_.size();
  if (w == 0) throw InvalidArgument("network width must be positive");
  if (first_biases_.size() != w || out_weights_.size() != w) {
    throw InvalidArgument("parameter sequences must all have length " +
                          std::to_string(w));
  }
  if (!AllFinite(first_weights_) || !AllFinite(first_biases_) ||
      !AllFinite(out_weights_) || !std::isfinite(out_bias_)) {
    throw InvalidArgument("network parameters must be finite");
  }
}

DomainRadius DomainRadius::Finite(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("domain radius must be positive and finite");
  }
  DomainRadius d;
  d.finite_ = true;
  d.radius_ = radius;
  return d;
}

double DomainRadius::radius() const {
  return finite_ ? radius_ : std::numeric_limits<double>::infinity();
}

bool DomainRadius::Contains(double x) const {
  if (!finite_) return std::isfinite(x);
  return -radius_ < x && x < radius_;
}

double EvalNetwork(const NetworkParams& params, double x) {
  const auto l = params.first_weights();
  const auto t = params.first_biases();
  const auto out = params.out_weights();
  double y = params.out_bias();
  for (std::size_t i = 0; i < params.width(); ++i) {
    y += out[i] * Activation(t[i] + x * l[i]);
  }
  return y;
}

KinkReport KinkPositions(const NetworkParams& params,
                         const DomainRadius& domain) {
  const auto l = params.first_weights();
  const auto t = params.first_biases();
  KinkReport report;
  report.positions.reserve(params.width());
  for (std::size_t i = 0; i < params.width(); ++i) {
    if (l[i] == 0.0) continue;
    const double x = -t[i] / l[i];
    if (domain.Contains(x)) report.positions.push_back(x);
  }
  std::sort(report.positions.begin(), report.positions.end());
  auto last = std::unique(report.positions.begin(), report.positions.end(),
                          [](double a, double b) {
                            return b - a <= kKinkDedupeTolerance;
                          });
  report.positions.erase(last, report.positions.end());
  return report;
}

std::size_t SlopeChangeOracle(const NetworkParams& params,
                              const DomainRadius& domain,
                              std::size_t grid_points) {
  if (!domain.is_finite()) {
    throw InvalidArgument("slope-change oracle needs a finite domain");
  }
  if (grid_points < 3) {
    throw InvalidArgument("slope-change oracle needs at least 3 grid points");
  }
  const double r = domain.radius();
  const std::size_t cells = grid_points - 1;
  const double h = 2.0 * r / static_cast<double>(cells);

  std::vector<double> xs(grid_points);
  std::vector<double> fs(grid_points);
  double f_max = 0.0;
  for (std::size_t j = 0; j < grid_points; ++j) {
    xs[j] = j + 1 == grid_points ? r : -r + static_cast<double>(j) * h;
    fs[j] = EvalNetwork(params, xs[j]);
    f_max = std::max(f_max, std::abs(fs[j]));
  }
  std::vector<double> slopes(cells);
  double slope_max = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    slopes[j] = (fs[j + 1] - fs[j]) / (xs[j + 1] - xs[j]);
    slope_max = std::max(slope_max, std::abs(slopes[j]));
  }
  const double slope_tol = kSlopeChangeTolerance * slope_max;
  // Pointwise tolerance for the single-kink consistency check below.
  const double value_tol =
      slope_tol * h + 64.0 * std::numeric_limits<double>::epsilon() * f_max;

  // changed[b]: slope differs across the node between cell b and cell b+1.
  std::vector<bool> changed(cells > 0 ? cells - 1 : 0);
  for (std::size_t b = 0; b + 1 < cells; ++b) {
    changed[b] = std::abs(slopes[b + 1] - slopes[b]) > slope_tol;
  }

  std::size_t kinks = 0;
  std::size_t b = 0;
  while (b < changed.size()) {
    if (!changed[b]) {
      ++b;
      continue;
    }
    std::size_t run = 0;
    while (b + run < changed.size() && changed[b + run]) ++run;
    if (run > 2) {
      throw InsufficientResolution(
          "breakpoints in adjacent grid cells near x = " +
          std::to_string(xs[b + 1]) + "; refine the grid");
    }
    if (run == 2) {
      // A single kink strictly inside cell c: the lines through the
      // neighbouring cells must meet inside c, and f must pass through
      // their intersection.
      const std::size_t c = b + 1;
      const double left = slopes[b];
      const double right = slopes[b + 2];
      if (std::abs(left - right) <= slope_tol) {
        throw InsufficientResolution(
            "cancelling breakpoints inside one grid cell near x = " +
            std::to_string(xs[c]));
      }
      const double x_star =
          (fs[c + 1] - fs[c] - right * xs[c + 1] + left * xs[c]) /
          (left - right);
      const double y_star = fs[c] + left * (x_star - xs[c]);
      const bool inside = x_star >= xs[c] - h * 1e-6 &&
                          x_star <= xs[c + 1] + h * 1e-6;
      if (!inside ||
          std::abs(EvalNetwork(params, x_star) - y_star) > value_tol) {
        throw InsufficientResolution(
            "more than one breakpoint inside one grid cell near x = " +
            std::to_string(xs[c]));
      }
    }
    ++kinks;
    b += run;
  }
  return kinks;
}

}  // namespace kinkscope
