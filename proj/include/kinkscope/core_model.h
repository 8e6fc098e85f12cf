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

// Exact representation of width-w, one-hidden-layer networks R -> R with a
// piecewise-linear activation that has a single kink at the origin, and
// extraction of their points of non-linearity.

#ifndef KINKSCOPE_CORE_MODEL_H_
#define KINKSCOPE_CORE_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

namespace kinkscope {

// Coincident breakpoints closer than this (absolute) are reported once.
inline constexpr double kKinkDedupeTolerance = 1e-12;

// Slope changes smaller than this fraction of the largest secant slope are
// treated as rounding noise by SlopeChangeOracle.
inline constexpr double kSlopeChangeTolerance = 1e-9;

// The hidden-layer activation. Swapping this for any other piecewise-linear
// function with its only kink at 0 leaves breakpoint extraction valid.
inline double Activation(double z) { return z > 0.0 ? z : 0.0; }

// One parameter draw theta = (first_weights, first_biases, out_weights,
// out_bias) defining
//   f(x) = out_bias + sum_i out_weights[i] * act(first_biases[i] +
//                                                x * first_weights[i]).
class NetworkParams {
 public:
  // Throws InvalidArgument if the sequences are empty, differ in length, or
  // hold non-finite values.
  NetworkParams(std::vector<double> first_weights,
                std::vector<double> first_biases,
                std::vector<double> out_weights, double out_bias);

  std::size_t width() const { return first_weights_.size(); }
  std::span<const double> first_weights() const { return first_weights_; }
  std::span<const double> first_biases() const { return first_biases_; }
  std::span<const double> out_weights() const { return out_weights_; }
  double out_bias() const { return out_bias_; }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;

 private:
  std::vector<double> first_weights_;
  std::vector<double> first_biases_;
  std::vector<double> out_weights_;
  double out_bias_;
};

// The input interval (-R, R), with R possibly infinite.
class DomainRadius {
 public:
  // Throws InvalidArgument unless 0 < radius < inf.
  static DomainRadius Finite(double radius);
  static DomainRadius Infinite() { return DomainRadius(); }

  bool is_finite() const { return finite_; }
  // +inf for the unbounded domain.
  double radius() const;
  // Strict containment: points exactly on +-R are outside.
  bool Contains(double x) const;

  friend bool operator==(const DomainRadius&, const DomainRadius&) = default;

 private:
  DomainRadius() = default;
  bool finite_ = false;
  double radius_ = 0.0;
};

// Sorted, de-duplicated points of non-linearity inside the domain.
struct KinkReport {
  std::vector<double> positions;
  std::size_t count() const { return positions.size(); }
};

double EvalNetwork(const NetworkParams& params, double x);

// Breakpoint -first_biases[i] / first_weights[i] of every neuron with a
// non-zero first weight, restricted to the domain. Output weights are ignored:
// a neuron whose out weight is exactly zero still reports its breakpoint.
KinkReport KinkPositions(const NetworkParams& params,
                         const DomainRadius& domain);

// Independent numeric check of KinkPositions: samples f on a uniform grid of
// `grid_points` nodes spanning [-R, R], and counts the places where the
// secant slope changes by more than kSlopeChangeTolerance (relative).
//
// Requires a finite domain and grid_points >= 3. Throws
// InsufficientResolution when the sampled slopes cannot be explained by
// isolated breakpoints (two kinks in one cell or in adjacent cells).
std::size_t SlopeChangeOracle(const NetworkParams& params,
                              const DomainRadius& domain,
                              std::size_t grid_points);

}  // namespace kinkscope

#endif  // KINKSCOPE_CORE_MODEL_H_
