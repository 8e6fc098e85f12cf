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

#ifndef KINKSCOPE_SAMPLERS_H_
#define KINKSCOPE_SAMPLERS_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kinkscope/core_model.h"

namespace kinkscope {

enum class Shape {
  kRectangular,  // weights and biases i.i.d. Uniform(-T, T)
  kGaussian,     // weights and biases i.i.d. Normal(0, nu)
  kSpherical,    // biases i.i.d. Uniform(-T, T), weight vector uniform in the
                 // solid ball of radius T
};

// "rect", "gauss", "sphere".
std::string_view ShapeName(Shape shape);
// Accepts the short names above plus "rectangular", "gaussian", "spherical".
// Throws InvalidArgument otherwise.
Shape ParseShape(std::string_view name);

// A parameter model together with its scale: the half-width T for the
// rectangular and spherical shapes, the variance nu for the Gaussian one.
class ParamDistribution {
 public:
  static ParamDistribution Rectangular(double half_width);
  static ParamDistribution Gaussian(double variance);
  static ParamDistribution Spherical(double radius);
  // Throws InvalidArgument unless scale is positive and finite.
  ParamDistribution(Shape shape, double scale);

  Shape shape() const { return shape_; }
  double scale() const { return scale_; }

  friend bool operator==(const ParamDistribution&,
                         const ParamDistribution&) = default;

 private:
  Shape shape_;
  double scale_;
};

// A reproducible random stream keyed by (seed, stream_id). Streams with
// different ids under one seed are decorrelated by a splitmix64 mix of both
// values into the engine seed.
//
// Not thread-safe; give every worker its own stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform on [0, 1).
  double Uniform01();
  // Uniform on (0, 1].
  double UniformOpenZero();
  // Uniform on [-1, 1).
  double UniformSymmetric();
  double StandardNormal();
  // Uniform integer in [0, bound]. `bound` must be representable.
  std::uint64_t UniformIndex(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// splitmix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Uniform point in the solid w-ball of the given radius: a normalized
// Gaussian direction scaled by radius * U^(1/w). No rejection, so any width
// works.
std::vector<double> SampleInBall(std::size_t width, double radius,
                                 RngStream& rng);

// Draws theta from `dist`. Every entry is the scale times a unit draw, so two
// distributions with the same shape consume the stream identically and
// produce kink positions that differ only by rounding of the ratio.
//
// Output-layer entries use the shape's scalar marginal: Uniform(-T, T) for
// rectangular and spherical, Normal(0, nu) for Gaussian.
NetworkParams SampleParams(const ParamDistribution& dist, std::size_t width,
                           RngStream& rng);

}  // namespace kinkscope

#endif  // KINKSCOPE_SAMPLERS_H_
