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

#include "kinkscope/samplers.h"

#include <cmath>
#include <limits>
#include <string>

#include "kinkscope/errors.h"

namespace kinkscope {

std::string_view ShapeName(Shape shape) {
  switch (shape) {
    case Shape::kRectangular:
      return "rect";
    case Shape::kGaussian:
      return "gauss";
    case Shape::kSpherical:
      return "sphere";
  }
  return "unknown";
}

Shape ParseShape(std::string_view name) {
  if (name == "rect" || name == "rectangular") return Shape::kRectangular;
  if (name == "gauss" || name == "gaussian") return Shape::kGaussian;
  if (name == "sphere" || name == "spherical") return Shape::kSpherical;
  throw InvalidArgument("unknown shape '" + std::string(name) +
                        "' (expected rect, gauss or sphere)");
}

ParamDistribution::ParamDistribution(Shape shape, double scale)
    : shape_(shape), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("distribution scale must be positive and finite");
  }
}

ParamDistribution ParamDistribution::Rectangular(double half_width) {
  return ParamDistribution(Shape::kRectangular, half_width);
}

ParamDistribution ParamDistribution::Gaussian(double variance) {
  return ParamDistribution(Shape::kGaussian, variance);
}

ParamDistribution ParamDistribution::Spherical(double radius) {
  return ParamDistribution(Shape::kSpherical, radius);
}

std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(MixBits(MixBits(seed) ^ MixBits(stream_id ^
                                              0x5851f42d4c957f2dULL))) {}

double RngStream::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::UniformOpenZero() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::UniformSymmetric() { return 2.0 * Uniform01() - 1.0; }

double RngStream::StandardNormal() { return normal_(engine_); }

std::uint64_t RngStream::UniformIndex(std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound)(engine_);
}

std::vector<double> SampleInBall(std::size_t width, double radius,
                                 RngStream& rng) {
  if (width == 0) throw InvalidArgument("ball dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball radius must be positive and finite");
  }
  std::vector<double> point(width);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& v : point) {
      v = rng.StandardNormal();
      norm_sq += v * v;
    }
  } while (norm_sq == 0.0);

  const double magnitude =
      radius *
      std::pow(rng.UniformOpenZero(), 1.0 / static_cast<double>(width));
  double factor = magnitude / std::sqrt(norm_sq);
  // Rounding may push the norm a few ulps past the radius.
  for (;;) {
    double out_sq = 0.0;
    for (double v : point) out_sq += (v * factor) * (v * factor);
    if (std::sqrt(out_sq) <= radius) break;
    factor *= 1.0 - 4.0 * std::numeric_limits<double>::epsilon();
  }
  for (double& v : point) v *= factor;
  return point;
}

NetworkParams SampleParams(const ParamDistribution& dist, std::size_t width,
                           RngStream& rng) {
  if (width == 0) throw InvalidArgument("network width must be positive");
  const double scale = dist.scale();
  std::vector<double> first_weights(width);
  std::vector<double> first_biases(width);
  std::vector<double> out_weights(width);
  double out_bias = 0.0;

  switch (dist.shape()) {
    case Shape::kRectangular:
      for (double& v : first_weights) v = scale * rng.UniformSymmetric();
      for (double& v : first_biases) v = scale * rng.UniformSymmetric();
      for (double& v : out_weights) v = scale * rng.UniformSymmetric();
      out_bias = scale * rng.UniformSymmetric();
      break;
    case Shape::kGaussian: {
      const double sd = std::sqrt(scale);
      for (double& v : first_weights) v = sd * rng.StandardNormal();
      for (double& v : first_biases) v = sd * rng.StandardNormal();
      for (double& v : out_weights) v = sd * rng.StandardNormal();
      out_bias = sd * rng.StandardNormal();
      break;
    }
    case Shape::kSpherical: {
      first_weights = SampleInBall(width, scale, rng);
      for (double& v : first_biases) v = scale * rng.UniformSymmetric();
      for (double& v : out_weights) v = scale * rng.UniformSymmetric();
      out_bias = scale * rng.UniformSymmetric();
      break;
    }
  }
  return NetworkParams(std::move(first_weights), std::move(first_biases),
                       std::move(out_weights), out_bias);
}

}  // namespace kinkscope
