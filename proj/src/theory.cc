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

#include "kinkscope/theory.h"

#include <cmath>
#include <numbers>
#include <string>

#include "kinkscope/errors.h"

namespace kinkscope {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.1447298858494002;  // log(pi)
constexpr double kLog2 = std::numbers::ln2;

void RequireFiniteRadius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("R must be positive and finite");
  }
}

void RequireWidth(std::size_t width) {
  if (width == 0) throw InvalidArgument("width must be positive");
}

void RequireRadial(double r) {
  if (!(r >= 0.0)) throw InvalidArgument("radius r must be non-negative");
}

[[noreturn]] void ThrowNoRadialLaw() {
  throw UnsupportedModel(
      "no closed-form kink position law for the spherical model");
}

}  // namespace

double LogBinomial(std::size_t n, std::size_t k) {
  if (k > n) throw InvalidArgument("binomial coefficient needs k <= n");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
         std::lgamma(nd - kd + 1.0);
}

double HitProbability(Shape shape, double radius) {
  RequireFiniteRadius(radius);
  switch (shape) {
    case Shape::kRectangular:
      return radius <= 1.0 ? radius / 2.0 : 1.0 - 1.0 / (2.0 * radius);
    case Shape::kGaussian:
      return 2.0 / kPi * std::atan(radius);
    case Shape::kSpherical:
      break;
  }
  throw UnsupportedModel(
      "the spherical model has no per-neuron hit probability");
}

std::vector<double> KinkCountPmf(std::size_t width, double hit_probability) {
  if (!(hit_probability >= 0.0 && hit_probability <= 1.0)) {
    throw InvalidArgument("hit probability must lie in [0, 1]");
  }
  std::vector<double> pmf(width + 1, 0.0);
  if (hit_probability == 0.0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (hit_probability == 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }
  const double log_p = std::log(hit_probability);
  const double log_q = std::log1p(-hit_probability);
  for (std::size_t k = 0; k <= width; ++k) {
    pmf[k] = std::exp(LogBinomial(width, k) + static_cast<double>(k) * log_p +
                      static_cast<double>(width - k) * log_q);
  }
  return pmf;
}

double SphericalExpectedExact(std::size_t width, double radius) {
  RequireWidth(width);
  if (!(radius > 0.0)) throw InvalidArgument("R must be positive");
  if (radius > 1.0) {
    throw OutOfTheoryRange(
        "spherical expectation is only known for 0 < R <= 1 (got R = " +
        std::to_string(radius) + ")");
  }
  const double w = static_cast<double>(width);
  double log_value = 0.0;
  if (width % 2 == 0) {
    log_value = std::log(w) + w * kLog2 - std::log(w + 1.0) - kLogPi -
                LogBinomial(width - 1, width / 2);
  } else {
    log_value = 2.0 * std::log(w) - (w - 1.0) * kLog2 - std::log(w + 1.0) +
                LogBinomial(width - 1, (width - 1) / 2);
  }
  return radius * std::exp(log_value);
}

double SphericalExpectedAsymptotic(std::size_t width, double radius) {
  RequireWidth(width);
  if (!(radius > 0.0)) throw InvalidArgument("R must be positive");
  return radius * std::sqrt(2.0 * static_cast<double>(width) / kPi);
}

double ExpectedKinks(Shape shape, std::size_t width, double radius) {
  RequireWidth(width);
  RequireFiniteRadius(radius);
  if (shape == Shape::kSpherical) return SphericalExpectedExact(width, radius);
  return static_cast<double>(width) * HitProbability(shape, radius);
}

double KinkRadiusPdf(Shape shape, double r) {
  RequireRadial(r);
  switch (shape) {
    case Shape::kRectangular:
      return r <= 1.0 ? 0.5 : 0.5 / (r * r);
    case Shape::kGaussian:
      return 2.0 / (kPi * (1.0 + r * r));
    case Shape::kSpherical:
      break;
  }
  ThrowNoRadialLaw();
}

double KinkRadiusCdf(Shape shape, double r) {
  RequireRadial(r);
  if (std::isinf(r)) {
    if (shape == Shape::kSpherical) ThrowNoRadialLaw();
    return 1.0;
  }
  switch (shape) {
    case Shape::kRectangular:
      return r <= 1.0 ? r / 2.0 : 1.0 - 1.0 / (2.0 * r);
    case Shape::kGaussian:
      return 2.0 / kPi * std::atan(r);
    case Shape::kSpherical:
      break;
  }
  ThrowNoRadialLaw();
}

double KinkRadiusIntensity(Shape shape, std::size_t width, double r) {
  return static_cast<double>(width) * KinkRadiusPdf(shape, r);
}

double LogOmega(std::size_t n) {
  const double k = static_cast<double>(n / 2);
  if (n % 2 == 0) return k * kLogPi - std::lgamma(k + 1.0);
  return (2.0 * k + 1.0) * kLog2 + k * kLogPi + std::lgamma(k + 1.0) -
         std::lgamma(2.0 * k + 2.0);
}

double Omega(std::size_t n) { return std::exp(LogOmega(n)); }

double BuffonEPrime(std::size_t width) {
  RequireWidth(width);
  return std::exp(LogOmega(1) + LogOmega(width - 1) -
                  std::log(static_cast<double>(width)) - LogOmega(width));
}

double BuffonEPrimeBinomial(std::size_t width) {
  RequireWidth(width);
  const double w = static_cast<double>(width);
  if (width % 2 == 0) {
    return std::exp(w * kLog2 - std::log(w) - kLogPi -
                    LogBinomial(width - 1, width / 2));
  }
  return std::exp(LogBinomial(width - 1, (width - 1) / 2) - (w - 1.0) * kLog2);
}

double BallVolume(std::size_t dim, double r) {
  RequireWidth(dim);
  if (!(r > 0.0)) throw InvalidArgument("ball radius must be positive");
  const double half = static_cast<double>(dim) / 2.0;
  return std::exp(half * kLogPi - std::lgamma(half + 1.0) +
                  static_cast<double>(dim) * std::log(r));
}

double SphereArea(std::size_t dim, double r) {
  RequireWidth(dim);
  if (!(r > 0.0)) throw InvalidArgument("sphere radius must be positive");
  const double half = static_cast<double>(dim) / 2.0;
  return std::exp(kLog2 + half * kLogPi - std::lgamma(half) +
                  (static_cast<double>(dim) - 1.0) * std::log(r));
}

Prediction Predict(Shape shape, std::size_t width, double radius) {
  RequireWidth(width);
  Prediction prediction;
  if (shape == Shape::kSpherical) {
    prediction.mean = SphericalExpectedExact(width, radius);
    return prediction;
  }
  const double p = HitProbability(shape, radius);
  prediction.hit_probability = p;
  prediction.pmf = KinkCountPmf(width, p);
  prediction.mean = static_cast<double>(width) * p;
  return prediction;
}

}  // namespace kinkscope
