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
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "kinkscope/errors.h"
#include "test_support.h"

namespace kinkscope {
namespace {

using ::kinkscope::testing::ExactBinomial;
using ::kinkscope::testing::Simpson;
using ::kinkscope::testing::SphericalMeanFromMarginal;

constexpr double kPi = std::numbers::pi;

TEST(HitProbabilityTest, RectangularPiecewise) {
  EXPECT_DOUBLE_EQ(HitProbability(Shape::kRectangular, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(HitProbability(Shape::kRectangular, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(HitProbability(Shape::kRectangular, 4.0), 0.875);
}

TEST(HitProbabilityTest, RectangularMatchesRatioOfUniforms) {
  // P(|t / l| < R) for independent U(-1, 1): inside the unit square, the
  // region |t| < R |l| has area R / 2 (R <= 1) or 1 - 1 / (2R) (R >= 1).
  for (double r : {0.1, 0.5, 0.9, 1.0, 1.5, 3.0, 10.0}) {
    const double area = Simpson(
        [r](double l) { return std::min(1.0, r * l); }, 0.0, 1.0, 20000);
    EXPECT_NEAR(HitProbability(Shape::kRectangular, r), area, 1e-6) << r;
  }
}

TEST(HitProbabilityTest, GaussianArctan) {
  EXPECT_NEAR(HitProbability(Shape::kGaussian, 2.0), 0.704832764699133, 1e-12);
  EXPECT_NEAR(HitProbability(Shape::kGaussian, 1.0), 0.5, 1e-15);
}

TEST(HitProbabilityTest, RejectsSphericalAndBadRadius) {
  EXPECT_THROW(HitProbability(Shape::kSpherical, 1.0), UnsupportedModel);
  EXPECT_THROW(HitProbability(Shape::kGaussian, 0.0), InvalidArgument);
  EXPECT_THROW(HitProbability(Shape::kGaussian, INFINITY), InvalidArgument);
}

TEST(HitProbabilityTest, MonotoneAndBounded) {
  for (Shape s : {Shape::kRectangular, Shape::kGaussian}) {
    double prev = 0.0;
    for (double r = 0.01; r < 50.0; r *= 1.1) {
      const double p = HitProbability(s, r);
      EXPECT_GT(p, prev);
      EXPECT_LT(p, 1.0);
      prev = p;
    }
    EXPECT_NEAR(HitProbability(s, 1e6), 1.0, 1e-6);
  }
}

TEST(ExpectedKinksTest, Examples) {
  EXPECT_DOUBLE_EQ(ExpectedKinks(Shape::kRectangular, 10, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(ExpectedKinks(Shape::kRectangular, 10, 4.0), 8.75);
  EXPECT_NEAR(ExpectedKinks(Shape::kGaussian, 10, 1.0), 5.0, 1e-12);
  EXPECT_NEAR(ExpectedKinks(Shape::kGaussian, 10, 2.0), 7.04832764699133,
              1e-11);
}

TEST(ExpectedKinksTest, NeverExceedsWidth) {
  for (Shape s : {Shape::kRectangular, Shape::kGaussian}) {
    for (std::size_t w : {1u, 3u, 50u}) {
      for (double r : {0.01, 1.0, 100.0, 1e6}) {
        EXPECT_LE(ExpectedKinks(s, w, r), static_cast<double>(w));
      }
    }
  }
}

TEST(KinkCountPmfTest, BinomialExample) {
  const std::vector<double> pmf = KinkCountPmf(10, 0.5);
  ASSERT_EQ(pmf.size(), 11u);
  EXPECT_NEAR(pmf[5], 0.24609375, 1e-14);
  EXPECT_NEAR(pmf[0], 1.0 / 1024.0, 1e-16);
}

TEST(KinkCountPmfTest, MatchesExactIntegerBinomial) {
  for (unsigned w = 1; w <= 60; w += 7) {
    const double p = 0.3;
    const std::vector<double> pmf = KinkCountPmf(w, p);
    for (unsigned k = 0; k <= w; ++k) {
      const double expected = static_cast<double>(ExactBinomial(w, k)) *
                              std::pow(p, k) * std::pow(1.0 - p, w - k);
      EXPECT_NEAR(pmf[k], expected, 1e-12 + 1e-10 * expected);
    }
  }
}

TEST(KinkCountPmfTest, NormalizedWithBinomialMean) {
  for (std::size_t w = 1; w <= 64; ++w) {
    for (double p : {0.0, 1e-3, 0.25, 0.5, 0.999, 1.0}) {
      const std::vector<double> pmf = KinkCountPmf(w, p);
      double total = 0.0;
      double mean = 0.0;
      for (std::size_t k = 0; k < pmf.size(); ++k) {
        EXPECT_GE(pmf[k], 0.0);
        total += pmf[k];
        mean += static_cast<double>(k) * pmf[k];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
      EXPECT_NEAR(mean, static_cast<double>(w) * p, 1e-10);
    }
  }
}

TEST(KinkCountPmfTest, DegenerateEndpoints) {
  EXPECT_EQ(KinkCountPmf(4, 0.0), (std::vector<double>{1, 0, 0, 0, 0}));
  EXPECT_EQ(KinkCountPmf(4, 1.0), (std::vector<double>{0, 0, 0, 0, 1}));
  EXPECT_THROW(KinkCountPmf(4, 1.5), InvalidArgument);
}

TEST(SphericalTest, SmallWidthValues) {
  EXPECT_DOUBLE_EQ(SphericalExpectedExact(1, 1.0), 0.5);
  EXPECT_NEAR(SphericalExpectedExact(2, 1.0), 0.848826363156775124, 1e-14);
  EXPECT_NEAR(SphericalExpectedExact(3, 1.0), 1.125, 1e-14);
  EXPECT_NEAR(SphericalExpectedExact(4, 1.0), 1.358122181, 1e-9);
  EXPECT_NEAR(SphericalExpectedExact(5, 1.0), 1.5625, 1e-14);
  EXPECT_NEAR(SphericalExpectedExact(2, 1.0), 8.0 / (3.0 * kPi), 1e-14);
}

TEST(SphericalTest, LargeWidthValues) {
  EXPECT_NEAR(SphericalExpectedExact(10, 1.0), 2.351726720434355, 1e-12);
  EXPECT_NEAR(SphericalExpectedExact(20, 1.0), 3.441059530923715, 1e-12);
  EXPECT_NEAR(SphericalExpectedExact(100, 1.0), 7.919621132166739, 1e-11);
  EXPECT_NEAR(SphericalExpectedExact(1000, 1.0), 25.21242141758213, 1e-10);
}

TEST(SphericalTest, MatchesMarginalMomentOracle) {
  for (std::size_t w = 1; w <= 1000; ++w) {
    const double oracle = SphericalMeanFromMarginal(w, 0.7);
    EXPECT_NEAR(SphericalExpectedExact(w, 0.7), oracle, 1e-11 * oracle) << w;
  }
}

TEST(SphericalTest, MatchesRadialIntegration) {
  // Per neuron hit probability given the weight norm s is R s E' / T; average
  // over the ball's radial law S(s) / B(T) and multiply by w.
  const double t = 1.0;
  const double r = 0.8;
  for (std::size_t w : {1u, 2u, 3u, 6u, 11u}) {
    const double e_prime = BuffonEPrime(w);
    const double integral =
        Simpson([&](double s) { return r * s / t * e_prime * SphereArea(w, s); },
                1e-12, t, 4000);
    const double expected = static_cast<double>(w) * integral / BallVolume(w, t);
    EXPECT_NEAR(SphericalExpectedExact(w, r), expected, 1e-8) << w;
  }
}

TEST(SphericalTest, LinearInRadius) {
  for (std::size_t w : {1u, 4u, 9u}) {
    EXPECT_NEAR(SphericalExpectedExact(w, 0.25),
                0.25 * SphericalExpectedExact(w, 1.0), 1e-14);
  }
}

TEST(SphericalTest, RangeErrors) {
  EXPECT_THROW(SphericalExpectedExact(3, 2.0), OutOfTheoryRange);
  EXPECT_THROW(SphericalExpectedExact(3, 1.0 + 1e-12), OutOfTheoryRange);
  EXPECT_THROW(SphericalExpectedExact(3, 0.0), InvalidArgument);
  EXPECT_THROW(SphericalExpectedExact(0, 0.5), InvalidArgument);
  EXPECT_THROW(ExpectedKinks(Shape::kSpherical, 3, 1.5), OutOfTheoryRange);
}

TEST(SphericalTest, AsymptoticRatio) {
  EXPECT_NEAR(SphericalExpectedAsymptotic(1, 1.0), std::sqrt(2.0 / kPi), 1e-15);
  const struct {
    std::size_t w;
    double ratio_minus_one;
  } kCases[] = {{10, -0.0679}, {100, -0.00742}, {1000, -0.000749}};
  for (const auto& c : kCases) {
    const double ratio = SphericalExpectedExact(c.w, 1.0) /
                         SphericalExpectedAsymptotic(c.w, 1.0);
    EXPECT_NEAR(ratio - 1.0, c.ratio_minus_one, 5e-4 * std::abs(c.ratio_minus_one) + 5e-6)
        << c.w;
  }
  double prev_gap = INFINITY;
  for (std::size_t w = 2; w <= 1000; ++w) {
    const double gap = std::abs(SphericalExpectedExact(w, 1.0) /
                                    SphericalExpectedAsymptotic(w, 1.0) -
                                1.0);
    EXPECT_LT(gap, prev_gap) << w;
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 0.02);
}

TEST(GeometryTest, OmegaIsUnitBallVolume) {
  EXPECT_NEAR(Omega(1), 2.0, 1e-14);
  EXPECT_NEAR(Omega(2), kPi, 1e-14);
  EXPECT_NEAR(Omega(3), 4.0 * kPi / 3.0, 1e-13);
  for (std::size_t n = 1; n <= 20; ++n) {
    EXPECT_NEAR(Omega(n), BallVolume(n, 1.0), 1e-12 * Omega(n)) << n;
  }
}

TEST(GeometryTest, AreaIsDerivativeOfVolume) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (double r : {0.5, 1.0, 2.0}) {
      const double h = 1e-5 * r;
      const double derivative =
          (BallVolume(n, r + h) - BallVolume(n, r - h)) / (2.0 * h);
      EXPECT_NEAR(derivative, SphereArea(n, r), 1e-7 * SphereArea(n, r))
          << n << " " << r;
    }
  }
}

TEST(GeometryTest, BuffonFormsAgree) {
  for (std::size_t w = 1; w <= 60; ++w) {
    EXPECT_NEAR(BuffonEPrime(w), BuffonEPrimeBinomial(w), 1e-10) << w;
  }
  EXPECT_NEAR(BuffonEPrime(2), 2.0 / kPi, 1e-14);
  EXPECT_NEAR(BuffonEPrime(3), 0.5, 1e-14);
}

TEST(KinkRadiusTest, PdfIntegratesToOne) {
  for (Shape s : {Shape::kRectangular, Shape::kGaussian}) {
    // Substitute r = u / (1 - u) to map [0, inf) onto [0, 1).
    // Split at r = 1 where the rectangular density has a jump.
    const auto integrand = [s](double u) {
      u = std::min(u, 1.0 - 1e-9);  // finite limit at the endpoint
      const double r = u / (1.0 - u);
      return KinkRadiusPdf(s, r) / ((1.0 - u) * (1.0 - u));
    };
    const double total = Simpson(integrand, 0.0, 0.5, 100000) +
                         Simpson(integrand, 0.5, 1.0, 100000);
    EXPECT_NEAR(total, 1.0, 1e-6) << ShapeName(s);
  }
}

TEST(KinkRadiusTest, CdfMatchesHitProbabilityAndIntegratedPdf) {
  for (Shape s : {Shape::kRectangular, Shape::kGaussian}) {
    EXPECT_EQ(KinkRadiusCdf(s, 0.0), 0.0);
    EXPECT_EQ(KinkRadiusCdf(s, INFINITY), 1.0);
    for (double r : {0.3, 1.0, 2.5, 40.0}) {
      EXPECT_DOUBLE_EQ(KinkRadiusCdf(s, r), HitProbability(s, r));
      const double integral = Simpson(
          [s](double x) { return KinkRadiusPdf(s, x); }, 0.0, r, 20000);
      EXPECT_NEAR(KinkRadiusCdf(s, r), integral, 1e-6);
    }
  }
}

TEST(KinkRadiusTest, IntensityAndKnownValues) {
  EXPECT_DOUBLE_EQ(KinkRadiusIntensity(Shape::kRectangular, 10, 0.0), 5.0);
  EXPECT_NEAR(KinkRadiusIntensity(Shape::kGaussian, 10, 0.0), 20.0 / kPi,
              1e-13);
  EXPECT_DOUBLE_EQ(KinkRadiusPdf(Shape::kRectangular, 2.0), 0.125);
  EXPECT_THROW(KinkRadiusPdf(Shape::kSpherical, 1.0), UnsupportedModel);
  EXPECT_THROW(KinkRadiusCdf(Shape::kSpherical, 1.0), UnsupportedModel);
  EXPECT_THROW(KinkRadiusPdf(Shape::kGaussian, -1.0), InvalidArgument);
}

TEST(KinkRadiusTest, PdfIsNonIncreasing) {
  for (Shape s : {Shape::kRectangular, Shape::kGaussian}) {
    double prev = INFINITY;
    for (double r = 0.0; r < 20.0; r += 0.05) {
      const double p = KinkRadiusPdf(s, r);
      EXPECT_LE(p, prev);
      prev = p;
    }
  }
}

TEST(PredictTest, BinomialModels) {
  const Prediction p = Predict(Shape::kGaussian, 10, 1.0);
  ASSERT_TRUE(p.hit_probability.has_value());
  EXPECT_NEAR(*p.hit_probability, 0.5, 1e-15);
  ASSERT_EQ(p.pmf.size(), 11u);
  EXPECT_NEAR(p.pmf[5], 0.24609375, 1e-12);
  EXPECT_NEAR(p.mean, 5.0, 1e-12);
}

TEST(PredictTest, SphericalHasMeanOnly) {
  const Prediction p = Predict(Shape::kSpherical, 2, 1.0);
  EXPECT_FALSE(p.hit_probability.has_value());
  EXPECT_TRUE(p.pmf.empty());
  EXPECT_NEAR(p.mean, 8.0 / (3.0 * kPi), 1e-14);
  EXPECT_THROW(Predict(Shape::kSpherical, 2, 2.0), OutOfTheoryRange);
}

TEST(LogBinomialTest, MatchesExact) {
  for (unsigned n = 0; n <= 60; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      const double exact = static_cast<double>(ExactBinomial(n, k));
      EXPECT_NEAR(std::exp(LogBinomial(n, k)), exact, 1e-11 * exact);
    }
  }
  EXPECT_THROW(LogBinomial(3, 4), InvalidArgument);
}

}  // namespace
}  // namespace kinkscope
