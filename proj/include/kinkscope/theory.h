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

// Closed-form laws for the number and position of kinks of random
// one-hidden-layer ReLU networks.
//
// Rectangular and Gaussian models: each neuron's breakpoint -t/l lands in
// (-R, R) independently with the same hit probability P, so the kink count
// is Binomial(w, P). On the unbounded domain all w breakpoints exist almost
// surely and |x| has the per-kink densities returned by KinkRadiusPdf.
//
// Spherical model: only the expectation is known, via a Buffon-needle
// argument in R^w. It holds for 0 < R <= 1.

#ifndef KINKSCOPE_THEORY_H_
#define KINKSCOPE_THEORY_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "kinkscope/samplers.h"

namespace kinkscope {

struct Prediction {
  std::optional<double> hit_probability;
  // Length w + 1 when the count law is known; empty for the spherical model.
  std::vector<double> pmf;
  double mean = 0.0;
};

// P(a single neuron's breakpoint lies in (-R, R)).
//   rectangular: R/2 for R <= 1, 1 - 1/(2R) for R >= 1
//   Gaussian:    (2/pi) atan(R)
// Throws UnsupportedModel for the spherical shape and InvalidArgument unless
// 0 < R < inf.
double HitProbability(Shape shape, double radius);

// Binomial(w, P) probabilities, evaluated in log space.
std::vector<double> KinkCountPmf(std::size_t width, double hit_probability);

// E[#kinks in (-R, R)]: w * P for rectangular and Gaussian, the exact
// Buffon-needle value for spherical (OutOfTheoryRange when R > 1).
double ExpectedKinks(Shape shape, std::size_t width, double radius);

//   even w: R w 2^w / ((w+1) pi) / C(w-1, w/2)
//   odd w:  R w^2 / (2^(w-1) (w+1)) * C(w-1, (w-1)/2)
double SphericalExpectedExact(std::size_t width, double radius);

// R sqrt(2w / pi), the large-w equivalent of SphericalExpectedExact.
double SphericalExpectedAsymptotic(std::size_t width, double radius);

// Per-kink density of |x| on the unbounded domain (integrates to 1):
//   rectangular: 1/2 on [0, 1], 1/(2 r^2) beyond
//   Gaussian:    2 / (pi (1 + r^2))            (half-Cauchy)
double KinkRadiusPdf(Shape shape, double r);
double KinkRadiusCdf(Shape shape, double r);
// Expected number of kinks per unit radius: width * KinkRadiusPdf.
double KinkRadiusIntensity(Shape shape, std::size_t width, double r);

// Volume of the unit n-ball, from the even/odd closed forms
//   Omega_{2k} = pi^k / k!,  Omega_{2k+1} = 2^(2k+1) pi^k k! / (2k+1)!.
double Omega(std::size_t n);
double LogOmega(std::size_t n);

// Needle-length-normalized expected crossings of one coordinate hyperplane
// family, Omega_1 Omega_{w-1} / (w Omega_w).
double BuffonEPrime(std::size_t width);
// The same constant through the central binomial coefficients:
//   even w: 2^w / (w pi) / C(w-1, w/2);  odd w: C(w-1, (w-1)/2) / 2^(w-1).
double BuffonEPrimeBinomial(std::size_t width);

// pi^(w/2) / Gamma(w/2 + 1) * r^w.
double BallVolume(std::size_t dim, double r);
// 2 pi^(w/2) / Gamma(w/2) * r^(w-1).
double SphereArea(std::size_t dim, double r);

// log C(n, k) via lgamma.
double LogBinomial(std::size_t n, std::size_t k);

// Everything known in closed form for (shape, w, R). For the spherical model
// only `mean` is filled.
Prediction Predict(Shape shape, std::size_t width, double radius);

}  // namespace kinkscope

#endif  // KINKSCOPE_THEORY_H_
