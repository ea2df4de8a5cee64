// Copyright 2026 The feastap Authors
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

#include "feastap/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace feastap {

namespace {

// Ahrens & Dieter (1974) algorithm GS, for 0 < alpha < 1. Envelope is the
// mixture of x^(alpha-1) on (0, 1] and e^(-x) on (1, inf).
double gamma_gs(double alpha, Rng& rng) {
  const double b = 1.0 + alpha / std::numbers::e;
  for (;;) {
    const double p = b * rng.uniform_pos();
    if (p <= 1.0) {
      const double x = std::pow(p, 1.0 / alpha);
      if (rng.uniform_pos() <= std::exp(-x)) return x;
    } else {
      const double x = -std::log((b - p) / alpha);
      if (rng.uniform_pos() <= std::pow(x, alpha - 1.0)) return x;
    }
  }
}

// Cheng & Feast (1979) ratio-of-uniforms rejection, Fishman's GKM1 variant,
// for alpha > 1. The first test is a cheap squeeze that accepts most draws
// without logarithms.
double gamma_gkm1(double alpha, Rng& rng) {
  const double a = alpha - 1.0;
  const double b = (alpha - 1.0 / (6.0 * alpha)) / a;
  const double m = 2.0 / a;
  const double d = m + 2.0;
  for (;;) {
    const double x = rng.uniform_pos();
    const double y = rng.uniform_pos();
    const double v = b * y / x;
    if (m * x - d + v + 1.0 / v <= 0.0) return a * v;
    if (m * std::log(x) - std::log(v) + v - 1.0 <= 0.0) return a * v;
  }
}

}  // namespace

double sample_gamma(double alpha, double beta, Rng& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("sample_gamma: shape and scale must be positive");
  double z;
  if (alpha < 1.0)
    z = gamma_gs(alpha, rng);
  else if (alpha == 1.0)
    z = -std::log(rng.uniform_pos());  // Gamma(1, 1) is the unit exponential
  else
    z = gamma_gkm1(alpha, rng);
  return beta * z;
}

double perturb_isi(double nominal, const NoiseModel& model, Rng& rng) {
  if (!(nominal > 0.0))
    throw std::invalid_argument("perturb_isi: nominal interval must be positive");
  if (!model.enabled()) return nominal;
  const double mean = model.shape * model.scale;
  const double sd = model.scale * std::sqrt(model.shape);
  const double draw = sample_gamma(model.shape, model.scale, rng);
  const double perturbed = nominal + (draw - mean) * model.target_sd / sd;
  return std::max(0.5, perturbed);
}

}  // namespace feastap
