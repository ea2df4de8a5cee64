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

#pragma once

#include "feastap/rng.hpp"

namespace feastap {

// Gamma-shaped inter-spike-interval noise. Raw draws come from
// Gamma(shape, scale); perturb_isi centers and rescales them so the
// perturbation has mean 0 and standard deviation target_sd around the
// nominal interval. target_sd = 0 disables noise entirely.
struct NoiseModel {
  double target_sd = 0.0;  // ms; 0.1 for the 1% setting, 1.0 for the 10% one
  double shape = 25.0;     // alpha
  double scale = 0.8;      // beta, ms

  bool enabled() const { return target_sd > 0.0; }
};

// One draw from Gamma(shape=alpha, scale=beta). Acceptance-rejection
// samplers: Ahrens-Dieter GS for alpha < 1, Cheng-Feast GKM1 for alpha > 1
// (Fishman 1996), inverse-transform exponential at alpha == 1.
double sample_gamma(double alpha, double beta, Rng& rng);

// nominal + centered, rescaled Gamma draw, floored at 0.5 ms so perturbed
// trains stay strictly increasing.
double perturb_isi(double nominal, const NoiseModel& model, Rng& rng);

}  // namespace feastap
