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

#include <array>
#include <cmath>
#include <stdexcept>

namespace feastap {

// Postsynaptic potential prototype
//
//   psp(t) = k * (1 - exp(-t/t1))^2 * exp(-2t/t2),   t > 0
//
// with psp(t) = 0 for t <= 0. The gain k is conventionally chosen so the
// waveform peaks at 1 (see normalize_gain).
struct WaveformParams {
  double t1 = 5.0;   // rise time constant, ms
  double t2 = 15.0;  // decay time constant, ms
  double k = 1.0;    // gain

  friend bool operator==(const WaveformParams&, const WaveformParams&) = default;
};

inline double psp_value(const WaveformParams& w, double t) {
  if (t <= 0.0) return 0.0;
  const double rise = 1.0 - std::exp(-t / w.t1);
  return w.k * rise * rise * std::exp(-2.0 * t / w.t2);
}

// Time of the waveform's maximum. Setting d/dt log psp = 0 gives
// e^{-t/t1} = t1/(t1+t2), hence t* = t1 * ln((t1+t2)/t1).
inline double psp_peak_time(double t1, double t2) {
  return t1 * std::log((t1 + t2) / t1);
}

// Gain for which the waveform peaks at exactly 1.
inline double normalize_gain(double t1, double t2) {
  if (!(t1 > 0.0) || !(t2 > 0.0))
    throw std::invalid_argument("normalize_gain: time constants must be positive");
  const double tp = psp_peak_time(t1, t2);
  const double rise = 1.0 - t1 / (t1 + t2);  // 1 - e^{-tp/t1}, exactly
  const double peak = rise * rise * std::exp(-2.0 * tp / t2);
  return 1.0 / peak;
}

inline WaveformParams make_unit_peak_waveform(double t1, double t2) {
  return WaveformParams{t1, t2, normalize_gain(t1, t2)};
}

// Expansion of the waveform into three pure exponentials:
//
//   psp(t) = k e^{-2t/t2} - 2k e^{-(1/t1 + 2/t2) t} + k e^{-(2/t1 + 2/t2) t}
//
// This is what lets the simulator carry per-synapse state of three decaying
// accumulators instead of re-summing the spike history each step.
struct ExpDecomposition {
  std::array<double, 3> coeff;  // k, -2k, k
  std::array<double, 3> rate;   // per-ms decay rates, ascending

  static ExpDecomposition from(const WaveformParams& w) {
    return ExpDecomposition{
        {w.k, -2.0 * w.k, w.k},
        {2.0 / w.t2, 1.0 / w.t1 + 2.0 / w.t2, 2.0 / w.t1 + 2.0 / w.t2}};
  }

  double value_at(double t) const {
    if (t <= 0.0) return 0.0;
    return coeff[0] * std::exp(-rate[0] * t) + coeff[1] * std::exp(-rate[1] * t) +
           coeff[2] * std::exp(-rate[2] * t);
  }
};

}  // namespace feastap
