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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "feastap/network.hpp"
#include "feastap/noise.hpp"
#include "feastap/rng.hpp"
#include "feastap/simulate.hpp"
#include "feastap/spike_train.hpp"

namespace feastap {

// Repetitive inter-spike-interval code: a feature value maps linearly onto an
// interval in [isi_lo, isi_hi] which is repeated across the horizon.
struct EncodingConfig {
  double isi_lo = 5.0;
  double isi_hi = 15.0;
  double horizon = 300.0;
  std::vector<std::pair<double, double>> feature_ranges;  // per-feature (min, max)
};

using FeatureMask = std::vector<std::uint8_t>;  // 1 = feature active

// Hot-spot network decision: the class of the earliest-firing output neuron.
struct Decision {
  std::optional<std::size_t> class_index;
  std::optional<double> decision_time;

  bool empty() const { return !class_index.has_value(); }
  friend bool operator==(const Decision&, const Decision&) = default;
};

// Linear map of a feature value onto [isi_lo, isi_hi]; out-of-range values
// clamp to the endpoints.
double scale_feature(double value, std::pair<double, double> range,
                     const EncodingConfig& cfg);

// Spike train for a single unmasked feature: spikes at cumulative interval
// sums, first spike at t = first interval, last spike may land exactly on the
// horizon. Each interval is independently perturbed when noise is enabled.
SpikeTrain encode_feature(double value, std::pair<double, double> range,
                          const EncodingConfig& cfg, const NoiseModel& noise,
                          Rng& rng);

// One train per feature; masked features yield empty trains. Feature f draws
// from the child stream derive_seed(stream_seed, f), so a feature's noise
// realization does not depend on the mask or on other features.
std::vector<SpikeTrain> encode(const std::vector<double>& features,
                               const FeatureMask& mask,
                               const EncodingConfig& cfg,
                               const NoiseModel& noise,
                               std::uint64_t stream_seed);

// Earliest output spike wins; ties break toward the lowest output ordinal.
Decision decode(const SimTrace& trace, const Network& net);

}  // namespace feastap
