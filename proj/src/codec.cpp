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

#include "feastap/codec.hpp"

#include <algorithm>
#include <stdexcept>

namespace feastap {

double scale_feature(double value, std::pair<double, double> range,
                     const EncodingConfig& cfg) {
  const auto [lo, hi] = range;
  if (!(lo < hi))
    throw std::invalid_argument("scale_feature: degenerate feature range");
  const double isi =
      cfg.isi_lo + (cfg.isi_hi - cfg.isi_lo) * (value - lo) / (hi - lo);
  return std::clamp(isi, cfg.isi_lo, cfg.isi_hi);
}

SpikeTrain encode_feature(double value, std::pair<double, double> range,
                          const EncodingConfig& cfg, const NoiseModel& noise,
                          Rng& rng) {
  const double nominal = scale_feature(value, range, cfg);
  SpikeTrain train;
  train.times.reserve(static_cast<std::size_t>(cfg.horizon / cfg.isi_lo) + 1);
  double t = 0.0;
  for (;;) {
    const double isi = noise.enabled() ? perturb_isi(nominal, noise, rng) : nominal;
    if (t + isi > cfg.horizon) break;  // a spike exactly at the horizon stays
    t += isi;
    train.times.push_back(t);
  }
  return train;
}

std::vector<SpikeTrain> encode(const std::vector<double>& features,
                               const FeatureMask& mask,
                               const EncodingConfig& cfg,
                               const NoiseModel& noise,
                               std::uint64_t stream_seed) {
  if (features.size() != mask.size())
    throw std::invalid_argument("encode: features and mask differ in length");
  if (features.size() != cfg.feature_ranges.size())
    throw std::invalid_argument("encode: missing feature ranges");
  std::vector<SpikeTrain> trains(features.size());
  for (std::size_t f = 0; f < features.size(); ++f) {
    if (!mask[f]) continue;  // masked input: empty train
    Rng rng = make_stream(stream_seed, f);
    trains[f] = encode_feature(features[f], cfg.feature_ranges[f], cfg, noise, rng);
  }
  return trains;
}

Decision decode(const SimTrace& trace, const Network& net) {
  Decision decision;
  for (std::size_t ordinal = 0; ordinal < net.output_neurons.size(); ++ordinal) {
    const SpikeTrain& spikes = trace.spikes.at(net.output_neurons[ordinal]);
    if (spikes.empty()) continue;
    const double first = spikes.times.front();
    if (!decision.decision_time || first < *decision.decision_time) {
      decision.class_index = ordinal;
      decision.decision_time = first;
    }
  }
  return decision;
}

}  // namespace feastap
