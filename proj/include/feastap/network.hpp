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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "feastap/waveform.hpp"

namespace feastap {

// A synapse reads either an external input channel or another neuron's axon.
enum class SourceKind { external, neuron };

struct SynapseSource {
  SourceKind kind = SourceKind::external;
  std::size_t index = 0;

  static SynapseSource input(std::size_t channel) {
    return {SourceKind::external, channel};
  }
  static SynapseSource from_neuron(std::size_t id) {
    return {SourceKind::neuron, id};
  }
  friend bool operator==(const SynapseSource&, const SynapseSource&) = default;
};

struct SynapseSpec {
  SynapseSource source;
  double weight = 0.0;   // in [-1, 1]; sign decides excitatory vs inhibitory
  double latency = 0.0;  // ms in [0, 40]; silent for this long after a spike
  WaveformParams waveform;
};

struct NeuronSpec {
  double threshold = 0.5;  // in [0, 1]
  double i_min = 1.0;      // ms, shortest allowed inter-spike interval
  double i_max = 10.0;     // ms, longest firing period
  std::vector<SynapseSpec> synapses;
};

// Fixed topology of neurons. Cycles are allowed; the output neurons define
// the class channels in order.
struct Network {
  std::vector<NeuronSpec> neurons;
  std::size_t input_channels = 0;
  std::vector<std::size_t> output_neurons;
};

// Membrane potential: the PSP sum squashed into (-1, 1).
inline double membrane_potential(double psp_sum) {
  return (2.0 / std::numbers::pi) * std::atan(psp_sum);
}

// Actual inter-spike interval
//
//   I_a = I_max - (I_max - I_min) * (2/pi) * atan((MP - theta) / (1 - MP))
//
// clamped to [i_min, i_max]. At MP = 1 the limit I_min applies; just below,
// the denominator is floored at 1e-12 to keep the expression finite.
inline double actual_isi(double mp, double theta, double i_min, double i_max) {
  if (mp >= 1.0) return i_min;
  const double denom = std::max(1.0 - mp, 1e-12);
  const double isi =
      i_max - (i_max - i_min) *
                  (2.0 / std::numbers::pi) * std::atan((mp - theta) / denom);
  return std::clamp(isi, i_min, i_max);
}

inline void validate_network(const Network& net) {
  if (net.output_neurons.empty())
    throw std::invalid_argument("network: no output neurons");
  for (std::size_t i = 0; i < net.output_neurons.size(); ++i) {
    if (net.output_neurons[i] >= net.neurons.size())
      throw std::invalid_argument("network: output neuron id out of range");
    for (std::size_t j = i + 1; j < net.output_neurons.size(); ++j)
      if (net.output_neurons[i] == net.output_neurons[j])
        throw std::invalid_argument("network: duplicate output neuron");
  }
  for (const NeuronSpec& n : net.neurons) {
    if (!(n.threshold >= 0.0 && n.threshold <= 1.0))
      throw std::invalid_argument("network: threshold outside [0, 1]");
    if (!(n.i_min > 0.0 && n.i_min < n.i_max))
      throw std::invalid_argument("network: need 0 < i_min < i_max");
    for (const SynapseSpec& s : n.synapses) {
      if (!(s.weight >= -1.0 && s.weight <= 1.0))
        throw std::invalid_argument("network: weight outside [-1, 1]");
      if (!(s.latency >= 0.0 && s.latency <= 40.0))
        throw std::invalid_argument("network: latency outside [0, 40] ms");
      if (!(s.waveform.t1 > 0.0 && s.waveform.t2 > 0.0 && s.waveform.k > 0.0))
        throw std::invalid_argument("network: bad waveform constants");
      const std::size_t limit = s.source.kind == SourceKind::external
                                    ? net.input_channels
                                    : net.neurons.size();
      if (s.source.index >= limit)
        throw std::invalid_argument("network: synapse source out of range");
    }
  }
}

}  // namespace feastap
