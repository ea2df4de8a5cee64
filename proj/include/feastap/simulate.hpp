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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "feastap/network.hpp"
#include "feastap/spike_train.hpp"

namespace feastap {

struct SimConfig {
  double dt = 0.1;        // ms; resolves the fastest waveform constant
  double horizon = 300.0;  // ms, maximal network response time
  bool record_mp = false;  // keep per-step membrane potentials (debug only)
};

struct SimTrace {
  std::vector<SpikeTrain> spikes;           // one train per neuron
  std::vector<std::vector<double>> mp;      // per neuron per step, if recorded
  double dt = 0.1;
  std::size_t steps_executed = 0;           // grid points actually simulated
  bool stopped_on_output = false;
};

// Discrete-time simulation. Steps t = 0, dt, ..., horizon. At each step every
// neuron's PSP sum is accumulated over its synapses' spike histories, squashed
// through atan into the membrane potential, and the neuron fires iff MP >=
// threshold and (if it has fired before) the time since its last spike is at
// least the actual inter-spike interval at the current MP. A spike emitted at
// step t is visible to postsynaptic neurons from t + dt onward, plus the
// synapse latency. With stop_on_output the run halts at the first step in
// which an output neuron fires.
//
// Deterministic: identical inputs and network give bit-identical traces.
SimTrace simulate(const Network& net, std::span<const SpikeTrain* const> inputs,
                  const SimConfig& cfg, bool stop_on_output);

SimTrace simulate(const Network& net, const std::vector<SpikeTrain>& inputs,
                  const SimConfig& cfg, bool stop_on_output = false);

// Debug dump: one line per spike, "neuron_id<TAB>time_ms", 0.1 ms precision,
// sorted by time (ties by neuron id).
std::string dump_trace(const SimTrace& trace);

}  // namespace feastap
