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

#include "feastap/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "feastap/waveform.hpp"

namespace feastap {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

// PSP state shared by all synapses of one neuron with a common waveform:
// three exponential accumulators that advance by one multiply per step.
// Folding a spike of weight w that arrived delta ms ago adds
// w * coeff[j] * e^{-rate[j] * delta} to accumulator j; the running sum
// A0+A1+A2 then equals the exact superposition of all folded waveforms.
struct WaveGroup {
  double coeff[3];
  double decay[3];  // e^{-rate[j] * dt}
  double rate[3];
  double acc[3] = {0.0, 0.0, 0.0};
};

struct SynapseState {
  const std::vector<double>* source_times;
  double weight;
  double latency;
  std::size_t group;   // index into the owning neuron's groups
  std::size_t cursor = 0;
};

struct NeuronState {
  std::vector<WaveGroup> groups;
  std::vector<SynapseState> synapses;
  double psp_threshold;  // tan(theta * pi/2); fire test becomes S >= this
  double last_spike = 0.0;
  bool has_fired = false;
};

std::size_t step_count(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
  if (!(cfg.horizon >= cfg.dt))
    throw std::invalid_argument("simulate: horizon shorter than dt");
  const double ratio = cfg.horizon / cfg.dt;
  const auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-6)
    throw std::invalid_argument("simulate: horizon must be a whole number of steps");
  return steps;
}

}  // namespace

SimTrace simulate(const Network& net, std::span<const SpikeTrain* const> inputs,
                  const SimConfig& cfg, bool stop_on_output) {
  validate_network(net);
  if (inputs.size() != net.input_channels)
    throw std::invalid_argument("simulate: wrong number of input trains");
  for (const SpikeTrain* train : inputs) {
    if (train == nullptr || !train->well_formed(cfg.horizon))
      throw std::invalid_argument("simulate: input train not strictly "
                                  "increasing within [0, horizon]");
  }

  const std::size_t n_steps = step_count(cfg);
  const std::size_t n_neurons = net.neurons.size();

  SimTrace trace;
  trace.dt = cfg.dt;
  trace.spikes.resize(n_neurons);
  if (cfg.record_mp) trace.mp.resize(n_neurons);

  std::vector<NeuronState> states(n_neurons);
  for (std::size_t n = 0; n < n_neurons; ++n) {
    const NeuronSpec& spec = net.neurons[n];
    NeuronState& st = states[n];
    const double theta = spec.threshold;
    st.psp_threshold = theta >= 1.0
                           ? std::numeric_limits<double>::infinity()
                           : std::tan(theta * std::numbers::pi / 2.0);
    st.synapses.reserve(spec.synapses.size());
    for (const SynapseSpec& syn : spec.synapses) {
      // One accumulator group per distinct waveform on this neuron.
      std::size_t g = 0;
      for (; g < st.groups.size(); ++g) {
        if (st.groups[g].rate[0] == 2.0 / syn.waveform.t2 &&
            st.groups[g].coeff[0] == syn.waveform.k &&
            st.groups[g].rate[2] == 2.0 / syn.waveform.t1 + 2.0 / syn.waveform.t2)
          break;
      }
      if (g == st.groups.size()) {
        const ExpDecomposition d = ExpDecomposition::from(syn.waveform);
        WaveGroup grp;
        for (int j = 0; j < 3; ++j) {
          grp.coeff[j] = d.coeff[j];
          grp.rate[j] = d.rate[j];
          grp.decay[j] = std::exp(-d.rate[j] * cfg.dt);
        }
        st.groups.push_back(grp);
      }
      const std::vector<double>* src =
          syn.source.kind == SourceKind::external
              ? &inputs[syn.source.index]->times
              : &trace.spikes[syn.source.index].times;
      st.synapses.push_back(SynapseState{src, syn.weight, syn.latency, g});
    }
  }

  std::vector<int> is_output(n_neurons, 0);
  for (std::size_t id : net.output_neurons) is_output[id] = 1;

  std::vector<std::size_t> fired;
  fired.reserve(n_neurons);

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;

    // Advance accumulators and fold in newly arrived spikes.
    for (NeuronState& st : states) {
      if (k > 0) {
        for (WaveGroup& g : st.groups) {
          g.acc[0] *= g.decay[0];
          g.acc[1] *= g.decay[1];
          g.acc[2] *= g.decay[2];
        }
      }
      for (SynapseState& syn : st.synapses) {
        const std::vector<double>& src = *syn.source_times;
        while (syn.cursor < src.size() && src[syn.cursor] + syn.latency <= t) {
          const double delta = t - src[syn.cursor] - syn.latency;
          WaveGroup& g = st.groups[syn.group];
          g.acc[0] += syn.weight * g.coeff[0] * std::exp(-g.rate[0] * delta);
          g.acc[1] += syn.weight * g.coeff[1] * std::exp(-g.rate[1] * delta);
          g.acc[2] += syn.weight * g.coeff[2] * std::exp(-g.rate[2] * delta);
          ++syn.cursor;
        }
      }
    }

    // Firing decisions are made against the pre-step state for all neurons
    // at once; spikes of this step only become visible from the next step.
    fired.clear();
    bool output_fired = false;
    for (std::size_t n = 0; n < n_neurons; ++n) {
      NeuronState& st = states[n];
      double psp_sum = 0.0;
      for (const WaveGroup& g : st.groups)
        psp_sum += g.acc[0] + g.acc[1] + g.acc[2];
      if (cfg.record_mp) trace.mp[n].push_back(membrane_potential(psp_sum));
      if (psp_sum >= st.psp_threshold) {
        bool ready = true;
        if (st.has_fired) {
          const NeuronSpec& spec = net.neurons[n];
          const double mp = membrane_potential(psp_sum);
          ready = t - st.last_spike >=
                  actual_isi(mp, spec.threshold, spec.i_min, spec.i_max);
        }
        if (ready) {
          fired.push_back(n);
          output_fired |= is_output[n] != 0;
        }
      }
    }
    for (std::size_t n : fired) {
      trace.spikes[n].times.push_back(t);
      states[n].last_spike = t;
      states[n].has_fired = true;
    }

    trace.steps_executed = k + 1;
    if (stop_on_output && output_fired) {
      trace.stopped_on_output = true;
      break;
    }
  }
  return trace;
}

SimTrace simulate(const Network& net, const std::vector<SpikeTrain>& inputs,
                  const SimConfig& cfg, bool stop_on_output) {
  std::vector<const SpikeTrain*> ptrs(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) ptrs[i] = &inputs[i];
  return simulate(net, std::span<const SpikeTrain* const>(ptrs), cfg,
                  stop_on_output);
}

std::string dump_trace(const SimTrace& trace) {
  std::vector<std::pair<double, std::size_t>> events;
  for (std::size_t n = 0; n < trace.spikes.size(); ++n)
    for (double t : trace.spikes[n].times) events.emplace_back(t, n);
  std::sort(events.begin(), events.end());
  std::string out;
  char line[64];
  for (const auto& [t, n] : events) {
    std::snprintf(line, sizeof line, "%zu\t%.1f\n", n, t);
    out += line;
  }
  return out;
}

}  // namespace feastap
