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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "feastap/codec.hpp"
#include "feastap/dataset.hpp"
#include "feastap/genome.hpp"
#include "feastap/rng.hpp"
#include "feastap/simulate.hpp"
#include "test_util.hpp"

using namespace feastap;

namespace {

// Reference simulator: per step, re-sums the full spike history through
// psp_value for every synapse. Independent of the exponential-state path in
// simulate(); used to pin its semantics.
SimTrace naive_simulate(const Network& net, const std::vector<SpikeTrain>& inputs,
                        const SimConfig& cfg, bool stop_on_output) {
  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  SimTrace trace;
  trace.dt = cfg.dt;
  trace.spikes.resize(net.neurons.size());
  trace.mp.resize(net.neurons.size());
  std::vector<double> last_spike(net.neurons.size(), 0.0);
  std::vector<bool> has_fired(net.neurons.size(), false);

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    std::vector<std::size_t> fired;
    bool output_fired = false;
    for (std::size_t n = 0; n < net.neurons.size(); ++n) {
      const NeuronSpec& spec = net.neurons[n];
      double sum = 0.0;
      for (const SynapseSpec& syn : spec.synapses) {
        const std::vector<double>& times =
            syn.source.kind == SourceKind::external
                ? inputs[syn.source.index].times
                : trace.spikes[syn.source.index].times;
        for (double s : times)
          sum += syn.weight * psp_value(syn.waveform, t - s - syn.latency);
      }
      const double mp = membrane_potential(sum);
      trace.mp[n].push_back(mp);
      if (mp >= spec.threshold) {
        const bool ready =
            !has_fired[n] ||
            t - last_spike[n] >=
                actual_isi(mp, spec.threshold, spec.i_min, spec.i_max);
        if (ready) fired.push_back(n);
      }
    }
    for (std::size_t n : fired) {
      trace.spikes[n].times.push_back(t);
      last_spike[n] = t;
      has_fired[n] = true;
      for (std::size_t out : net.output_neurons) output_fired |= out == n;
    }
    trace.steps_executed = k + 1;
    if (stop_on_output && output_fired) {
      trace.stopped_on_output = true;
      break;
    }
  }
  return trace;
}

Network random_network(Rng& rng, std::size_t channels, std::size_t n_neurons) {
  Network net;
  net.input_channels = channels;
  net.neurons.resize(n_neurons);
  for (std::size_t n = 0; n < n_neurons; ++n) {
    NeuronSpec& spec = net.neurons[n];
    spec.threshold = 0.9 * rng.uniform();
    const std::size_t n_syn = 1 + rng.below(4);
    for (std::size_t s = 0; s < n_syn; ++s) {
      SynapseSpec syn;
      if (rng.bernoulli(0.5))
        syn.source = SynapseSource::input(rng.below(channels));
      else
        syn.source = SynapseSource::from_neuron(rng.below(n_neurons));
      syn.weight = -1.0 + 2.0 * rng.uniform();
      syn.latency = 10.0 * rng.uniform();
      syn.waveform =
          make_unit_peak_waveform(0.3 + 4.7 * rng.uniform(), 2.0 + 13.0 * rng.uniform());
      spec.synapses.push_back(syn);
    }
  }
  net.output_neurons.push_back(rng.below(n_neurons));
  return net;
}

std::vector<SpikeTrain> random_inputs(Rng& rng, std::size_t channels,
                                      double horizon) {
  std::vector<SpikeTrain> trains(channels);
  for (SpikeTrain& train : trains) {
    double t = 0.0;
    for (;;) {
      t += 0.7 + 6.0 * rng.uniform();
      if (t > horizon) break;
      train.times.push_back(t);
    }
  }
  return trains;
}

}  // namespace

TEST_CASE("oracle: exponential-state simulator matches direct history resum") {
  Rng rng(42);
  SimConfig cfg;
  cfg.horizon = 50.0;
  cfg.record_mp = true;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t channels = 1 + rng.below(3);
    const Network net = random_network(rng, channels, 1 + rng.below(4));
    const auto inputs = random_inputs(rng, channels, cfg.horizon);
    const bool stop = rng.bernoulli(0.5);
    const SimTrace fast = simulate(net, inputs, cfg, stop);
    const SimTrace slow = naive_simulate(net, inputs, cfg, stop);
    REQUIRE(fast.spikes == slow.spikes);
    REQUIRE(fast.steps_executed == slow.steps_executed);
    for (std::size_t n = 0; n < net.neurons.size(); ++n) {
      REQUIRE(fast.mp[n].size() == slow.mp[n].size());
      for (std::size_t k = 0; k < fast.mp[n].size(); ++k)
        REQUIRE(fast.mp[n][k] == doctest::Approx(slow.mp[n][k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("empty inputs with positive thresholds stay silent") {
  Rng rng(9);
  Network net = random_network(rng, 2, 3);
  for (NeuronSpec& n : net.neurons) n.threshold = 0.1 + 0.8 * rng.uniform();
  const std::vector<SpikeTrain> empty(2);
  const SimTrace trace = simulate(net, empty, SimConfig{}, false);
  for (const SpikeTrain& s : trace.spikes) CHECK(s.empty());
}

TEST_CASE("a zero-threshold neuron free-runs from t = 0") {
  // MP = 0 >= theta = 0, so the never-fired gate passes immediately; the
  // interval rule then paces it at i_max while undriven.
  Network net;
  net.input_channels = 1;
  net.neurons.resize(1);
  net.neurons[0].threshold = 0.0;
  net.neurons[0].synapses.push_back(
      {SynapseSource::input(0), 0.0, 0.0, make_unit_peak_waveform(5, 15)});
  net.output_neurons = {0};
  const SimTrace trace =
      simulate(net, std::vector<SpikeTrain>(1), SimConfig{}, false);
  REQUIRE(!trace.spikes[0].empty());
  CHECK(trace.spikes[0].times.front() == 0.0);
  for (std::size_t i = 1; i < trace.spikes[0].times.size(); ++i)
    CHECK(trace.spikes[0].times[i] - trace.spikes[0].times[i - 1] ==
          doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("synapse stays silent for the latency") {
  Network net;
  net.input_channels = 1;
  net.neurons.resize(1);
  net.neurons[0].threshold = 0.2;
  net.neurons[0].synapses.push_back(
      {SynapseSource::input(0), 1.0, 5.0, make_unit_peak_waveform(0.3, 2.7)});
  net.output_neurons = {0};
  std::vector<SpikeTrain> inputs(1);
  inputs[0].times = {0.0};
  const SimTrace trace = simulate(net, inputs, SimConfig{}, false);
  REQUIRE(!trace.spikes[0].empty());
  CHECK(trace.spikes[0].times.front() >= 5.0);
}

TEST_CASE("max drive respects the minimal firing period") {
  Network net;
  net.input_channels = 1;
  net.neurons.resize(1);
  net.neurons[0].threshold = 0.0;
  net.neurons[0].i_min = 1.0;
  net.neurons[0].i_max = 10.0;
  net.neurons[0].synapses.push_back(
      {SynapseSource::input(0), 1.0, 0.0, make_unit_peak_waveform(5, 15)});
  net.output_neurons = {0};
  std::vector<SpikeTrain> inputs(1);
  for (double t = 1.0; t <= 300.0; t += 1.0) inputs[0].times.push_back(t);
  const SimTrace trace = simulate(net, inputs, SimConfig{}, false);
  REQUIRE(trace.spikes[0].size() > 10);
  for (std::size_t i = 1; i < trace.spikes[0].times.size(); ++i)
    CHECK(trace.spikes[0].times[i] - trace.spikes[0].times[i - 1] >= 1.0 - 1e-9);
}

TEST_CASE("property: refractory gaps never undercut i_min") {
  Rng rng(77);
  SimConfig cfg;
  cfg.horizon = 100.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t channels = 1 + rng.below(3);
    const Network net = random_network(rng, channels, 1 + rng.below(3));
    const auto inputs = random_inputs(rng, channels, cfg.horizon);
    const SimTrace trace = simulate(net, inputs, cfg, false);
    for (std::size_t n = 0; n < net.neurons.size(); ++n) {
      const auto& times = trace.spikes[n].times;
      for (std::size_t i = 1; i < times.size(); ++i)
        CHECK(times[i] - times[i - 1] >= net.neurons[n].i_min - 1e-9);
    }
  }
}

TEST_CASE("property: input changes after T are invisible before T + latency") {
  Rng rng(123);
  SimConfig cfg;
  cfg.horizon = 100.0;
  for (int rep = 0; rep < 300; ++rep) {
    Network net = random_network(rng, 1, 1 + rng.below(3));
    // Give every input-reading synapse at least 2 ms of latency.
    double min_latency = 1e9;
    for (NeuronSpec& n : net.neurons)
      for (SynapseSpec& s : n.synapses)
        if (s.source.kind == SourceKind::external) {
          s.latency = 2.0 + s.latency;
          min_latency = std::min(min_latency, s.latency);
        }
    if (min_latency > 1e8) continue;  // no synapse reads the channel

    auto inputs_a = random_inputs(rng, 1, cfg.horizon);
    const double T = 30.0 + 40.0 * rng.uniform();
    auto inputs_b = inputs_a;
    // Perturb only at times >= T: drop later spikes, add a few new ones.
    auto& tb = inputs_b[0].times;
    tb.erase(std::remove_if(tb.begin(), tb.end(),
                            [&](double t) { return t >= T && rng.bernoulli(0.5); }),
             tb.end());
    double extra = T + rng.uniform();
    while (extra <= cfg.horizon) {
      tb.push_back(extra);
      extra += 1.0 + 5.0 * rng.uniform();
    }
    std::sort(tb.begin(), tb.end());
    tb.erase(std::unique(tb.begin(), tb.end()), tb.end());

    const SimTrace ta = simulate(net, inputs_a, cfg, false);
    const SimTrace tb_trace = simulate(net, inputs_b, cfg, false);
    const double cutoff = T + min_latency;
    for (std::size_t n = 0; n < net.neurons.size(); ++n) {
      std::vector<double> a, b;
      for (double t : ta.spikes[n].times)
        if (t < cutoff) a.push_back(t);
      for (double t : tb_trace.spikes[n].times)
        if (t < cutoff) b.push_back(t);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("determinism: identical arguments give bit-identical traces") {
  Rng rng(5);
  const Network net = random_network(rng, 2, 3);
  const auto inputs = random_inputs(rng, 2, 300.0);
  const SimTrace a = simulate(net, inputs, SimConfig{}, true);
  const SimTrace b = simulate(net, inputs, SimConfig{}, true);
  CHECK(a.spikes == b.spikes);
  CHECK(a.steps_executed == b.steps_executed);
}

TEST_CASE("input validation") {
  Rng rng(6);
  const Network net = random_network(rng, 2, 2);
  SUBCASE("wrong channel count") {
    CHECK_THROWS_AS(simulate(net, std::vector<SpikeTrain>(1), SimConfig{}, false),
                    std::invalid_argument);
  }
  SUBCASE("spike beyond horizon") {
    std::vector<SpikeTrain> inputs(2);
    inputs[0].times = {301.0};
    CHECK_THROWS_AS(simulate(net, inputs, SimConfig{}, false),
                    std::invalid_argument);
  }
  SUBCASE("negative spike time") {
    std::vector<SpikeTrain> inputs(2);
    inputs[0].times = {-0.5, 3.0};
    CHECK_THROWS_AS(simulate(net, inputs, SimConfig{}, false),
                    std::invalid_argument);
  }
  SUBCASE("non-increasing train") {
    std::vector<SpikeTrain> inputs(2);
    inputs[0].times = {5.0, 5.0};
    CHECK_THROWS_AS(simulate(net, inputs, SimConfig{}, false),
                    std::invalid_argument);
  }
  SUBCASE("spike exactly at horizon is accepted") {
    std::vector<SpikeTrain> inputs(2);
    inputs[0].times = {300.0};
    CHECK_NOTHROW(simulate(net, inputs, SimConfig{}, false));
  }
}

TEST_CASE("stop_on_output halts at the first output spike") {
  Rng rng(88);
  for (int rep = 0; rep < 50; ++rep) {
    const Network net = random_network(rng, 2, 3);
    const auto inputs = random_inputs(rng, 2, 300.0);
    const SimTrace trace = simulate(net, inputs, SimConfig{}, true);
    const SpikeTrain& out = trace.spikes[net.output_neurons[0]];
    if (!trace.stopped_on_output) {
      CHECK(out.empty());
      continue;
    }
    REQUIRE(out.size() == 1);
    const double t_stop = out.times.front();
    for (const SpikeTrain& s : trace.spikes)
      for (double t : s.times) CHECK(t <= t_stop);
  }
}

TEST_CASE("trace dump format") {
  SimTrace trace;
  trace.spikes.resize(2);
  trace.spikes[0].times = {5.0, 12.3};
  trace.spikes[1].times = {7.85};
  CHECK(dump_trace(trace) == "0\t5.0\n1\t7.9\n0\t12.3\n");
}

TEST_CASE("halving dt barely moves first-spike classification decisions") {
  const Dataset iris = load_csv(test::data_path("iris.csv"));
  const Network skeleton = iris_skeleton();
  const GenomeLayout layout = iris_layout();
  EncodingConfig enc;
  enc.feature_ranges = iris.feature_ranges;
  const FeatureMask mask(4, 1);
  const NoiseModel no_noise;

  for (std::uint64_t seed : {11u, 22u, 33u}) {
    Rng rng(seed);
    const Chromosome c = random_chromosome(layout, rng);
    const Network net = decode_genome(c, layout, skeleton);
    std::size_t changed = 0;
    for (const Pattern& p : iris.patterns) {
      const auto trains = encode(p.features, mask, enc, no_noise, 0);
      SimConfig coarse;
      SimConfig fine;
      fine.dt = 0.05;
      const Decision da = decode(simulate(net, trains, coarse, true), net);
      const Decision db = decode(simulate(net, trains, fine, true), net);
      if (da.class_index != db.class_index) ++changed;
    }
    // Regression bound: under 5% of the 150 patterns may flip.
    CHECK(changed < iris.patterns.size() / 20);
  }
}
