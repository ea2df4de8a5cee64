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

#include "feastap/network.hpp"
#include "feastap/rng.hpp"

using namespace feastap;

TEST_CASE("membrane potential at anchor points") {
  CHECK(membrane_potential(0.0) == 0.0);
  CHECK(membrane_potential(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(membrane_potential(-1.0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("property: membrane potential bounded and monotone") {
  Rng rng(101);
  double prev_x = -1e9;
  for (int i = 0; i < 2000; ++i) {
    const double x = -1e6 + 2e6 * rng.uniform();
    const double y = membrane_potential(x);
    CHECK(y > -1.0);
    CHECK(y < 1.0);
    const double x2 = x + 1e-3 + rng.uniform();
    CHECK(membrane_potential(x2) > y);
    (void)prev_x;
  }
}

TEST_CASE("actual inter-spike interval anchor points") {
  // MP at threshold: atan(0) = 0, so the interval sits at i_max.
  CHECK(actual_isi(0.5, 0.5, 1.0, 10.0) == 10.0);
  CHECK(actual_isi(0.0, 0.0, 1.0, 10.0) == 10.0);
  // Saturated MP: the limiting case returns i_min.
  CHECK(actual_isi(1.0, 0.5, 1.0, 10.0) == 1.0);
  // (mp - theta)/(1 - mp) = 1, atan = pi/4: midpoint 5.5.
  CHECK(actual_isi(0.75, 0.5, 1.0, 10.0) == doctest::Approx(5.5).epsilon(1e-12));
}

TEST_CASE("actual_isi clamps below threshold") {
  // MP below threshold would extrapolate past i_max; it clamps instead.
  CHECK(actual_isi(-0.5, 0.9, 1.0, 10.0) == 10.0);
  CHECK(actual_isi(0.0, 1.0, 1.0, 10.0) == 10.0);
}

TEST_CASE("property: actual_isi within bounds and non-increasing in MP") {
  Rng rng(202);
  for (int i = 0; i < 2000; ++i) {
    const double theta = rng.uniform();
    const double i_min = 0.5 + rng.uniform();
    const double i_max = i_min + 0.5 + 10.0 * rng.uniform();
    const double mp_a = -1.0 + 2.0 * rng.uniform();
    const double mp_b = mp_a + (1.0 - mp_a) * rng.uniform();  // mp_b >= mp_a
    const double ia = actual_isi(mp_a, theta, i_min, i_max);
    const double ib = actual_isi(mp_b, theta, i_min, i_max);
    CHECK(ia >= i_min);
    CHECK(ia <= i_max);
    CHECK(ib <= ia + 1e-12);
  }
}

TEST_CASE("network validation rejects malformed structures") {
  Network net;
  net.input_channels = 1;
  net.neurons.resize(2);
  net.neurons[0].synapses.push_back({SynapseSource::input(0), 0.5, 1.0, {}});
  net.neurons[1].synapses.push_back({SynapseSource::from_neuron(0), -0.5, 0.0, {}});
  net.output_neurons = {1};
  CHECK_NOTHROW(validate_network(net));

  SUBCASE("no outputs") {
    net.output_neurons.clear();
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("duplicate outputs") {
    net.output_neurons = {1, 1};
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("output id out of range") {
    net.output_neurons = {5};
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("threshold out of range") {
    net.neurons[0].threshold = 1.5;
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("weight out of range") {
    net.neurons[0].synapses[0].weight = -2.0;
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("inverted firing period bounds") {
    net.neurons[0].i_min = 11.0;
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("synapse source out of range") {
    net.neurons[0].synapses[0].source = SynapseSource::input(3);
    CHECK_THROWS_AS(validate_network(net), std::invalid_argument);
  }
  SUBCASE("cycles between neurons are allowed") {
    net.neurons[0].synapses.push_back({SynapseSource::from_neuron(1), 0.3, 2.0, {}});
    net.neurons[0].synapses.push_back({SynapseSource::from_neuron(0), 0.1, 1.0, {}});
    CHECK_NOTHROW(validate_network(net));
  }
}
