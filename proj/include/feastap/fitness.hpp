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
#include <vector>

#include "feastap/codec.hpp"
#include "feastap/dataset.hpp"
#include "feastap/network.hpp"
#include "feastap/noise.hpp"

namespace feastap {

struct FitnessCoeffs {
  double c1 = 1.0;
  double c2 = 30.0;
  double c3 = 7.0;
  double epsilon = 0.01;
  // Accuracy-only baseline; kept for comparison plots, not a training mode.
  bool simple_ratio = false;
};

struct EvalReport {
  std::vector<double> correct_ratio;   // per class, normalized by total patterns
  std::vector<std::size_t> correct;    // per class
  std::vector<std::size_t> total;      // per class
  double accuracy = 0.0;               // sum of correct_ratio
  double fitness = 0.0;
};

// Three-term fitness over per-class correct ratios r_i (sum <= 1):
//
//   c1 / (1 + eps - sum_i r_i)
//   + c2 / (1 + eps - min_i r_i)
//   + c3 * sum_{i<j} min(r_i, r_j)
//
// The first term rewards overall accuracy, the second lifts the weakest
// class, the third credits responding correctly in several classes at once.
double fitness_from_ratios(const std::vector<double>& ratios,
                           const FitnessCoeffs& coeffs);

// Outcome of presenting one pattern: the hot-spot decision, and whether it
// came before the warm-up window (an "early" response counts as incorrect,
// as does a silent network).
struct PatternOutcome {
  std::optional<std::size_t> predicted;
  std::optional<double> decision_time;
  bool early = false;

  bool counts_correct(std::size_t label) const {
    return predicted && !early && *predicted == label;
  }
};

// Decision window: responses earlier than this are invalid. One maximal
// encoded inter-spike interval, so no full value-bearing interval can have
// arrived yet.
constexpr double kDefaultWarmupMs = 15.0;

struct EvalSettings {
  EncodingConfig encoding;
  NoiseModel noise;
  FitnessCoeffs coeffs;
  double warmup_ms = kDefaultWarmupMs;
  double dt = 0.1;
};

// encode -> simulate (stopping at the first output spike) -> decode.
PatternOutcome classify_pattern(const Network& net,
                                const std::vector<double>& features,
                                const FeatureMask& mask,
                                const EvalSettings& settings,
                                std::uint64_t noise_stream_seed);

// Pre-encoded spike trains for a pattern set: trains[p][f] is feature f of
// pattern p, encoded *unmasked* with noise stream derive(noise_seed, p) so
// every individual sees the identical realization regardless of its mask.
struct EncodedPatterns {
  std::vector<std::vector<SpikeTrain>> trains;
  std::vector<std::size_t> labels;
  std::size_t class_count = 0;
};

EncodedPatterns encode_patterns(const std::vector<Pattern>& patterns,
                                std::size_t class_count,
                                const EvalSettings& settings,
                                std::uint64_t noise_seed);

// Evaluates a decoded network + mask over a pre-encoded pattern set.
EvalReport evaluate(const Network& net, const FeatureMask& mask,
                    const EncodedPatterns& encoded, const EvalSettings& settings);

// Convenience path that encodes on the fly (test-set evaluation, CLI).
EvalReport evaluate(const Network& net, const FeatureMask& mask,
                    const std::vector<Pattern>& patterns, std::size_t class_count,
                    const EvalSettings& settings, std::uint64_t noise_seed);

}  // namespace feastap
