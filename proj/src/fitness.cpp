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

#include "feastap/fitness.hpp"

#include <algorithm>
#include <stdexcept>

#include "feastap/simulate.hpp"

namespace feastap {

double fitness_from_ratios(const std::vector<double>& ratios,
                           const FitnessCoeffs& coeffs) {
  if (ratios.empty()) throw std::invalid_argument("fitness: no classes");
  double sum = 0.0;
  double min_ratio = ratios.front();
  for (double r : ratios) {
    sum += r;
    min_ratio = std::min(min_ratio, r);
  }
  if (coeffs.simple_ratio) return sum;

  double pair_term = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    for (std::size_t j = i + 1; j < ratios.size(); ++j)
      pair_term += std::min(ratios[i], ratios[j]);

  return coeffs.c1 / (1.0 + coeffs.epsilon - sum) +
         coeffs.c2 / (1.0 + coeffs.epsilon - min_ratio) +
         coeffs.c3 * pair_term;
}

namespace {

PatternOutcome outcome_from_decision(const Decision& decision, double warmup_ms) {
  PatternOutcome out;
  out.predicted = decision.class_index;
  out.decision_time = decision.decision_time;
  out.early = decision.decision_time && *decision.decision_time < warmup_ms;
  return out;
}

SimConfig sim_config(const EvalSettings& settings) {
  SimConfig cfg;
  cfg.dt = settings.dt;
  cfg.horizon = settings.encoding.horizon;
  return cfg;
}

}  // namespace

PatternOutcome classify_pattern(const Network& net,
                                const std::vector<double>& features,
                                const FeatureMask& mask,
                                const EvalSettings& settings,
                                std::uint64_t noise_stream_seed) {
  const std::vector<SpikeTrain> trains =
      encode(features, mask, settings.encoding, settings.noise, noise_stream_seed);
  const SimTrace trace =
      simulate(net, trains, sim_config(settings), /*stop_on_output=*/true);
  return outcome_from_decision(decode(trace, net), settings.warmup_ms);
}

EncodedPatterns encode_patterns(const std::vector<Pattern>& patterns,
                                std::size_t class_count,
                                const EvalSettings& settings,
                                std::uint64_t noise_seed) {
  EncodedPatterns out;
  out.class_count = class_count;
  out.trains.reserve(patterns.size());
  out.labels.reserve(patterns.size());
  const FeatureMask all_on(settings.encoding.feature_ranges.size(), 1);
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    out.trains.push_back(encode(patterns[p].features, all_on, settings.encoding,
                                settings.noise, derive_seed(noise_seed, p)));
    out.labels.push_back(patterns[p].label);
  }
  return out;
}

EvalReport evaluate(const Network& net, const FeatureMask& mask,
                    const EncodedPatterns& encoded, const EvalSettings& settings) {
  if (encoded.trains.empty())
    throw std::invalid_argument("evaluate: empty pattern set");
  if (encoded.class_count == 0)
    throw std::invalid_argument("evaluate: no classes");

  EvalReport report;
  report.correct.assign(encoded.class_count, 0);
  report.total.assign(encoded.class_count, 0);

  static const SpikeTrain kEmptyTrain;
  const SimConfig cfg = sim_config(settings);
  std::vector<const SpikeTrain*> inputs(mask.size());

  for (std::size_t p = 0; p < encoded.trains.size(); ++p) {
    const std::vector<SpikeTrain>& full = encoded.trains[p];
    if (full.size() != mask.size())
      throw std::invalid_argument("evaluate: mask length does not match encoding");
    for (std::size_t f = 0; f < mask.size(); ++f)
      inputs[f] = mask[f] ? &full[f] : &kEmptyTrain;

    const SimTrace trace = simulate(
        net, std::span<const SpikeTrain* const>(inputs), cfg, true);
    const PatternOutcome outcome =
        outcome_from_decision(decode(trace, net), settings.warmup_ms);

    const std::size_t label = encoded.labels[p];
    if (label >= encoded.class_count)
      throw std::invalid_argument("evaluate: label out of range");
    report.total[label] += 1;
    if (outcome.counts_correct(label)) report.correct[label] += 1;
  }

  for (std::size_t c = 0; c < encoded.class_count; ++c)
    if (report.total[c] == 0)
      throw std::invalid_argument("evaluate: class " + std::to_string(c) +
                                  " missing from the evaluation set");

  report.correct_ratio.resize(encoded.class_count);
  const double total_patterns = static_cast<double>(encoded.trains.size());
  for (std::size_t c = 0; c < encoded.class_count; ++c) {
    report.correct_ratio[c] = static_cast<double>(report.correct[c]) / total_patterns;
    report.accuracy += report.correct_ratio[c];
  }
  report.fitness = fitness_from_ratios(report.correct_ratio, settings.coeffs);
  return report;
}

EvalReport evaluate(const Network& net, const FeatureMask& mask,
                    const std::vector<Pattern>& patterns, std::size_t class_count,
                    const EvalSettings& settings, std::uint64_t noise_seed) {
  return evaluate(net, mask,
                  encode_patterns(patterns, class_count, settings, noise_seed),
                  settings);
}

}  // namespace feastap
