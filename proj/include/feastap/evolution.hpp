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

#include "feastap/fitness.hpp"
#include "feastap/genome.hpp"

namespace feastap {

struct EvoConfig {
  std::size_t population_size = 100;  // even
  std::size_t generations = 300;
  double value_crossover_rate = 0.7;
  double value_mutation_rate = 0.05;
  double mask_mutation_rate = 0.05;
  std::size_t trials = 1;
  std::uint64_t seed = 1;

  // Extras, all defaulted to the plain protocol.
  bool random_mask_init = false;       // default: masks start all-ones
  bool fitness_proportionate_pairing = false;  // default: uniform random pairing
  double subset_fraction = 1.0;        // < 1: per-generation evaluation subsample
  unsigned threads = 1;                // parallel fan-out for evaluations
};

struct Individual {
  Chromosome chromosome;
  std::optional<EvalReport> report;

  double fitness() const { return report ? report->fitness : 0.0; }
};

struct GenerationStats {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double best_accuracy = 0.0;
  std::size_t mask_size = 0;
};

// Everything needed to score an individual. The encoded pattern set carries a
// fixed noise realization, so all individuals of a run are compared on the
// same examples; this is also what makes elitist best fitness monotone.
struct EvoContext {
  const GenomeLayout* layout = nullptr;
  const Network* skeleton = nullptr;
  const EncodedPatterns* encoded = nullptr;
  const EvalSettings* settings = nullptr;
};

std::vector<Individual> init_population(const EvoConfig& cfg,
                                        const GenomeLayout& layout, Rng& rng);

// With probability `rate`, two-point crossover on the value bits and,
// independently cut, on the mask (single-point when the mask is too short to
// cut twice); otherwise the children are copies of the parents.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a,
                                            const Chromosome& b, double rate,
                                            Rng& rng);

// Independent per-bit flips: value bits at value_rate, mask bits at mask_rate.
Chromosome mutate(const Chromosome& c, double value_rate, double mask_rate,
                  Rng& rng);

// Fills in missing reports; already-evaluated individuals are untouched.
// Individual evaluations are independent, so `threads` > 1 fans them out
// without changing any result.
void evaluate_population(std::vector<Individual>& population,
                         const EvoContext& ctx, unsigned threads);

// Indices of the `keep` best reports, ties resolved toward the lower index.
std::vector<std::size_t> select_best(const std::vector<Individual>& pool,
                                     std::size_t keep);

// One elitist generation: pair parents, recombine, mutate, evaluate the
// offspring on the same examples as the parents, then keep the best half of
// the pooled 2N individuals.
std::vector<Individual> step_generation(const std::vector<Individual>& parents,
                                        const EvoContext& ctx,
                                        const EvoConfig& cfg, Rng& rng);

struct EvoResult {
  Individual best;
  std::vector<GenerationStats> history;  // entry 0 is the initial population
};

EvoResult run(const EvoConfig& cfg, const EvoContext& ctx);

}  // namespace feastap
