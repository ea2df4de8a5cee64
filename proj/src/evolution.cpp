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

#include "feastap/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace feastap {

namespace {

void validate(const EvoConfig& cfg) {
  if (cfg.population_size < 2 || cfg.population_size % 2 != 0)
    throw std::invalid_argument("evolution: population size must be even and >= 2");
  for (double rate : {cfg.value_crossover_rate, cfg.value_mutation_rate,
                      cfg.mask_mutation_rate})
    if (!(rate >= 0.0 && rate <= 1.0))
      throw std::invalid_argument("evolution: rates must lie in [0, 1]");
  if (!(cfg.subset_fraction > 0.0 && cfg.subset_fraction <= 1.0))
    throw std::invalid_argument("evolution: subset fraction must be in (0, 1]");
  if (cfg.trials < 1)
    throw std::invalid_argument("evolution: trials must be >= 1");
}

// Swaps the segment [cut1, cut2) between two equal-length bit strings; a
// two-point crossover once the cuts are drawn.
template <typename Bits>
void swap_segment(Bits& a, Bits& b, std::size_t cut1, std::size_t cut2) {
  for (std::size_t i = cut1; i < cut2; ++i) std::swap(a[i], b[i]);
}

// Two distinct interior cut points in [1, len-1], ascending.
std::pair<std::size_t, std::size_t> draw_cuts(std::size_t len, Rng& rng) {
  const std::size_t c1 = 1 + rng.below(len - 1);
  std::size_t c2 = 1 + rng.below(len - 2);
  if (c2 >= c1) ++c2;
  return {std::min(c1, c2), std::max(c1, c2)};
}

EncodedPatterns stratified_subset(const EncodedPatterns& full, double fraction,
                                  Rng& rng) {
  EncodedPatterns sub;
  sub.class_count = full.class_count;
  for (std::size_t c = 0; c < full.class_count; ++c) {
    std::vector<std::size_t> indices;
    for (std::size_t p = 0; p < full.labels.size(); ++p)
      if (full.labels[p] == c) indices.push_back(p);
    for (std::size_t i = indices.size(); i > 1; --i)
      std::swap(indices[i - 1], indices[rng.below(i)]);
    std::size_t take = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(indices.size())));
    take = std::clamp<std::size_t>(take, 1, indices.size());
    for (std::size_t i = 0; i < take; ++i) {
      sub.trains.push_back(full.trains[indices[i]]);
      sub.labels.push_back(full.labels[indices[i]]);
    }
  }
  return sub;
}

GenerationStats stats_for(std::size_t generation,
                          const std::vector<Individual>& population) {
  GenerationStats s;
  s.generation = generation;
  const Individual* best = &population.front();
  double sum = 0.0;
  for (const Individual& ind : population) {
    sum += ind.fitness();
    if (ind.fitness() > best->fitness()) best = &ind;
  }
  s.best_fitness = best->fitness();
  s.mean_fitness = sum / static_cast<double>(population.size());
  s.best_accuracy = best->report ? best->report->accuracy : 0.0;
  s.mask_size = static_cast<std::size_t>(
      std::count(best->chromosome.mask.begin(), best->chromosome.mask.end(), 1));
  return s;
}

}  // namespace

std::vector<Individual> init_population(const EvoConfig& cfg,
                                        const GenomeLayout& layout, Rng& rng) {
  validate(cfg);
  std::vector<Individual> population;
  population.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i)
    population.push_back({random_chromosome(layout, rng, cfg.random_mask_init), {}});
  return population;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a,
                                            const Chromosome& b, double rate,
                                            Rng& rng) {
  if (a.value_bits.size() != b.value_bits.size() || a.mask.size() != b.mask.size())
    throw std::invalid_argument("crossover: parents have different layouts");
  Chromosome c1 = a;
  Chromosome c2 = b;
  if (rate > 0.0 && rng.bernoulli(rate)) {
    if (c1.value_bits.size() >= 3) {
      const auto [lo, hi] = draw_cuts(c1.value_bits.size(), rng);
      swap_segment(c1.value_bits, c2.value_bits, lo, hi);
    }
    if (c1.mask.size() >= 3) {
      const auto [lo, hi] = draw_cuts(c1.mask.size(), rng);
      swap_segment(c1.mask, c2.mask, lo, hi);
    } else if (c1.mask.size() == 2) {
      swap_segment(c1.mask, c2.mask, 1, 2);  // single interior cut
    }
  }
  return {std::move(c1), std::move(c2)};
}

Chromosome mutate(const Chromosome& c, double value_rate, double mask_rate,
                  Rng& rng) {
  Chromosome m = c;
  if (value_rate > 0.0)
    for (auto& bit : m.value_bits)
      if (rng.bernoulli(value_rate)) bit ^= 1;
  if (mask_rate > 0.0)
    for (auto& bit : m.mask)
      if (rng.bernoulli(mask_rate)) bit ^= 1;
  return m;
}

void evaluate_population(std::vector<Individual>& population,
                         const EvoContext& ctx, unsigned threads) {
  auto eval_one = [&](Individual& ind) {
    if (ind.report) return;
    const Network net = decode_genome(ind.chromosome, *ctx.layout, *ctx.skeleton);
    ind.report = evaluate(net, ind.chromosome.mask, *ctx.encoded, *ctx.settings);
  };
  if (threads <= 1 || population.size() < 2) {
    for (Individual& ind : population) eval_one(ind);
    return;
  }
  const unsigned n_threads =
      std::min<unsigned>(threads, static_cast<unsigned>(population.size()));
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < population.size(); i += n_threads)
        eval_one(population[i]);
    });
  }
  for (std::thread& worker : workers) worker.join();
}

std::vector<std::size_t> select_best(const std::vector<Individual>& pool,
                                     std::size_t keep) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return pool[x].fitness() > pool[y].fitness();
  });
  order.resize(std::min(keep, order.size()));
  return order;
}

std::vector<Individual> step_generation(const std::vector<Individual>& parents,
                                        const EvoContext& ctx,
                                        const EvoConfig& cfg, Rng& rng) {
  validate(cfg);
  if (parents.size() != cfg.population_size)
    throw std::invalid_argument("step_generation: population size drifted");
  for (const Individual& p : parents)
    if (!p.report)
      throw std::invalid_argument("step_generation: unevaluated parent");

  // Pair parents: a uniform random permutation taken two at a time, or
  // fitness-proportionate draws when configured.
  std::vector<std::size_t> pairing(parents.size());
  if (!cfg.fitness_proportionate_pairing) {
    std::iota(pairing.begin(), pairing.end(), 0);
    for (std::size_t i = pairing.size(); i > 1; --i)
      std::swap(pairing[i - 1], pairing[rng.below(i)]);
  } else {
    double total = 0.0;
    for (const Individual& p : parents) total += p.fitness();
    for (auto& slot : pairing) {
      double pick = rng.uniform() * total;
      std::size_t chosen = parents.size() - 1;
      for (std::size_t i = 0; i < parents.size(); ++i) {
        pick -= parents[i].fitness();
        if (pick <= 0.0) {
          chosen = i;
          break;
        }
      }
      slot = chosen;
    }
  }

  std::vector<Individual> offspring;
  offspring.reserve(parents.size());
  for (std::size_t i = 0; i + 1 < pairing.size(); i += 2) {
    auto [c1, c2] = crossover(parents[pairing[i]].chromosome,
                              parents[pairing[i + 1]].chromosome,
                              cfg.value_crossover_rate, rng);
    offspring.push_back(
        {mutate(c1, cfg.value_mutation_rate, cfg.mask_mutation_rate, rng), {}});
    offspring.push_back(
        {mutate(c2, cfg.value_mutation_rate, cfg.mask_mutation_rate, rng), {}});
  }

  // Offspring see the same examples (and noise realization) as their parents.
  evaluate_population(offspring, ctx, cfg.threads);

  std::vector<Individual> pool;
  pool.reserve(parents.size() * 2);
  pool.insert(pool.end(), parents.begin(), parents.end());  // parents first:
  pool.insert(pool.end(), offspring.begin(), offspring.end());  // tie-break order
  const std::vector<std::size_t> keep = select_best(pool, parents.size());

  std::vector<Individual> next;
  next.reserve(parents.size());
  for (std::size_t idx : keep) next.push_back(std::move(pool[idx]));
  return next;
}

EvoResult run(const EvoConfig& cfg, const EvoContext& ctx) {
  validate(cfg);
  if (!ctx.layout || !ctx.skeleton || !ctx.encoded || !ctx.settings)
    throw std::invalid_argument("run: incomplete context");

  Rng init_rng = make_stream(cfg.seed, stream::kInitPopulation);
  std::vector<Individual> population = init_population(cfg, *ctx.layout, init_rng);

  const bool resample = cfg.subset_fraction < 1.0;
  EvoContext gen_ctx = ctx;
  EncodedPatterns subset;

  auto refresh_subset = [&](std::size_t generation) {
    if (!resample) return;
    Rng sub_rng = make_stream(
        derive_seed(cfg.seed, stream::kGenerationBase + generation), 0x5ab5e7);
    subset = stratified_subset(*ctx.encoded, cfg.subset_fraction, sub_rng);
    gen_ctx.encoded = &subset;
    // A fresh subset invalidates all reports; everyone is re-scored on it.
    for (Individual& ind : population) ind.report.reset();
  };

  refresh_subset(0);
  evaluate_population(population, gen_ctx, cfg.threads);

  EvoResult result;
  result.history.reserve(cfg.generations + 1);
  result.history.push_back(stats_for(0, population));

  for (std::size_t g = 1; g <= cfg.generations; ++g) {
    refresh_subset(g);
    if (resample) evaluate_population(population, gen_ctx, cfg.threads);
    Rng gen_rng = make_stream(cfg.seed, stream::kGenerationBase + g);
    population = step_generation(population, gen_ctx, cfg, gen_rng);
    result.history.push_back(stats_for(g, population));
  }

  const std::vector<std::size_t> best_idx = select_best(population, 1);
  result.best = population[best_idx.front()];
  return result;
}

}  // namespace feastap
