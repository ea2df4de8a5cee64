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
#include <string>
#include <vector>

#include "feastap/dataset.hpp"
#include "feastap/evolution.hpp"

namespace feastap {

// Aggregated settings for a seeded batch of training runs. Parsed from a flat
// "key = value" config file; unknown keys are rejected.
struct ExperimentConfig {
  std::string dataset_path;
  std::string skeleton = "iris7";
  std::string out_dir = "runs";

  EvoConfig evo;
  double isi_lo = 5.0;
  double isi_hi = 15.0;
  double horizon = 300.0;
  double dt = 0.1;
  NoiseModel noise;
  FitnessCoeffs coeffs;
  double warmup_ms = kDefaultWarmupMs;

  std::size_t repeats = 5;
  double train_fraction = 0.8;
  bool stratified_split = true;
  bool noiseless_test = false;
  unsigned gene_width = 12;
  bool csv_has_header = false;
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct RunSummary {
  std::uint64_t seed = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t selected_features = 0;
  std::size_t generations = 0;
  double wall_seconds = 0.0;  // console only; never written to report files
};

struct RunFailure {
  std::uint64_t seed = 0;
  std::string error;
};

struct ExperimentResult {
  std::vector<RunSummary> summaries;
  std::vector<RunFailure> failures;
  std::string report_text;
};

// One training run per repeat, seeded cfg.evo.seed + r. Each run writes
// history.tsv, best_chromosome.txt, the train/test splits and summary.json
// under <out_dir>/run_<seed>/; the batch writes report.txt and report.json.
// A failing repeat is recorded and the remaining repeats proceed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Aligned text table over the summaries, with a mean/max footer. Report files
// carry only deterministic fields, so reruns of the same config and seed are
// byte-identical.
std::string report(const std::vector<RunSummary>& summaries,
                   const std::vector<RunFailure>& failures = {});

std::string report_json(const std::vector<RunSummary>& summaries,
                        const std::vector<RunFailure>& failures = {});

// History log: one record per generation.
std::string history_text(const std::vector<GenerationStats>& history);

// Model export: skeleton name, encoding constants, per-feature ranges, then
// the chromosome's decoded genes and mask. Full float precision, so importing
// reproduces the trained network exactly.
struct Model {
  std::string skeleton = "iris7";
  EncodingConfig encoding;
  DecodedGenome genome;
};

std::string export_model(const Model& model, const GenomeLayout& layout);
Model import_model(const std::string& text);

Network skeleton_by_name(const std::string& name);
GenomeLayout layout_by_name(const std::string& name, unsigned gene_width = 12);

}  // namespace feastap
