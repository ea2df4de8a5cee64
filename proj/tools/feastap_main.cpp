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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "feastap/runner.hpp"
#include "feastap/simulate.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int cmd_train(const std::string& config_path, std::uint64_t* seed,
              double* noise_sd, std::uint64_t* generations,
              const std::string* out_dir) {
  feastap::ExperimentConfig cfg = feastap::load_experiment_config(config_path);
  if (seed) cfg.evo.seed = *seed;
  if (noise_sd) cfg.noise.target_sd = *noise_sd;
  if (generations) cfg.evo.generations = *generations;
  if (out_dir) cfg.out_dir = *out_dir;

  const feastap::ExperimentResult result = feastap::run_experiment(cfg);
  std::cout << result.report_text;
  for (const feastap::RunSummary& s : result.summaries)
    std::printf("run seed %llu finished in %.1f s\n",
                static_cast<unsigned long long>(s.seed), s.wall_seconds);
  return result.failures.empty() ? 0 : 1;
}

int cmd_eval(const std::string& model_path, const std::string& dataset_path,
             double noise_sd, std::uint64_t seed, const std::string& dump_dir) {
  const feastap::Model model = feastap::import_model(slurp(model_path));
  const feastap::Network skeleton = feastap::skeleton_by_name(model.skeleton);
  const feastap::GenomeLayout layout = feastap::layout_by_name(model.skeleton);
  const feastap::Network net =
      feastap::apply_decoded_values(model.genome, layout, skeleton);

  const feastap::Dataset data = feastap::load_csv(dataset_path);
  if (data.feature_count() != layout.mask_length)
    throw std::runtime_error("dataset feature count does not match the model");

  feastap::EvalSettings settings;
  settings.encoding = model.encoding;  // ranges travel with the model
  settings.noise.target_sd = noise_sd;

  const feastap::EvalReport report = feastap::evaluate(
      net, model.genome.mask, data.patterns, data.class_count(), settings,
      feastap::derive_seed(seed, feastap::stream::kTestNoise));

  std::printf("patterns: %zu\n", data.patterns.size());
  std::printf("accuracy: %.4f\n", report.accuracy);
  for (std::size_t c = 0; c < report.correct.size(); ++c)
    std::printf("class %zu (%s): %zu/%zu correct\n", c,
                data.class_names[c].c_str(), report.correct[c], report.total[c]);

  if (!dump_dir.empty()) {
    std::filesystem::create_directories(dump_dir);
    feastap::SimConfig sim_cfg;
    sim_cfg.horizon = model.encoding.horizon;
    for (std::size_t p = 0; p < data.patterns.size(); ++p) {
      const auto trains = feastap::encode(
          data.patterns[p].features, model.genome.mask, model.encoding,
          settings.noise,
          feastap::derive_seed(feastap::derive_seed(seed, feastap::stream::kTestNoise), p));
      const feastap::SimTrace trace = feastap::simulate(net, trains, sim_cfg, true);
      std::ofstream out(std::filesystem::path(dump_dir) /
                        ("pattern_" + std::to_string(p) + ".tsv"));
      out << feastap::dump_trace(trace);
    }
    std::printf("spike traces written to %s\n", dump_dir.c_str());
  }
  return 0;
}

int cmd_report(const std::string& runs_dir) {
  std::vector<feastap::RunSummary> summaries;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(runs_dir)) {
    if (!entry.is_directory()) continue;
    const auto summary = entry.path() / "summary.json";
    if (std::filesystem::exists(summary)) files.push_back(summary);
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const nlohmann::json doc = nlohmann::json::parse(slurp(file.string()));
    for (const auto& run : doc.at("runs")) {
      feastap::RunSummary s;
      s.seed = run.at("seed").get<std::uint64_t>();
      s.selected_features = run.at("inputs").get<std::size_t>();
      s.train_accuracy = run.at("train_accuracy").get<double>();
      s.test_accuracy = run.at("test_accuracy").get<double>();
      s.generations = run.at("generations").get<std::size_t>();
      summaries.push_back(s);
    }
  }
  std::sort(summaries.begin(), summaries.end(),
            [](const auto& a, const auto& b) { return a.seed < b.seed; });
  std::cout << feastap::report(summaries);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JASTAP spiking-network trainer with evolutionary feature selection"};
  app.require_subcommand(1);

  // train
  std::string config_path;
  std::uint64_t seed = 0;
  double noise_sd = 0.0;
  std::uint64_t generations = 0;
  std::string out_dir;
  auto* train = app.add_subcommand("train", "run a seeded training experiment");
  train->add_option("--config", config_path, "experiment config file")->required();
  auto* seed_opt = train->add_option("--seed", seed, "master seed override");
  auto* noise_opt = train->add_option("--noise-sd", noise_sd,
                                      "noise target sd override (ms)");
  auto* gen_opt = train->add_option("--generations", generations,
                                    "generation count override");
  auto* out_opt = train->add_option("--out", out_dir, "output directory override");

  // eval
  std::string model_path, dataset_path, dump_dir;
  double eval_noise_sd = 0.0;
  std::uint64_t eval_seed = 0;
  auto* eval = app.add_subcommand("eval", "score an exported chromosome on a CSV");
  eval->add_option("--chromosome", model_path, "exported best_chromosome.txt")
      ->required();
  eval->add_option("--dataset", dataset_path, "CSV dataset")->required();
  eval->add_option("--noise-sd", eval_noise_sd, "apply noise at this sd (ms)");
  eval->add_option("--seed", eval_seed, "noise stream seed");
  eval->add_option("--dump-traces", dump_dir, "write per-pattern spike traces");

  // report
  std::string runs_dir;
  auto* report = app.add_subcommand("report", "aggregate run summaries");
  report->add_option("--runs", runs_dir, "directory of run_<seed> folders")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(train))
      return cmd_train(config_path, seed_opt->count() ? &seed : nullptr,
                       noise_opt->count() ? &noise_sd : nullptr,
                       gen_opt->count() ? &generations : nullptr,
                       out_opt->count() ? &out_dir : nullptr);
    if (app.got_subcommand(eval))
      return cmd_eval(model_path, dataset_path, eval_noise_sd, eval_seed, dump_dir);
    if (app.got_subcommand(report)) return cmd_report(runs_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
