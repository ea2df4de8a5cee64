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

#include "feastap/runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace feastap {

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* begin = value.data();
  const auto [ptr, ec] = std::from_chars(begin, begin + value.size(), v);
  if (ec != std::errc() || ptr != begin + value.size())
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const char* begin = value.data();
  const auto [ptr, ec] = std::from_chars(begin, begin + value.size(), v);
  if (ec != std::errc() || ptr != begin + value.size())
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + value);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string format_csv(const Dataset& d) {
  std::string out;
  char cell[64];
  for (const Pattern& p : d.patterns) {
    for (double v : p.features) {
      std::snprintf(cell, sizeof cell, "%.17g,", v);
      out += cell;
    }
    out += d.class_names[p.label];
    out += '\n';
  }
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string row = strip(line);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = strip(row.substr(0, eq));
    const std::string value = strip(row.substr(eq + 1));

    if (key == "dataset") cfg.dataset_path = value;
    else if (key == "skeleton") cfg.skeleton = value;
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "population_size") cfg.evo.population_size = parse_u64(key, value);
    else if (key == "generations") cfg.evo.generations = parse_u64(key, value);
    else if (key == "value_crossover_rate") cfg.evo.value_crossover_rate = parse_double(key, value);
    else if (key == "value_mutation_rate") cfg.evo.value_mutation_rate = parse_double(key, value);
    else if (key == "mask_mutation_rate") cfg.evo.mask_mutation_rate = parse_double(key, value);
    else if (key == "trials") cfg.evo.trials = parse_u64(key, value);
    else if (key == "seed") cfg.evo.seed = parse_u64(key, value);
    else if (key == "threads") cfg.evo.threads = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "subset_fraction") cfg.evo.subset_fraction = parse_double(key, value);
    else if (key == "random_mask_init") cfg.evo.random_mask_init = parse_bool(key, value);
    else if (key == "fitness_proportionate_pairing") cfg.evo.fitness_proportionate_pairing = parse_bool(key, value);
    else if (key == "isi_lo") cfg.isi_lo = parse_double(key, value);
    else if (key == "isi_hi") cfg.isi_hi = parse_double(key, value);
    else if (key == "horizon") cfg.horizon = parse_double(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "noise_sd") cfg.noise.target_sd = parse_double(key, value);
    else if (key == "noise_alpha") cfg.noise.shape = parse_double(key, value);
    else if (key == "noise_beta") cfg.noise.scale = parse_double(key, value);
    else if (key == "c1") cfg.coeffs.c1 = parse_double(key, value);
    else if (key == "c2") cfg.coeffs.c2 = parse_double(key, value);
    else if (key == "c3") cfg.coeffs.c3 = parse_double(key, value);
    else if (key == "epsilon") cfg.coeffs.epsilon = parse_double(key, value);
    else if (key == "simple_ratio_fitness") cfg.coeffs.simple_ratio = parse_bool(key, value);
    else if (key == "warmup_ms") cfg.warmup_ms = parse_double(key, value);
    else if (key == "repeats") cfg.repeats = parse_u64(key, value);
    else if (key == "train_fraction") cfg.train_fraction = parse_double(key, value);
    else if (key == "stratified_split") cfg.stratified_split = parse_bool(key, value);
    else if (key == "noiseless_test") cfg.noiseless_test = parse_bool(key, value);
    else if (key == "gene_width") cfg.gene_width = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "csv_has_header") cfg.csv_has_header = parse_bool(key, value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "' on line " +
                                  std::to_string(line_no));
  }
  if (cfg.repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

Network skeleton_by_name(const std::string& name) {
  if (name == "iris7") return iris_skeleton();
  throw std::invalid_argument("unknown skeleton '" + name + "'");
}

GenomeLayout layout_by_name(const std::string& name, unsigned gene_width) {
  if (name == "iris7") return iris_layout(gene_width);
  throw std::invalid_argument("unknown skeleton '" + name + "'");
}

std::string history_text(const std::vector<GenerationStats>& history) {
  std::string out = "generation\tbest_fitness\tmean_fitness\tbest_accuracy\tmask_size\n";
  char line[256];
  for (const GenerationStats& s : history) {
    std::snprintf(line, sizeof line, "%zu\t%.17g\t%.17g\t%.17g\t%zu\n",
                  s.generation, s.best_fitness, s.mean_fitness, s.best_accuracy,
                  s.mask_size);
    out += line;
  }
  return out;
}

std::string export_model(const Model& model, const GenomeLayout& layout) {
  std::string out;
  char line[128];
  out += "skeleton=" + model.skeleton + "\n";
  std::snprintf(line, sizeof line, "isi_lo=%.17g\n", model.encoding.isi_lo);
  out += line;
  std::snprintf(line, sizeof line, "isi_hi=%.17g\n", model.encoding.isi_hi);
  out += line;
  std::snprintf(line, sizeof line, "horizon=%.17g\n", model.encoding.horizon);
  out += line;
  for (std::size_t f = 0; f < model.encoding.feature_ranges.size(); ++f) {
    std::snprintf(line, sizeof line, "range%zu=%.17g,%.17g\n", f,
                  model.encoding.feature_ranges[f].first,
                  model.encoding.feature_ranges[f].second);
    out += line;
  }
  if (model.genome.values.size() != layout.genes.size())
    throw std::invalid_argument("export_model: gene count mismatch");
  for (std::size_t i = 0; i < layout.genes.size(); ++i) {
    std::snprintf(line, sizeof line, "%s=%.17g\n", layout.genes[i].name.c_str(),
                  model.genome.values[i]);
    out += line;
  }
  out += "mask=";
  for (auto bit : model.genome.mask) out += bit ? '1' : '0';
  out += '\n';
  return out;
}

Model import_model(const std::string& text) {
  Model model;
  std::map<std::string, double> genes;
  std::map<std::size_t, std::pair<double, double>> ranges;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string row = strip(line);
    if (row.empty() || row[0] == '#') continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("model file: missing '=' in: " + row);
    const std::string key = row.substr(0, eq);
    const std::string value = row.substr(eq + 1);
    if (key == "skeleton") {
      model.skeleton = value;
    } else if (key == "isi_lo") {
      model.encoding.isi_lo = parse_double(key, value);
    } else if (key == "isi_hi") {
      model.encoding.isi_hi = parse_double(key, value);
    } else if (key == "horizon") {
      model.encoding.horizon = parse_double(key, value);
    } else if (key.rfind("range", 0) == 0) {
      const std::size_t f = parse_u64(key, key.substr(5));
      const auto comma = value.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("model file: range needs 'min,max'");
      ranges[f] = {parse_double(key, value.substr(0, comma)),
                   parse_double(key, value.substr(comma + 1))};
    } else if (key == "mask") {
      for (char ch : value)
        if (ch == '0' || ch == '1') model.genome.mask.push_back(ch == '1' ? 1 : 0);
    } else {
      genes[key] = parse_double(key, value);
    }
  }

  model.encoding.feature_ranges.resize(ranges.size());
  for (const auto& [f, range] : ranges) {
    if (f >= model.encoding.feature_ranges.size())
      throw std::invalid_argument("model file: non-contiguous range indices");
    model.encoding.feature_ranges[f] = range;
  }

  const GenomeLayout layout = layout_by_name(model.skeleton);
  model.genome.values.reserve(layout.genes.size());
  for (const GeneDescriptor& gene : layout.genes) {
    const auto it = genes.find(gene.name);
    if (it == genes.end())
      throw std::invalid_argument("model file: missing gene " + gene.name);
    model.genome.values.push_back(it->second);
  }
  if (model.genome.mask.size() != layout.mask_length)
    throw std::invalid_argument("model file: mask length mismatch");
  return model;
}

std::string report(const std::vector<RunSummary>& summaries,
                   const std::vector<RunFailure>& failures) {
  std::string out;
  char line[256];
  out += "seed                  inputs  train_acc  test_acc  generations\n";
  out += "------------------------------------------------------------\n";
  double mean_train = 0.0, mean_test = 0.0, best_test = 0.0, mean_inputs = 0.0;
  for (const RunSummary& s : summaries) {
    std::snprintf(line, sizeof line, "%-20llu  %6zu  %9.4f  %8.4f  %11zu\n",
                  static_cast<unsigned long long>(s.seed), s.selected_features,
                  s.train_accuracy, s.test_accuracy, s.generations);
    out += line;
    mean_train += s.train_accuracy;
    mean_test += s.test_accuracy;
    mean_inputs += static_cast<double>(s.selected_features);
    best_test = std::max(best_test, s.test_accuracy);
  }
  if (!summaries.empty()) {
    const double n = static_cast<double>(summaries.size());
    out += "------------------------------------------------------------\n";
    std::snprintf(line, sizeof line, "mean                  %6.2f  %9.4f  %8.4f\n",
                  mean_inputs / n, mean_train / n, mean_test / n);
    out += line;
    std::snprintf(line, sizeof line, "max                           %9s  %8.4f\n",
                  "", best_test);
    out += line;
  }
  for (const RunFailure& f : failures) {
    std::snprintf(line, sizeof line, "FAILED seed %llu: %s\n",
                  static_cast<unsigned long long>(f.seed), f.error.c_str());
    out += line;
  }
  out += "# accuracies are measured on the held-out test split\n";
  return out;
}

std::string report_json(const std::vector<RunSummary>& summaries,
                        const std::vector<RunFailure>& failures) {
  nlohmann::ordered_json doc;
  doc["runs"] = nlohmann::ordered_json::array();
  for (const RunSummary& s : summaries) {
    doc["runs"].push_back({{"seed", s.seed},
                           {"inputs", s.selected_features},
                           {"train_accuracy", s.train_accuracy},
                           {"test_accuracy", s.test_accuracy},
                           {"generations", s.generations}});
  }
  if (!summaries.empty()) {
    const double n = static_cast<double>(summaries.size());
    double mean_test = 0.0, best_test = 0.0, mean_train = 0.0;
    for (const RunSummary& s : summaries) {
      mean_test += s.test_accuracy;
      mean_train += s.train_accuracy;
      best_test = std::max(best_test, s.test_accuracy);
    }
    doc["aggregate"] = {{"mean_train_accuracy", mean_train / n},
                        {"mean_test_accuracy", mean_test / n},
                        {"best_test_accuracy", best_test}};
  }
  doc["failures"] = nlohmann::ordered_json::array();
  for (const RunFailure& f : failures)
    doc["failures"].push_back({{"seed", f.seed}, {"error", f.error}});
  doc["note"] = "accuracies are measured on the held-out test split";
  return doc.dump(2) + "\n";
}

namespace {

struct SingleRun {
  RunSummary summary;
  std::vector<GenerationStats> history;
  Model model;
  Dataset train;
  Dataset test;
};

SingleRun execute_run(const ExperimentConfig& cfg, const Dataset& full,
                      std::uint64_t run_seed) {
  const auto t_start = std::chrono::steady_clock::now();

  const Network skeleton = skeleton_by_name(cfg.skeleton);
  const GenomeLayout layout = layout_by_name(cfg.skeleton, cfg.gene_width);
  if (layout.mask_length != full.feature_count())
    throw std::invalid_argument("dataset feature count does not match skeleton");
  if (skeleton.output_neurons.size() != full.class_count())
    throw std::invalid_argument("dataset class count does not match skeleton");

  EvalSettings settings;
  settings.encoding.isi_lo = cfg.isi_lo;
  settings.encoding.isi_hi = cfg.isi_hi;
  settings.encoding.horizon = cfg.horizon;
  settings.encoding.feature_ranges = full.feature_ranges;
  settings.noise = cfg.noise;
  settings.coeffs = cfg.coeffs;
  settings.warmup_ms = cfg.warmup_ms;
  settings.dt = cfg.dt;

  Rng split_rng = make_stream(run_seed, stream::kSplit);
  SingleRun result;
  {
    Split s = split(full, cfg.train_fraction, split_rng, cfg.stratified_split);
    result.train = std::move(s.train);
    result.test = std::move(s.test);
  }

  // Independent trials within the run; the best by fitness is kept.
  EvoResult best_trial;
  bool have_trial = false;
  for (std::size_t t = 0; t < cfg.evo.trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(run_seed, stream::kTrial + t);
    const EncodedPatterns encoded =
        encode_patterns(result.train.patterns, result.train.class_count(),
                        settings, derive_seed(trial_seed, stream::kTrainNoise));
    EvoConfig evo = cfg.evo;
    evo.seed = trial_seed;
    EvoContext ctx{&layout, &skeleton, &encoded, &settings};
    EvoResult trial = run(evo, ctx);
    if (!have_trial || trial.best.fitness() > best_trial.best.fitness()) {
      best_trial = std::move(trial);
      have_trial = true;
    }
  }

  // Score the winner on the held-out split; noise applies there too unless
  // disabled, with its own stream.
  const Individual& best = best_trial.best;
  const Network net = decode_genome(best.chromosome, layout, skeleton);
  EvalSettings test_settings = settings;
  if (cfg.noiseless_test) test_settings.noise.target_sd = 0.0;
  const EvalReport test_report =
      evaluate(net, best.chromosome.mask, result.test.patterns,
               result.test.class_count(), test_settings,
               derive_seed(run_seed, stream::kTestNoise));

  result.summary.seed = run_seed;
  result.summary.train_accuracy = best.report ? best.report->accuracy : 0.0;
  result.summary.test_accuracy = test_report.accuracy;
  result.summary.selected_features = static_cast<std::size_t>(std::count(
      best.chromosome.mask.begin(), best.chromosome.mask.end(), 1));
  result.summary.generations = cfg.evo.generations;
  result.history = std::move(best_trial.history);

  result.model.skeleton = cfg.skeleton;
  result.model.encoding = settings.encoding;
  std::size_t offset = 0;
  for (const GeneDescriptor& gene : layout.genes) {
    result.model.genome.values.push_back(
        decode_gene(gene, best.chromosome.value_bits, offset));
    offset += gene.width;
  }
  result.model.genome.mask = best.chromosome.mask;

  // Round-trip check: importing the export and re-scoring the stored test
  // split must reproduce the reported accuracy exactly.
  {
    const Model reloaded = import_model(export_model(result.model, layout));
    const Network net2 = apply_decoded_values(reloaded.genome, layout, skeleton);
    EvalSettings check = test_settings;
    check.encoding = reloaded.encoding;
    const EvalReport again =
        evaluate(net2, reloaded.genome.mask, result.test.patterns,
                 result.test.class_count(), check,
                 derive_seed(run_seed, stream::kTestNoise));
    if (again.accuracy != test_report.accuracy)
      throw std::logic_error("model round-trip changed the test accuracy");
  }

  result.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.dataset_path.empty())
    throw std::invalid_argument("config: dataset path is required");
  CsvSchema schema;
  schema.has_header = cfg.csv_has_header;
  const Dataset full = load_csv(cfg.dataset_path, schema);

  const std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);

  ExperimentResult result;
  for (std::size_t r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t run_seed = cfg.evo.seed + r;
    try {
      SingleRun run_result = execute_run(cfg, full, run_seed);
      const std::filesystem::path run_dir =
          out_dir / ("run_" + std::to_string(run_seed));
      std::filesystem::create_directories(run_dir);
      write_file(run_dir / "history.tsv", history_text(run_result.history));
      const GenomeLayout layout = layout_by_name(cfg.skeleton, cfg.gene_width);
      write_file(run_dir / "best_chromosome.txt",
                 export_model(run_result.model, layout));
      write_file(run_dir / "train.csv", format_csv(run_result.train));
      write_file(run_dir / "test.csv", format_csv(run_result.test));
      write_file(run_dir / "summary.json",
                 report_json({run_result.summary}, {}));
      result.summaries.push_back(run_result.summary);
    } catch (const std::exception& e) {
      result.failures.push_back({run_seed, e.what()});
    }
  }

  result.report_text = report(result.summaries, result.failures);
  write_file(out_dir / "report.txt", result.report_text);
  write_file(out_dir / "report.json",
             report_json(result.summaries, result.failures));
  return result;
}

}  // namespace feastap
