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

#include <string>
#include <utility>
#include <vector>

#include "feastap/rng.hpp"

namespace feastap {

struct Pattern {
  std::vector<double> features;
  std::size_t label = 0;
};

struct Dataset {
  std::vector<Pattern> patterns;
  std::vector<std::pair<double, double>> feature_ranges;  // over all patterns
  std::vector<std::string> class_names;                   // first-appearance order

  std::size_t class_count() const { return class_names.size(); }
  std::size_t feature_count() const { return feature_ranges.size(); }
};

struct CsvSchema {
  bool has_header = false;
  std::size_t expected_features = 0;  // 0 = infer from first row
  std::size_t expected_classes = 0;   // 0 = open label set
};

// Comma-separated numeric features with a class label token in the last
// column. Labels map to indices in order of first appearance. Feature ranges
// are computed over the full file.
Dataset load_csv(const std::string& path, const CsvSchema& schema = {});

Dataset parse_csv(const std::string& text, const CsvSchema& schema = {});

// Stratified random split: per class, round(fraction * class_size) patterns
// go to train (always leaving at least one pattern on each side). The split
// is exhaustive and disjoint; feature ranges carry over to both sides.
struct Split {
  Dataset train;
  Dataset test;
};

Split split(const Dataset& d, double train_fraction, Rng& rng,
            bool stratified = true);

}  // namespace feastap
