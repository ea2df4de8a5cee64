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

#include "feastap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace feastap {

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void row_error(std::size_t line_no, const std::string& what) {
  std::ostringstream msg;
  msg << "csv: line " << line_no << ": " << what;
  throw std::invalid_argument(msg.str());
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvSchema& schema) {
  Dataset d;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_features = schema.expected_features;
  bool skip_header = schema.has_header;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = strip(line);
    if (row.empty()) continue;
    if (skip_header) {
      skip_header = false;
      continue;
    }

    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row_in(row);
    while (std::getline(row_in, cell, ',')) cells.push_back(strip(cell));
    if (cells.size() < 2) row_error(line_no, "need at least one feature and a label");

    if (n_features == 0) n_features = cells.size() - 1;
    if (cells.size() != n_features + 1)
      row_error(line_no, "expected " + std::to_string(n_features) +
                             " features, got " + std::to_string(cells.size() - 1));

    Pattern p;
    p.features.reserve(n_features);
    for (std::size_t i = 0; i < n_features; ++i) {
      double v = 0.0;
      const char* begin = cells[i].data();
      const char* end = begin + cells[i].size();
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end || !std::isfinite(v))
        row_error(line_no, "non-numeric feature '" + cells[i] + "'");
      p.features.push_back(v);
    }

    const std::string& label = cells.back();
    if (label.empty()) row_error(line_no, "empty class label");
    auto it = std::find(d.class_names.begin(), d.class_names.end(), label);
    if (it == d.class_names.end()) {
      if (schema.expected_classes != 0 &&
          d.class_names.size() >= schema.expected_classes)
        row_error(line_no, "unexpected class label '" + label + "'");
      d.class_names.push_back(label);
      p.label = d.class_names.size() - 1;
    } else {
      p.label = static_cast<std::size_t>(it - d.class_names.begin());
    }
    d.patterns.push_back(std::move(p));
  }

  if (d.patterns.empty()) throw std::invalid_argument("csv: no data rows");

  d.feature_ranges.assign(n_features, {0.0, 0.0});
  for (std::size_t f = 0; f < n_features; ++f) {
    double lo = d.patterns.front().features[f];
    double hi = lo;
    for (const Pattern& p : d.patterns) {
      lo = std::min(lo, p.features[f]);
      hi = std::max(hi, p.features[f]);
    }
    if (!(lo < hi))
      throw std::invalid_argument("csv: feature " + std::to_string(f) +
                                  " is constant; cannot derive a range");
    d.feature_ranges[f] = {lo, hi};
  }
  return d;
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), schema);
}

Split split(const Dataset& d, double train_fraction, Rng& rng, bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("split: fraction must be in (0, 1)");

  Split out;
  out.train.feature_ranges = d.feature_ranges;
  out.train.class_names = d.class_names;
  out.test.feature_ranges = d.feature_ranges;
  out.test.class_names = d.class_names;

  auto assign = [&](std::vector<std::size_t>& indices) {
    // Fisher-Yates, then the first `take` go to train.
    for (std::size_t i = indices.size(); i > 1; --i)
      std::swap(indices[i - 1], indices[rng.below(i)]);
    std::size_t take = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(indices.size())));
    take = std::clamp<std::size_t>(take, 1, indices.size() - 1);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      (i < take ? out.train : out.test).patterns.push_back(d.patterns[indices[i]]);
    }
  };

  if (stratified) {
    for (std::size_t c = 0; c < d.class_count(); ++c) {
      std::vector<std::size_t> indices;
      for (std::size_t i = 0; i < d.patterns.size(); ++i)
        if (d.patterns[i].label == c) indices.push_back(i);
      if (indices.size() < 2)
        throw std::invalid_argument("split: class " + d.class_names[c] +
                                    " has fewer than 2 patterns");
      assign(indices);
    }
  } else {
    if (d.patterns.size() < 2)
      throw std::invalid_argument("split: need at least 2 patterns");
    std::vector<std::size_t> indices(d.patterns.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    assign(indices);
  }
  return out;
}

}  // namespace feastap
