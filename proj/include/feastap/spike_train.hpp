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

#include <vector>

namespace feastap {

// Ordered spike times (ms) on one channel. May be empty.
struct SpikeTrain {
  std::vector<double> times;

  bool empty() const { return times.empty(); }
  std::size_t size() const { return times.size(); }

  // Strictly increasing and contained in [0, horizon].
  bool well_formed(double horizon) const {
    double prev = -1.0;
    for (double t : times) {
      if (!(t > prev) || t < 0.0 || t > horizon) return false;
      prev = t;
    }
    return true;
  }

  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;
};

}  // namespace feastap
