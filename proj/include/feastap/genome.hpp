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

#include "feastap/codec.hpp"
#include "feastap/network.hpp"
#include "feastap/rng.hpp"

namespace feastap {

// Reflected binary Gray code; adjacent integers differ in exactly one bit,
// so a single-bit mutation near the current value moves one quantization step.
inline std::uint32_t gray_encode(std::uint32_t n) { return n ^ (n >> 1); }

inline std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t n = g;
  while (g >>= 1) n ^= g;
  return n;
}

// Which network slot a gene writes to.
enum class GeneKind { threshold, weight, latency };

struct GeneDescriptor {
  std::string name;
  GeneKind kind;
  std::size_t neuron;
  std::size_t synapse = 0;  // unused for thresholds
  unsigned width = 12;      // bits
  double min_value = 0.0;
  double max_value = 1.0;
};

// Fixed, totally ordered list of evolvable genes for one network skeleton,
// plus the feature-mask length. Gene bit offsets are cumulative in order.
struct GenomeLayout {
  std::vector<GeneDescriptor> genes;
  std::size_t mask_length = 0;

  std::size_t value_bit_count() const {
    std::size_t total = 0;
    for (const GeneDescriptor& g : genes) total += g.width;
    return total;
  }
};

using BitString = std::vector<std::uint8_t>;  // one 0/1 per element

// Genotype: concatenated Gray-coded genes plus the binary feature mask.
struct Chromosome {
  BitString value_bits;
  FeatureMask mask;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

// Affine dequantization of one gene from its Gray bits.
double decode_gene(const GeneDescriptor& gene, const BitString& bits,
                   std::size_t offset);

// Writes every decoded gene into its slot of a copy of the skeleton. The mask
// is not consumed here; it applies at encode time.
Network decode_genome(const Chromosome& c, const GenomeLayout& layout,
                      const Network& skeleton);

// Uniform random value bits; mask starts all-ones (every feature active).
Chromosome random_chromosome(const GenomeLayout& layout, Rng& rng);

Chromosome random_chromosome(const GenomeLayout& layout, Rng& rng,
                             bool random_mask);

// Text export: one "gene_name=decoded_value" line per gene (full precision)
// followed by "mask=<bitstring>".
std::string serialize_chromosome(const Chromosome& c, const GenomeLayout& layout);

// Decoded parameter values by gene name plus the mask, as read back from the
// text format above.
struct DecodedGenome {
  std::vector<double> values;  // in layout gene order
  FeatureMask mask;
};

DecodedGenome parse_chromosome_text(const std::string& text,
                                    const GenomeLayout& layout);

// Network with the given decoded values written into their slots.
Network apply_decoded_values(const DecodedGenome& d, const GenomeLayout& layout,
                             const Network& skeleton);

// Seven-neuron topology: four input neurons (one external synapse each,
// plus synapses from the other three input neurons) feeding three output
// neurons that read all four. No hidden layer; outputs do not project back.
// Waveforms fixed at t1 = 5 ms, t2 = 15 ms, unit peak; firing period bounds
// fixed at [1, 10] ms.
Network iris_skeleton();

// Evolvable-gene layout for iris_skeleton(): 7 thresholds plus a weight and
// a latency per synapse (63 genes), mask over 4 features. Bounds: weight
// [-1, 1], latency [0, 40] ms, threshold [0, 1].
GenomeLayout iris_layout(unsigned gene_width = 12);

}  // namespace feastap
