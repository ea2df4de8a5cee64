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

#include "feastap/genome.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace feastap {

namespace {

double& gene_slot(const GeneDescriptor& gene, Network& net) {
  NeuronSpec& neuron = net.neurons.at(gene.neuron);
  switch (gene.kind) {
    case GeneKind::threshold:
      return neuron.threshold;
    case GeneKind::weight:
      return neuron.synapses.at(gene.synapse).weight;
    case GeneKind::latency:
      return neuron.synapses.at(gene.synapse).latency;
  }
  throw std::logic_error("gene_slot: bad gene kind");
}

void check_shape(const Chromosome& c, const GenomeLayout& layout) {
  if (c.value_bits.size() != layout.value_bit_count())
    throw std::invalid_argument("chromosome: value bit count does not match layout");
  if (c.mask.size() != layout.mask_length)
    throw std::invalid_argument("chromosome: mask length does not match layout");
}

}  // namespace

double decode_gene(const GeneDescriptor& gene, const BitString& bits,
                   std::size_t offset) {
  std::uint32_t gray = 0;
  for (unsigned b = 0; b < gene.width; ++b)
    gray = (gray << 1) | (bits[offset + b] ? 1u : 0u);
  const std::uint32_t n = gray_decode(gray);
  const double span = static_cast<double>((1u << gene.width) - 1u);
  return gene.min_value +
         (gene.max_value - gene.min_value) * static_cast<double>(n) / span;
}

Network decode_genome(const Chromosome& c, const GenomeLayout& layout,
                      const Network& skeleton) {
  check_shape(c, layout);
  Network net = skeleton;
  std::size_t offset = 0;
  for (const GeneDescriptor& gene : layout.genes) {
    gene_slot(gene, net) = decode_gene(gene, c.value_bits, offset);
    offset += gene.width;
  }
  return net;
}

Chromosome random_chromosome(const GenomeLayout& layout, Rng& rng) {
  return random_chromosome(layout, rng, /*random_mask=*/false);
}

Chromosome random_chromosome(const GenomeLayout& layout, Rng& rng,
                             bool random_mask) {
  Chromosome c;
  c.value_bits.resize(layout.value_bit_count());
  for (auto& bit : c.value_bits) bit = rng.next_bit() ? 1 : 0;
  c.mask.assign(layout.mask_length, 1);
  if (random_mask)
    for (auto& bit : c.mask) bit = rng.next_bit() ? 1 : 0;
  return c;
}

std::string serialize_chromosome(const Chromosome& c, const GenomeLayout& layout) {
  check_shape(c, layout);
  std::string out;
  char line[128];
  std::size_t offset = 0;
  for (const GeneDescriptor& gene : layout.genes) {
    const double value = decode_gene(gene, c.value_bits, offset);
    offset += gene.width;
    std::snprintf(line, sizeof line, "%s=%.17g\n", gene.name.c_str(), value);
    out += line;
  }
  out += "mask=";
  for (auto bit : c.mask) out += bit ? '1' : '0';
  out += '\n';
  return out;
}

DecodedGenome parse_chromosome_text(const std::string& text,
                                    const GenomeLayout& layout) {
  std::map<std::string, double> by_name;
  FeatureMask mask;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("chromosome file: missing '=' in: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "mask") {
      mask.clear();
      for (char ch : value) {
        if (ch == '0' || ch == '1')
          mask.push_back(ch == '1' ? 1 : 0);
        else if (!std::isspace(static_cast<unsigned char>(ch)))
          throw std::invalid_argument("chromosome file: bad mask bit");
      }
    } else {
      double parsed = 0.0;
      const char* begin = value.data();
      const char* end = begin + value.size();
      const auto [ptr, ec] = std::from_chars(begin, end, parsed);
      if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("chromosome file: bad number for " + key);
      by_name[key] = parsed;
    }
  }
  DecodedGenome d;
  d.values.reserve(layout.genes.size());
  for (const GeneDescriptor& gene : layout.genes) {
    const auto it = by_name.find(gene.name);
    if (it == by_name.end())
      throw std::invalid_argument("chromosome file: missing gene " + gene.name);
    d.values.push_back(it->second);
  }
  if (mask.size() != layout.mask_length)
    throw std::invalid_argument("chromosome file: mask length mismatch");
  d.mask = mask;
  return d;
}

Network apply_decoded_values(const DecodedGenome& d, const GenomeLayout& layout,
                             const Network& skeleton) {
  if (d.values.size() != layout.genes.size())
    throw std::invalid_argument("apply_decoded_values: value count mismatch");
  Network net = skeleton;
  for (std::size_t i = 0; i < layout.genes.size(); ++i)
    gene_slot(layout.genes[i], net) = d.values[i];
  return net;
}

Network iris_skeleton() {
  constexpr std::size_t kInputs = 4;
  constexpr std::size_t kOutputs = 3;
  const WaveformParams wave = make_unit_peak_waveform(5.0, 15.0);

  Network net;
  net.input_channels = kInputs;
  net.neurons.resize(kInputs + kOutputs);

  for (std::size_t i = 0; i < kInputs; ++i) {
    NeuronSpec& n = net.neurons[i];
    n.synapses.push_back({SynapseSource::input(i), 0.0, 0.0, wave});
    for (std::size_t j = 0; j < kInputs; ++j) {
      if (j == i) continue;
      n.synapses.push_back({SynapseSource::from_neuron(j), 0.0, 0.0, wave});
    }
  }
  for (std::size_t o = 0; o < kOutputs; ++o) {
    NeuronSpec& n = net.neurons[kInputs + o];
    for (std::size_t j = 0; j < kInputs; ++j)
      n.synapses.push_back({SynapseSource::from_neuron(j), 0.0, 0.0, wave});
    net.output_neurons.push_back(kInputs + o);
  }
  return net;
}

GenomeLayout iris_layout(unsigned gene_width) {
  const Network skeleton = iris_skeleton();
  GenomeLayout layout;
  layout.mask_length = skeleton.input_channels;
  char name[64];
  for (std::size_t n = 0; n < skeleton.neurons.size(); ++n) {
    std::snprintf(name, sizeof name, "n%zu.threshold", n);
    layout.genes.push_back({name, GeneKind::threshold, n, 0, gene_width, 0.0, 1.0});
    for (std::size_t s = 0; s < skeleton.neurons[n].synapses.size(); ++s) {
      std::snprintf(name, sizeof name, "n%zu.s%zu.weight", n, s);
      layout.genes.push_back({name, GeneKind::weight, n, s, gene_width, -1.0, 1.0});
      std::snprintf(name, sizeof name, "n%zu.s%zu.latency", n, s);
      layout.genes.push_back({name, GeneKind::latency, n, s, gene_width, 0.0, 40.0});
    }
  }
  return layout;
}

}  // namespace feastap
