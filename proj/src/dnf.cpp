// Copyright 2026 The hardattn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hardattn/dnf.hpp"

#include <unordered_set>

#include "hardattn/errors.hpp"

namespace hardattn::circuit {

namespace {

void check_bits(const std::string& bits, std::size_t width, const char* what) {
  if (bits.size() != width) {
    throw InputError(std::string(what) + " pattern '" + bits + "' has width " + std::to_string(bits.size()) +
                     ", expected " + std::to_string(width));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError(std::string(what) + " pattern '" + bits + "' is not a bit string");
  }
}

}  // namespace

void TruthTableSpec::validate() const {
  std::unordered_set<std::string> seen;
  seen.reserve(rows.size());
  for (const Row& row : rows) {
    check_bits(row.input, in_width, "input");
    check_bits(row.output, out_width, "output");
    if (!seen.insert(row.input).second) throw InputError("duplicate truth table row '" + row.input + "'");
  }
}

bool TruthTableSpec::complete() const {
  return in_width < 63 && rows.size() == (std::size_t{1} << in_width);
}

Circuit synth_dnf(const TruthTableSpec& spec, std::string name) {
  if (spec.in_width == 0) throw InputError("synth_dnf needs at least one input");
  spec.validate();

  auto has_one = [](const std::string& out) { return out.find('1') != std::string::npos; };

  CircuitBuilder b(spec.in_width);

  std::vector<bool> negated(spec.in_width, false);
  for (const auto& row : spec.rows) {
    if (!has_one(row.output)) continue;
    for (std::size_t t = 0; t < spec.in_width; ++t) {
      if (row.input[t] == '0') negated[t] = true;
    }
  }
  std::vector<Ref> not_gate(spec.in_width);
  for (std::size_t t = 0; t < spec.in_width; ++t) {
    if (negated[t]) not_gate[t] = b.add_not(b.input(t));
  }

  std::vector<std::vector<Ref>> terms(spec.out_width);
  for (const auto& row : spec.rows) {
    if (!has_one(row.output)) continue;
    std::vector<Ref> literals;
    literals.reserve(spec.in_width);
    for (std::size_t t = 0; t < spec.in_width; ++t) {
      literals.push_back(row.input[t] == '1' ? b.input(t) : not_gate[t]);
    }
    Ref minterm = b.add(GateKind::And, std::move(literals));
    for (std::size_t o = 0; o < spec.out_width; ++o) {
      if (row.output[o] == '1') terms[o].push_back(minterm);
    }
  }

  std::vector<Ref> outputs;
  outputs.reserve(spec.out_width);
  for (auto& t : terms) {
    outputs.push_back(t.empty() ? b.constant(false) : b.add(GateKind::Or, std::move(t)));
  }
  return std::move(b).build(std::move(name), std::move(outputs));
}

std::size_t dnf_size_bound(std::size_t in_width, std::size_t out_width) {
  std::size_t rows = std::size_t{1} << in_width;
  return out_width * (in_width * rows + rows + in_width);
}

}  // namespace hardattn::circuit
