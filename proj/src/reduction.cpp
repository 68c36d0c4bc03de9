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

#include "hardattn/reduction.hpp"

#include <string>
#include <vector>

#include "hardattn/dnf.hpp"
#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"

namespace hardattn::compiler {

circuit::Circuit dyck1_circuit(std::size_t m) {
  if (m == 0) return circuit::Circuit("dyck1-0", 0, {circuit::Gate{circuit::GateKind::Const1, {}}},
                                      {circuit::Ref::gate(0)});
  if (m > 24) throw ResourceError("dyck1_circuit: 2^" + std::to_string(m) + " rows is too many");
  const auto lang = langs::LangSpec::dyck(1);
  circuit::TruthTableSpec spec;
  spec.in_width = m;
  spec.out_width = 1;
  std::string bits(m, '0');
  std::string word(m, '[');
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
    for (std::size_t t = 0; t < m; ++t) {
      const bool one = (v >> (m - 1 - t)) & 1U;
      bits[t] = one ? '1' : '0';
      word[t] = one ? ']' : '[';
    }
    if (langs::member(lang, word)) spec.rows.push_back({bits, "1"});
  }
  return circuit::synth_dnf(spec, "dyck1-" + std::to_string(m));
}

circuit::Circuit equality_to_dyck_reduction(const circuit::Circuit& dyck) {
  if (dyck.num_inputs() % 3 != 0) {
    throw InputError("reduction needs a circuit with 3n inputs, got " + std::to_string(dyck.num_inputs()));
  }
  if (dyck.outputs().size() != 1) throw InputError("reduction needs a single-output circuit");
  const std::size_t n = dyck.num_inputs() / 3;
  circuit::CircuitBuilder b(n);
  std::vector<circuit::Ref> bindings;
  for (std::size_t t = 0; t < n; ++t) bindings.push_back(b.constant(false));
  for (std::size_t t = 0; t < n; ++t) bindings.push_back(b.input(t));
  for (std::size_t t = 0; t < n; ++t) bindings.push_back(b.constant(true));
  auto out = b.append(dyck, bindings);
  return std::move(b).build("equality-" + std::to_string(n), out);
}

}  // namespace hardattn::compiler
