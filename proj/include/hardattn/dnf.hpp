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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hardattn/circuit.hpp"

namespace hardattn::circuit {

/// A (possibly partial) multi-output truth table. Patterns are '0'/'1'
/// strings; unlisted input patterns map to all-zero outputs.
struct TruthTableSpec {
  struct Row {
    std::string input;
    std::string output;
  };

  std::size_t in_width = 0;
  std::size_t out_width = 0;
  std::vector<Row> rows;

  /// Throws InputError on width mismatches, non-bit characters or
  /// repeated input patterns.
  void validate() const;

  bool complete() const;
};

/// Minterm DNF: shared NOT gates per terminal, one AND per row with a 1
/// anywhere in its output, one OR per output over that output's minterms.
/// Outputs without minterms are wired to CONST0. Depth is at most 3.
Circuit synth_dnf(const TruthTableSpec& spec, std::string name = "dnf");

/// m(n 2^n + 2^n + n), the wire bound for a complete table.
std::size_t dnf_size_bound(std::size_t in_width, std::size_t out_width);

}  // namespace hardattn::circuit
