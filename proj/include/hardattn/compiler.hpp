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
#include "hardattn/encoding.hpp"
#include "hardattn/normal_form.hpp"

namespace hardattn::compiler {

struct CompileOptions {
  /// Abort once the circuit under construction has more wires than this.
  std::size_t max_wires = 100'000'000;
  /// Replace the per-pair DNF comparators with a bitwise magnitude
  /// comparator (depth 5 instead of 3, size independent of table contents).
  bool structured_comparators = false;
  /// Route every stage boundary through fan-in-1 OR gates so that each
  /// stage output sits exactly at its nominal level (3 per block, 1 for
  /// argmax, 2 for leftmost, 2 for selection). The circuit depth is then
  /// depth_budget(K) for every n.
  bool leveled = true;
};

struct StageStats {
  std::string name;
  std::size_t gates = 0;
  std::size_t wires = 0;
};

struct CompileReport {
  std::string model;
  std::size_t n = 0;
  std::size_t input_terminals = 0;
  std::size_t size = 0;
  std::size_t depth = 0;
  std::vector<StageStats> stages;  // input, attention, comparator, argmax, leftmost, selection, output
  std::vector<std::size_t> table_sizes;
  std::vector<std::size_t> value_widths;
  std::vector<std::size_t> score_widths;  // index k-1 for layer k
  std::size_t max_attention_block_depth = 0;
  std::size_t max_comparator_block_depth = 0;
  std::size_t output_block_depth = 0;
};

/// z_{i,j,k,h} wires for one (layer, head, query position); exactly one is
/// 1 on any encoded input.
struct SelectorProbe {
  std::size_t layer = 0;
  std::size_t head = 0;
  std::size_t query = 0;
  std::vector<circuit::Ref> selectors;
};

struct CompileResult {
  circuit::Circuit circuit;
  CompileReport report;
  std::vector<SelectorProbe> selectors;
};

/// Lowers a normal-form model at its length n to a circuit over the
/// s·(n-1) symbol bits; the end marker is hard-wired. Throws ResourceError
/// (naming the stage) when max_wires is exceeded.
CompileResult compile(const nf::NormalFormModel& model, const nf::SymbolEncoding& encoding,
                      const CompileOptions& options = {});

/// 11K + 3 with DNF comparators, 13K + 3 with structured comparators.
std::size_t depth_budget(std::size_t layers, bool structured_comparators = false);

/// "STAGE <name> GATES <g> WIRES <w>" lines then "SIZE <s> DEPTH <d>".
std::string format_report(const CompileReport& report);

}  // namespace hardattn::compiler
