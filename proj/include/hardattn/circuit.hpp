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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardattn::circuit {

enum class GateKind : std::uint8_t { Const0, Const1, Not, And, Or };

inline constexpr std::size_t kGateKindCount = 5;

std::string_view to_string(GateKind kind);

/// A wire source: input terminal x_{index+1} or gate g_{index+1}.
struct Ref {
  enum class Kind : std::uint8_t { Input, Gate };

  Kind kind = Kind::Input;
  std::uint32_t index = 0;

  static Ref input(std::size_t i) { return {Kind::Input, static_cast<std::uint32_t>(i)}; }
  static Ref gate(std::size_t i) { return {Kind::Gate, static_cast<std::uint32_t>(i)}; }

  bool is_input() const { return kind == Kind::Input; }

  auto operator<=>(const Ref&) const = default;
};

/// Netlist spelling, 1-based: "x3", "g17".
std::string to_string(Ref ref);

struct Gate {
  GateKind kind = GateKind::Const0;
  std::vector<Ref> inputs;

  bool operator==(const Gate&) const = default;
};

/// Immutable combinational circuit. Gates only reference input terminals or
/// gates with a smaller index, so index order is a topological order.
class Circuit {
 public:
  /// Validates fan-in rules, reference bounds and acyclicity; throws
  /// InputError on violation.
  Circuit(std::string name, std::size_t num_inputs, std::vector<Gate> gates, std::vector<Ref> outputs);

  const std::string& name() const { return name_; }
  std::size_t num_inputs() const { return num_inputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Ref>& outputs() const { return outputs_; }

  /// Evaluates on a string of '0'/'1' characters, x1 leftmost.
  std::string evaluate(std::string_view bits) const;

  /// Evaluates on 0/1 bytes, returning the output bits.
  std::vector<std::uint8_t> evaluate(std::span<const std::uint8_t> bits) const;

  /// Evaluates on 0/1 bytes, returning the value of every gate.
  std::vector<std::uint8_t> evaluate_gates(std::span<const std::uint8_t> bits) const;

  /// Reads the value of `ref` from an input vector and evaluate_gates result.
  static std::uint8_t probe(Ref ref, std::span<const std::uint8_t> bits, std::span<const std::uint8_t> gate_values);

  bool operator==(const Circuit&) const = default;

 private:
  std::string name_;
  std::size_t num_inputs_;
  std::vector<Gate> gates_;
  std::vector<Ref> outputs_;
};

struct Metrics {
  std::size_t size = 0;   // wires = Σ fan-in
  std::size_t depth = 0;  // longest path from a fan-in-0 vertex to an output
  std::array<std::size_t, kGateKindCount> gate_counts{};

  std::size_t count(GateKind kind) const { return gate_counts[static_cast<std::size_t>(kind)]; }
};

Metrics metrics(const Circuit& c);

/// Per-gate depth (fan-in-0 gates are 0, others 1 + max over inputs).
std::vector<std::size_t> gate_depths(const Circuit& c);

/// Incremental construction of a Circuit. Constant gates are shared.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t num_inputs) : num_inputs_(num_inputs) {}

  Ref input(std::size_t i) const;
  Ref constant(bool value);
  Ref add(GateKind kind, std::vector<Ref> inputs);
  Ref add_not(Ref a) { return add(GateKind::Not, {a}); }

  /// Splices `sub` in with its input terminals bound to `bindings`;
  /// returns the refs standing for sub's outputs.
  std::vector<Ref> append(const Circuit& sub, std::span<const Ref> bindings);

  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t gate_count() const { return gates_.size(); }
  std::size_t wire_count() const { return wires_; }
  /// Longest path from a fan-in-0 vertex to `r` in the circuit so far.
  std::size_t depth(Ref r) const;

  Circuit build(std::string name, std::vector<Ref> outputs) &&;

 private:
  std::size_t num_inputs_;
  std::vector<Gate> gates_;
  std::vector<std::uint32_t> depths_;
  std::size_t wires_ = 0;
  std::array<std::int64_t, 2> constants_{-1, -1};
};

/// "0101" -> {0,1,0,1}; throws InputError on other characters.
std::vector<std::uint8_t> parse_bits(std::string_view bits);
std::string format_bits(std::span<const std::uint8_t> bits);

}  // namespace hardattn::circuit
