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

#include "hardattn/circuit.hpp"

#include <algorithm>

#include "hardattn/errors.hpp"

namespace hardattn::circuit {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Const0: return "CONST0";
    case GateKind::Const1: return "CONST1";
    case GateKind::Not: return "NOT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
  }
  return "?";
}

std::string to_string(Ref ref) {
  return (ref.is_input() ? "x" : "g") + std::to_string(ref.index + 1);
}

namespace {

void check_ref(Ref ref, std::size_t num_inputs, std::size_t bound, const std::string& where) {
  if (ref.is_input()) {
    if (ref.index >= num_inputs) throw InputError(where + ": input " + to_string(ref) + " out of range");
  } else if (ref.index >= bound) {
    throw InputError(where + ": reference " + to_string(ref) + " is not an earlier gate");
  }
}

}  // namespace

Circuit::Circuit(std::string name, std::size_t num_inputs, std::vector<Gate> gates, std::vector<Ref> outputs)
    : name_(std::move(name)), num_inputs_(num_inputs), gates_(std::move(gates)), outputs_(std::move(outputs)) {
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    const std::string where = "g" + std::to_string(g + 1);
    switch (gate.kind) {
      case GateKind::Const0:
      case GateKind::Const1:
        if (!gate.inputs.empty()) throw InputError(where + ": constant gate with inputs");
        break;
      case GateKind::Not:
        if (gate.inputs.size() != 1) throw InputError(where + ": NOT needs exactly one input");
        break;
      case GateKind::And:
      case GateKind::Or:
        if (gate.inputs.empty()) throw InputError(where + ": AND/OR need at least one input");
        break;
    }
    for (Ref r : gate.inputs) check_ref(r, num_inputs_, g, where);
  }
  if (outputs_.empty()) throw InputError("circuit has no outputs");
  for (Ref r : outputs_) check_ref(r, num_inputs_, gates_.size(), "OUTPUTS");
}

std::vector<std::uint8_t> Circuit::evaluate_gates(std::span<const std::uint8_t> bits) const {
  if (bits.size() != num_inputs_) {
    throw InputError("expected " + std::to_string(num_inputs_) + " input bits, got " + std::to_string(bits.size()));
  }
  std::vector<std::uint8_t> values(gates_.size(), 0);
  auto read = [&](Ref r) -> std::uint8_t { return r.is_input() ? bits[r.index] : values[r.index]; };
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    std::uint8_t v = 0;
    switch (gate.kind) {
      case GateKind::Const0: v = 0; break;
      case GateKind::Const1: v = 1; break;
      case GateKind::Not: v = read(gate.inputs[0]) ^ 1U; break;
      case GateKind::And:
        v = 1;
        for (Ref r : gate.inputs) {
          if (!read(r)) {
            v = 0;
            break;
          }
        }
        break;
      case GateKind::Or:
        for (Ref r : gate.inputs) {
          if (read(r)) {
            v = 1;
            break;
          }
        }
        break;
    }
    values[g] = v;
  }
  return values;
}

std::uint8_t Circuit::probe(Ref ref, std::span<const std::uint8_t> bits, std::span<const std::uint8_t> gate_values) {
  return ref.is_input() ? bits[ref.index] : gate_values[ref.index];
}

std::vector<std::uint8_t> Circuit::evaluate(std::span<const std::uint8_t> bits) const {
  auto values = evaluate_gates(bits);
  std::vector<std::uint8_t> out;
  out.reserve(outputs_.size());
  for (Ref r : outputs_) out.push_back(probe(r, bits, values));
  return out;
}

std::string Circuit::evaluate(std::string_view bits) const {
  auto parsed = parse_bits(bits);
  return format_bits(evaluate(std::span<const std::uint8_t>(parsed)));
}

std::vector<std::size_t> gate_depths(const Circuit& c) {
  std::vector<std::size_t> depth(c.gates().size(), 0);
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    if (gate.inputs.empty()) continue;
    std::size_t best = 0;
    for (Ref r : gate.inputs) best = std::max(best, r.is_input() ? std::size_t{0} : depth[r.index]);
    depth[g] = best + 1;
  }
  return depth;
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  for (const Gate& gate : c.gates()) {
    m.size += gate.inputs.size();
    ++m.gate_counts[static_cast<std::size_t>(gate.kind)];
  }
  auto depth = gate_depths(c);
  for (Ref r : c.outputs()) {
    if (!r.is_input()) m.depth = std::max(m.depth, depth[r.index]);
  }
  return m;
}

Ref CircuitBuilder::input(std::size_t i) const {
  if (i >= num_inputs_) throw InputError("builder input index out of range");
  return Ref::input(i);
}

Ref CircuitBuilder::constant(bool value) {
  auto& slot = constants_[value ? 1 : 0];
  if (slot < 0) {
    slot = static_cast<std::int64_t>(gates_.size());
    gates_.push_back({value ? GateKind::Const1 : GateKind::Const0, {}});
    depths_.push_back(0);
  }
  return Ref::gate(static_cast<std::size_t>(slot));
}

Ref CircuitBuilder::add(GateKind kind, std::vector<Ref> inputs) {
  wires_ += inputs.size();
  std::size_t d = 0;
  for (Ref r : inputs) d = std::max(d, depth(r) + 1);
  depths_.push_back(static_cast<std::uint32_t>(d));
  gates_.push_back({kind, std::move(inputs)});
  return Ref::gate(gates_.size() - 1);
}

std::vector<Ref> CircuitBuilder::append(const Circuit& sub, std::span<const Ref> bindings) {
  if (bindings.size() != sub.num_inputs()) throw InputError("append: binding count does not match sub-circuit inputs");
  std::vector<Ref> local(sub.gates().size());
  auto map = [&](Ref r) { return r.is_input() ? bindings[r.index] : local[r.index]; };
  for (std::size_t g = 0; g < sub.gates().size(); ++g) {
    const Gate& gate = sub.gates()[g];
    switch (gate.kind) {
      case GateKind::Const0: local[g] = constant(false); break;
      case GateKind::Const1: local[g] = constant(true); break;
      default: {
        std::vector<Ref> ins;
        ins.reserve(gate.inputs.size());
        for (Ref r : gate.inputs) ins.push_back(map(r));
        local[g] = add(gate.kind, std::move(ins));
      }
    }
  }
  std::vector<Ref> outs;
  outs.reserve(sub.outputs().size());
  for (Ref r : sub.outputs()) outs.push_back(map(r));
  return outs;
}

std::size_t CircuitBuilder::depth(Ref r) const {
  if (r.is_input()) return 0;
  if (r.index >= depths_.size()) throw InputError("builder reference " + to_string(r) + " is not defined yet");
  return depths_[r.index];
}

Circuit CircuitBuilder::build(std::string name, std::vector<Ref> outputs) && {
  return Circuit(std::move(name), num_inputs_, std::move(gates_), std::move(outputs));
}

std::vector<std::uint8_t> parse_bits(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError(std::string("bit strings may only contain 0 and 1, got '") + c + "'");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string format_bits(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace hardattn::circuit
