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

#include "hardattn/netlist.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "hardattn/errors.hpp"

namespace hardattn::circuit {

std::string write_netlist(const Circuit& c) {
  std::string out;
  out.reserve(c.gates().size() * 24);
  out += "CIRCUIT " + c.name() + " INPUTS " + std::to_string(c.num_inputs()) + " OUTPUTS " +
         std::to_string(c.outputs().size()) + "\n";
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    out += 'g';
    out += std::to_string(g + 1);
    out += ' ';
    out += to_string(gate.kind);
    for (Ref r : gate.inputs) {
      out += ' ';
      out += to_string(r);
    }
    out += '\n';
  }
  out += "OUTPUTS";
  for (Ref r : c.outputs()) {
    out += ' ';
    out += to_string(r);
  }
  out += '\n';
  return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::optional<std::size_t> parse_number(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

Ref parse_ref(std::string_view tok, std::size_t line) {
  if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'g')) {
    throw NetlistError(line, std::string(tok), "expected a reference x<j> or g<j>");
  }
  auto idx = parse_number(tok.substr(1));
  if (!idx || *idx == 0) throw NetlistError(line, std::string(tok), "bad reference index");
  return tok[0] == 'x' ? Ref::input(*idx - 1) : Ref::gate(*idx - 1);
}

std::optional<GateKind> parse_kind(std::string_view tok) {
  if (tok == "CONST0") return GateKind::Const0;
  if (tok == "CONST1") return GateKind::Const1;
  if (tok == "NOT") return GateKind::Not;
  if (tok == "AND") return GateKind::And;
  if (tok == "OR") return GateKind::Or;
  return std::nullopt;
}

}  // namespace

Circuit read_netlist(std::string_view text) {
  std::string name;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  bool have_header = false;
  bool have_outputs = false;
  std::vector<Gate> gates;
  std::vector<Ref> outputs;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens.size() != 6 || tokens[0] != "CIRCUIT" || tokens[2] != "INPUTS" || tokens[4] != "OUTPUTS") {
        throw NetlistError(line_no, std::string(tokens[0]), "expected 'CIRCUIT <name> INPUTS <n> OUTPUTS <m>'");
      }
      auto n = parse_number(tokens[3]);
      auto m = parse_number(tokens[5]);
      if (!n) throw NetlistError(line_no, std::string(tokens[3]), "bad input count");
      if (!m || *m == 0) throw NetlistError(line_no, std::string(tokens[5]), "bad output count");
      name = std::string(tokens[1]);
      num_inputs = *n;
      num_outputs = *m;
      have_header = true;
      continue;
    }
    if (have_outputs) throw NetlistError(line_no, std::string(tokens[0]), "content after OUTPUTS line");

    if (tokens[0] == "OUTPUTS") {
      if (tokens.size() - 1 != num_outputs) {
        throw NetlistError(line_no, std::string(tokens.back()),
                           "expected " + std::to_string(num_outputs) + " output references");
      }
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        Ref r = parse_ref(tokens[t], line_no);
        if (r.is_input() ? r.index >= num_inputs : r.index >= gates.size()) {
          throw NetlistError(line_no, std::string(tokens[t]), "output references an undefined vertex");
        }
        outputs.push_back(r);
      }
      have_outputs = true;
      continue;
    }

    auto label = tokens[0];
    auto idx = label.size() > 1 && label[0] == 'g' ? parse_number(label.substr(1)) : std::nullopt;
    if (!idx) throw NetlistError(line_no, std::string(label), "expected a gate label g<i>");
    if (*idx != gates.size() + 1) {
      throw NetlistError(line_no, std::string(label), "gates must be numbered consecutively from g1");
    }
    if (tokens.size() < 2) throw NetlistError(line_no, std::string(label), "missing gate kind");
    auto kind = parse_kind(tokens[1]);
    if (!kind) throw NetlistError(line_no, std::string(tokens[1]), "unknown gate kind");

    Gate gate{*kind, {}};
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      Ref r = parse_ref(tokens[t], line_no);
      if (r.is_input() && r.index >= num_inputs) {
        throw NetlistError(line_no, std::string(tokens[t]), "input terminal out of range");
      }
      if (!r.is_input() && r.index >= gates.size()) {
        throw NetlistError(line_no, std::string(tokens[t]), "reference to a gate not yet defined");
      }
      gate.inputs.push_back(r);
    }
    std::size_t fanin = gate.inputs.size();
    bool arity_ok = (*kind == GateKind::Const0 || *kind == GateKind::Const1) ? fanin == 0
                    : *kind == GateKind::Not                                 ? fanin == 1
                                                                             : fanin >= 1;
    if (!arity_ok) throw NetlistError(line_no, std::string(tokens[1]), "wrong fan-in for gate kind");
    gates.push_back(std::move(gate));
  }

  if (!have_header) throw NetlistError(line_no, "", "missing CIRCUIT header");
  if (!have_outputs) throw NetlistError(line_no, "", "missing OUTPUTS line");
  return Circuit(std::move(name), num_inputs, std::move(gates), std::move(outputs));
}

}  // namespace hardattn::circuit
