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

#include "hardattn/compiler.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hardattn/dnf.hpp"
#include "hardattn/errors.hpp"

namespace hardattn::compiler {
namespace {

using circuit::CircuitBuilder;
using circuit::GateKind;
using circuit::Ref;
using circuit::TruthTableSpec;

enum Stage : std::size_t { kInput, kAttention, kComparator, kArgmax, kLeftmost, kSelection, kOutput, kStageCount };

constexpr const char* kStageNames[kStageCount] = {"input",   "attention", "comparator", "argmax",
                                                   "leftmost", "selection", "output"};

class StageMeter {
 public:
  StageMeter(CircuitBuilder& builder, std::size_t max_wires) : builder_(builder), max_wires_(max_wires) {
    for (std::size_t s = 0; s < kStageCount; ++s) stats_[s].name = kStageNames[s];
  }

  void begin(Stage stage) {
    stage_ = stage;
    gates_ = builder_.gate_count();
    wires_ = builder_.wire_count();
  }

  void end() {
    stats_[stage_].gates += builder_.gate_count() - gates_;
    stats_[stage_].wires += builder_.wire_count() - wires_;
    check();
  }

  void check() const {
    if (builder_.wire_count() > max_wires_) {
      throw ResourceError("circuit exceeds the wire budget of " + std::to_string(max_wires_) + " during the " +
                          kStageNames[stage_] + " stage");
    }
  }

  std::vector<StageStats> stats() const { return {stats_, stats_ + kStageCount}; }

 private:
  CircuitBuilder& builder_;
  std::size_t max_wires_;
  StageStats stats_[kStageCount];
  Stage stage_ = kInput;
  std::size_t gates_ = 0;
  std::size_t wires_ = 0;
};

/// Delays wires to a requested level with chains of fan-in-1 OR gates.
/// Chains are shared per source wire.
class Leveler {
 public:
  Leveler(CircuitBuilder& builder, bool enabled) : builder_(builder), enabled_(enabled) {}

  Ref at(Ref r, std::size_t level) {
    if (!enabled_) return r;
    const std::size_t d = builder_.depth(r);
    if (d >= level) return r;
    auto& chain = chains_[r];
    if (chain.empty()) chain.push_back(r);
    while (d + chain.size() - 1 < level) chain.push_back(builder_.add(GateKind::Or, {chain.back()}));
    return chain[level - d];
  }

  std::vector<Ref> at(std::span<const Ref> refs, std::size_t level) {
    std::vector<Ref> out;
    out.reserve(refs.size());
    for (Ref r : refs) out.push_back(at(r, level));
    return out;
  }

 private:
  CircuitBuilder& builder_;
  bool enabled_;
  std::map<Ref, std::vector<Ref>> chains_;
};

std::size_t block_depth(const circuit::Circuit& c) { return circuit::metrics(c).depth; }

/// g = 1 iff a >= b as unsigned big-endian numbers.
Ref structured_comparator(CircuitBuilder& b, std::span<const Ref> a, std::span<const Ref> c) {
  const std::size_t w = a.size();
  std::vector<Ref> eq(w);
  std::vector<Ref> not_a(w);
  std::vector<Ref> not_c(w);
  for (std::size_t t = 0; t < w; ++t) {
    not_a[t] = b.add_not(a[t]);
    not_c[t] = b.add_not(c[t]);
  }
  for (std::size_t t = 0; t < w; ++t) {
    Ref both = b.add(GateKind::And, {a[t], c[t]});
    Ref neither = b.add(GateKind::And, {not_a[t], not_c[t]});
    eq[t] = b.add(GateKind::Or, {both, neither});
  }
  std::vector<Ref> terms;
  for (std::size_t t = 0; t < w; ++t) {
    std::vector<Ref> inputs{a[t], not_c[t]};
    inputs.insert(inputs.end(), eq.begin(), eq.begin() + static_cast<std::ptrdiff_t>(t));
    terms.push_back(b.add(GateKind::And, std::move(inputs)));
  }
  terms.push_back(b.add(GateKind::And, eq));
  return b.add(GateKind::Or, std::move(terms));
}

}  // namespace

std::size_t depth_budget(std::size_t layers, bool structured_comparators) {
  return (structured_comparators ? 13 : 11) * layers + 3;
}

CompileResult compile(const nf::NormalFormModel& model, const nf::SymbolEncoding& encoding,
                      const CompileOptions& options) {
  const std::size_t n = model.n;
  const std::size_t K = model.layers;
  const std::size_t H = model.heads;
  const std::size_t s = encoding.width();
  const auto layout = model.layout();
  if (layout.symbol_width != s) throw InputError("symbol encoding does not match the model alphabet");

  CompileReport report;
  std::vector<SelectorProbe> selectors;
  report.model = model.name;
  report.n = n;
  report.input_terminals = s * (n - 1);
  for (std::size_t k = 0; k <= K; ++k) {
    report.table_sizes.push_back(model.tables[k].size());
    report.value_widths.push_back(layout.value_width(k));
    if (k >= 1) report.score_widths.push_back(layout.score_width(k));
  }

  CircuitBuilder b(report.input_terminals);
  StageMeter meter(b, options.max_wires);
  Leveler level(b, options.leveled);
  const std::size_t comparator_depth = options.structured_comparators ? 5 : 3;
  const std::size_t layer_depth = comparator_depth + 8;

  // Cached encodings of every entry at the current layer.
  auto encode_layer = [&](std::size_t layer) {
    std::vector<std::string> codes(model.tables[layer].size());
    for (nf::EntryId e = 0; e < codes.size(); ++e) codes[e] = nf::encode_value(model, encoding, layer, e);
    return codes;
  };

  // Layer-0 wires: symbol bits, then bin(i, n) and bin(n, n) as constants.
  meter.begin(kInput);
  std::vector<std::vector<Ref>> wires(n);
  const std::string end_code = encoding.code(guhat::kEndMarker);
  const std::string length_code = nf::bin(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    auto& w = wires[i - 1];
    for (std::size_t t = 0; t < s; ++t) {
      w.push_back(i < n ? b.input((i - 1) * s + t) : b.constant(end_code[t] == '1'));
    }
    for (char c : nf::bin(i, n)) w.push_back(b.constant(c == '1'));
    for (char c : length_code) w.push_back(b.constant(c == '1'));
  }
  meter.end();

  std::vector<std::string> codes = encode_layer(0);

  for (std::size_t k = 1; k <= K; ++k) {
    const auto& prev = model.tables[k - 1];
    const std::size_t score_width = layout.score_width(k);
    // Nominal levels: layer input, scores, comparisons, argmax.
    const std::size_t base = layer_depth * (k - 1);
    const std::size_t scored = base + 3;
    const std::size_t compared = scored + comparator_depth;
    const std::size_t maximal_level = compared + 1;
    std::vector<std::vector<Ref>> next = wires;

    for (std::size_t h = 1; h <= H; ++h) {
      const nf::RankTable& ranks = model.attention[k - 1][h - 1];

      // A blocks: rank of the score between the values at i and j.
      meter.begin(kAttention);
      std::vector<std::vector<std::vector<Ref>>> score(n, std::vector<std::vector<Ref>>(n));
      std::vector<std::vector<std::set<nf::Rank>>> rank_sets(n, std::vector<std::set<nf::Rank>>(n));
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
          TruthTableSpec spec;
          spec.in_width = 2 * layout.value_width(k - 1);
          spec.out_width = score_width;
          for (nf::EntryId p : prev.at_position[i - 1]) {
            for (nf::EntryId q : prev.at_position[j - 1]) {
              const nf::Rank r = ranks.at(p, q);
              rank_sets[i - 1][j - 1].insert(r);
              spec.rows.push_back({codes[p] + codes[q], nf::encode_score(layout, k, r)});
            }
          }
          auto block = circuit::synth_dnf(spec, "attention");
          report.max_attention_block_depth = std::max(report.max_attention_block_depth, block_depth(block));
          std::vector<Ref> bindings = level.at(wires[i - 1], base);
          const auto keys = level.at(wires[j - 1], base);
          bindings.insert(bindings.end(), keys.begin(), keys.end());
          score[i - 1][j - 1] = level.at(b.append(block, bindings), scored);
          meter.check();
        }
      }
      meter.end();

      // D blocks and the argmax conjunctions m_{i,j}.
      std::vector<std::vector<Ref>> maximal(n, std::vector<Ref>(n));
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
          std::vector<Ref> ge;
          meter.begin(kComparator);
          for (std::size_t j2 = 1; j2 <= n; ++j2) {
            if (j2 == j) {
              ge.push_back(level.at(b.constant(true), compared));
              continue;
            }
            const auto& sa = score[i - 1][j - 1];
            const auto& sb = score[i - 1][j2 - 1];
            if (options.structured_comparators) {
              ge.push_back(level.at(structured_comparator(b, sa, sb), compared));
              continue;
            }
            TruthTableSpec spec;
            spec.in_width = 2 * score_width;
            spec.out_width = 1;
            for (nf::Rank r1 : rank_sets[i - 1][j - 1]) {
              for (nf::Rank r2 : rank_sets[i - 1][j2 - 1]) {
                spec.rows.push_back(
                    {nf::encode_score(layout, k, r1) + nf::encode_score(layout, k, r2), r1 >= r2 ? "1" : "0"});
              }
            }
            auto block = circuit::synth_dnf(spec, "comparator");
            report.max_comparator_block_depth = std::max(report.max_comparator_block_depth, block_depth(block));
            std::vector<Ref> bindings = sa;
            bindings.insert(bindings.end(), sb.begin(), sb.end());
            ge.push_back(level.at(b.append(block, bindings).front(), compared));
          }
          meter.end();
          meter.begin(kArgmax);
          maximal[i - 1][j - 1] = b.add(GateKind::And, std::move(ge));
          meter.end();
        }
      }

      // Leftmost maximal key: z_j = m_j AND NOT m_j' for all j' < j.
      meter.begin(kLeftmost);
      std::vector<std::vector<Ref>> select(n, std::vector<Ref>(n));
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Ref> negated;
        for (std::size_t j = 1; j <= n; ++j) {
          std::vector<Ref> inputs{level.at(maximal[i - 1][j - 1], maximal_level + 1)};
          inputs.insert(inputs.end(), negated.begin(), negated.end());
          select[i - 1][j - 1] = b.add(GateKind::And, std::move(inputs));
          if (j < n) negated.push_back(b.add_not(maximal[i - 1][j - 1]));
        }
        selectors.push_back({k, h, i, select[i - 1]});
      }
      meter.end();

      // Selection: u = OR_r (w_r AND z_r), bitwise.
      meter.begin(kSelection);
      const std::size_t width = layout.value_width(k - 1);
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t bit = 0; bit < width; ++bit) {
          std::vector<Ref> terms;
          terms.reserve(n);
          for (std::size_t r = 1; r <= n; ++r) {
            terms.push_back(
                b.add(GateKind::And, {level.at(wires[r - 1][bit], maximal_level + 2), select[i - 1][r - 1]}));
          }
          next[i - 1].push_back(b.add(GateKind::Or, std::move(terms)));
        }
        meter.check();
      }
      meter.end();
    }

    wires = std::move(next);
    codes = encode_layer(k);
  }

  // Output block over the layer-K value at position n.
  meter.begin(kOutput);
  TruthTableSpec spec;
  spec.in_width = layout.value_width(K);
  spec.out_width = 1;
  for (nf::EntryId e : model.tables[K].at_position[n - 1]) {
    spec.rows.push_back({codes[e], model.output_bits[e] ? "1" : "0"});
  }
  auto block = circuit::synth_dnf(spec, "output");
  report.output_block_depth = block_depth(block);
  Ref out = b.append(block, level.at(wires[n - 1], layer_depth * K)).front();
  out = level.at(out, layer_depth * K + 3);
  meter.end();

  report.stages = meter.stats();
  CompileResult result{std::move(b).build(model.name + "-n" + std::to_string(n), {out}), {}, std::move(selectors)};
  const auto m = circuit::metrics(result.circuit);
  report.size = m.size;
  report.depth = m.depth;
  if (report.depth > depth_budget(K, options.structured_comparators)) {
    throw std::logic_error("compiled depth " + std::to_string(report.depth) + " exceeds the budget " +
                           std::to_string(depth_budget(K, options.structured_comparators)));
  }
  result.report = std::move(report);
  return result;
}

std::string format_report(const CompileReport& report) {
  std::ostringstream out;
  for (const auto& stage : report.stages) {
    out << "STAGE " << stage.name << " GATES " << stage.gates << " WIRES " << stage.wires << '\n';
  }
  out << "SIZE " << report.size << " DEPTH " << report.depth << '\n';
  return out.str();
}

}  // namespace hardattn::compiler
