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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hardattn/encoding.hpp"
#include "hardattn/guhat.hpp"
#include "hardattn/value.hpp"

namespace hardattn::nf {

using EntryId = std::uint32_t;
using Rank = std::uint32_t;

enum class EnumerationMode {
  Reachable,  // tables hold exactly the values some length-n input produces
  Superset,   // cartesian (H+1)-tuples; used when enumeration is over budget
};

std::string_view to_string(EnumerationMode mode);

struct NormalFormOptions {
  /// Reachable mode is used when |Σ|^(n-1) does not exceed this.
  std::size_t max_inputs = 2'000'000;
  /// Largest value table any layer may have.
  std::size_t max_values = 1'000'000;
  /// Largest ordered-pair table per (layer, head).
  std::size_t max_pairs = 16'000'000;
  bool allow_superset = true;
};

/// Value table of one layer. Layer 0 entries are leaves (σ, i, n); layer k
/// entries are (H+1)-tuples of layer-(k-1) entry ids. Entries are sorted by
/// canonical rendering.
struct ValueTable {
  std::vector<Leaf> leaves;                     // layer 0 only
  std::vector<std::vector<EntryId>> children;   // layer >= 1 only
  std::vector<std::string> renderings;
  std::vector<std::uint32_t> positions;         // 1-based position each entry lives at
  std::vector<Value> translations;              // value of the source model (t_k)
  std::vector<std::vector<EntryId>> at_position;  // [i-1] -> entries occurring at position i

  std::size_t size() const { return renderings.size(); }
};

/// Dense ranks of attention scores for all ordered pairs of the previous
/// layer's entries. Pairs hidden by the model's mask share rank 0, below
/// every visible pair.
struct RankTable {
  std::size_t side = 0;
  std::vector<Rank> ranks;  // side * side, row = query entry
  Rank rank_count = 0;      // number of distinct ranks
  bool masked_rank = false;  // rank 0 is reserved for hidden pairs

  Rank at(EntryId query, EntryId key) const { return ranks[static_cast<std::size_t>(query) * side + key]; }
};

struct TupleHash {
  std::size_t operator()(const std::vector<EntryId>& key) const;
};

class NormalFormModel {
 public:
  std::string name;
  std::size_t n = 1;
  std::size_t layers = 1;
  std::size_t heads = 1;
  std::vector<char> alphabet;
  guhat::MaskMode mask = guhat::MaskMode::None;
  EnumerationMode mode = EnumerationMode::Reachable;

  std::vector<ValueTable> tables;                // layers 0..K
  std::vector<std::vector<RankTable>> attention;  // [k-1][h-1]
  std::vector<std::uint8_t> output_bits;         // per layer-K entry

  EncodingLayout layout() const;

  std::optional<EntryId> find_leaf(char symbol, std::size_t position) const;
  std::optional<EntryId> find_tuple(std::size_t layer, const std::vector<EntryId>& children) const;

  /// Called by normalize once tables are final.
  void build_indexes();

 private:
  std::map<std::pair<char, std::size_t>, EntryId> leaf_index_;
  std::vector<std::unordered_map<std::vector<EntryId>, EntryId, TupleHash>> tuple_index_;
};

/// Materializes the informative normal form of `model` at input length n
/// (n counts the end marker). Throws ResourceError when a budget is hit.
NormalFormModel normalize(const guhat::GuhatModel& model, std::size_t n, const NormalFormOptions& options = {});

/// The per-layer reachable value tables alone.
std::vector<ValueTable> enumerate_values(const guhat::GuhatModel& model, std::size_t n,
                                         const NormalFormOptions& options = {});

struct NfRun {
  bool accepted = false;
  std::vector<std::vector<EntryId>> entries;  // [layer][position-1]
};

/// Simulates using only the tables. |x| must be n-1.
NfRun run_nf_detailed(const NormalFormModel& nf, std::string_view x);
bool run_nf(const NormalFormModel& nf, std::string_view x);

/// Layer-0: code(σ) ++ bin(i,n) ++ bin(n,n); layer k: children concatenated.
std::string encode_value(const NormalFormModel& nf, const SymbolEncoding& enc, std::size_t layer, EntryId entry);
EntryId decode_value(const NormalFormModel& nf, const SymbolEncoding& enc, std::size_t layer, std::string_view bits);

/// Big-endian rank in score_width(k) bits.
std::string encode_score(const EncodingLayout& layout, std::size_t layer, std::uint64_t rank);

struct WidthAudit {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks every table and rank range against the layer bit widths.
WidthAudit audit_widths(const NormalFormModel& nf, const SymbolEncoding& enc);

/// "LAYER k VALUES c RANKS r WIDTH w" per layer, after a MODEL header line.
std::string nf_report(const NormalFormModel& nf);

}  // namespace hardattn::nf
