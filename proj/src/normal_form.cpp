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

#include "hardattn/normal_form.hpp"

#include <algorithm>
#include <numeric>

#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"

namespace hardattn::nf {

std::string_view to_string(EnumerationMode mode) {
  return mode == EnumerationMode::Reachable ? "reachable" : "superset";
}

std::size_t TupleHash::operator()(const std::vector<EntryId>& key) const {
  std::size_t h = 1469598103934665603ULL;
  for (EntryId id : key) {
    h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

EncodingLayout NormalFormModel::layout() const {
  return EncodingLayout{n, heads, ell(alphabet.size() + 1)};
}

std::optional<EntryId> NormalFormModel::find_leaf(char symbol, std::size_t position) const {
  auto it = leaf_index_.find({symbol, position});
  if (it == leaf_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EntryId> NormalFormModel::find_tuple(std::size_t layer, const std::vector<EntryId>& children) const {
  if (layer == 0 || layer >= tuple_index_.size()) return std::nullopt;
  const auto& index = tuple_index_[layer];
  auto it = index.find(children);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

void NormalFormModel::build_indexes() {
  leaf_index_.clear();
  const auto& base = tables.front();
  for (EntryId e = 0; e < base.leaves.size(); ++e) leaf_index_[{base.leaves[e].symbol, base.leaves[e].position}] = e;
  tuple_index_.assign(tables.size(), {});
  for (std::size_t k = 1; k < tables.size(); ++k) {
    auto& index = tuple_index_[k];
    index.reserve(tables[k].size());
    for (EntryId e = 0; e < tables[k].children.size(); ++e) index.emplace(tables[k].children[e], e);
  }
}

namespace {

using KeyMap = std::unordered_map<std::vector<EntryId>, EntryId, TupleHash>;

template <typename F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError(where + ": " + e.what());
  }
}

ValueTable build_leaf_table(const guhat::GuhatModel& model, std::size_t n) {
  std::vector<Leaf> leaves;
  for (std::size_t i = 1; i < n; ++i) {
    for (char c : model.alphabet) leaves.push_back({c, i, n});
  }
  leaves.push_back({guhat::kEndMarker, n, n});

  std::vector<std::string> renderings;
  renderings.reserve(leaves.size());
  for (const auto& l : leaves) renderings.push_back(Value::leaf(l.symbol, l.position, l.length).render());
  std::vector<std::size_t> order(leaves.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return renderings[a] < renderings[b]; });

  ValueTable table;
  table.at_position.resize(n);
  for (std::size_t idx : order) {
    const Leaf& l = leaves[idx];
    auto id = static_cast<EntryId>(table.leaves.size());
    table.leaves.push_back(l);
    table.renderings.push_back(renderings[idx]);
    table.positions.push_back(static_cast<std::uint32_t>(l.position));
    table.translations.push_back(guarded("input function at position " + std::to_string(l.position),
                                         [&] { return model.input(l.symbol, l.position, n); }));
    table.at_position[l.position - 1].push_back(id);
  }
  for (auto& members : table.at_position) std::sort(members.begin(), members.end());
  return table;
}

RankTable build_rank_table(const guhat::GuhatModel& model, const ValueTable& prev, std::size_t layer,
                           std::size_t head, const NormalFormOptions& options) {
  const std::size_t side = prev.size();
  if (side * side > options.max_pairs) {
    throw ResourceError("layer " + std::to_string(layer) + " attention table needs " + std::to_string(side * side) +
                        " pairs, over the budget of " + std::to_string(options.max_pairs));
  }
  const auto& att = model.attention[layer - 1][head - 1];
  std::vector<Rational> scores(side * side);
  std::vector<std::uint8_t> shown(side * side, 0);
  std::vector<Rational> distinct;
  bool any_hidden = false;
  for (EntryId p = 0; p < side; ++p) {
    for (EntryId q = 0; q < side; ++q) {
      std::size_t cell = static_cast<std::size_t>(p) * side + q;
      if (!guhat::visible(model.mask, prev.positions[p], prev.positions[q])) {
        any_hidden = true;
        continue;
      }
      shown[cell] = 1;
      scores[cell] = guarded("attention layer " + std::to_string(layer) + " head " + std::to_string(head),
                             [&] { return att(prev.translations[p], prev.translations[q]); });
      distinct.push_back(scores[cell]);
    }
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  RankTable table;
  table.side = side;
  table.masked_rank = any_hidden;
  const Rank offset = any_hidden ? 1 : 0;
  table.rank_count = static_cast<Rank>(distinct.size()) + offset;
  table.ranks.assign(side * side, 0);
  for (std::size_t cell = 0; cell < side * side; ++cell) {
    if (!shown[cell]) continue;
    auto it = std::lower_bound(distinct.begin(), distinct.end(), scores[cell]);
    table.ranks[cell] = static_cast<Rank>(it - distinct.begin()) + offset;
  }
  return table;
}

// Interns (H+1)-tuples, then orders them by rendering into a ValueTable.
class TupleCollector {
 public:
  explicit TupleCollector(std::size_t n) : members_(n) {}

  EntryId add(const std::vector<EntryId>& key, std::size_t position, std::size_t budget) {
    auto [it, inserted] = ids_.try_emplace(key, static_cast<EntryId>(keys_.size()));
    if (inserted) {
      if (keys_.size() + 1 > budget) {
        throw ResourceError("value table exceeds the budget of " + std::to_string(budget) + " entries");
      }
      keys_.push_back(key);
    }
    members_[position - 1].push_back(it->second);
    return it->second;
  }

  /// Returns the table and the map from provisional id to final id.
  std::pair<ValueTable, std::vector<EntryId>> finish(const guhat::GuhatModel& model, const ValueTable& prev,
                                                     std::size_t layer) {
    std::vector<std::string> renderings;
    renderings.reserve(keys_.size());
    for (const auto& key : keys_) {
      std::string r = "(";
      for (std::size_t c = 0; c < key.size(); ++c) {
        if (c > 0) r += ',';
        r += prev.renderings[key[c]];
      }
      r += ')';
      renderings.push_back(std::move(r));
    }
    std::vector<EntryId> order(keys_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](EntryId a, EntryId b) { return renderings[a] < renderings[b]; });
    std::vector<EntryId> remap(keys_.size());
    for (EntryId final_id = 0; final_id < order.size(); ++final_id) remap[order[final_id]] = final_id;

    ValueTable table;
    table.at_position.resize(members_.size());
    std::vector<Value> heads(model.heads);
    for (EntryId provisional : order) {
      const auto& key = keys_[provisional];
      table.children.push_back(key);
      table.renderings.push_back(std::move(renderings[provisional]));
      table.positions.push_back(prev.positions[key[0]]);
      for (std::size_t h = 0; h < model.heads; ++h) heads[h] = prev.translations[key[h + 1]];
      table.translations.push_back(guarded("activation layer " + std::to_string(layer), [&] {
        return model.activation[layer - 1](prev.translations[key[0]], std::span<const Value>(heads));
      }));
    }
    for (std::size_t i = 0; i < members_.size(); ++i) {
      auto& dst = table.at_position[i];
      for (EntryId provisional : members_[i]) dst.push_back(remap[provisional]);
      std::sort(dst.begin(), dst.end());
      dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
    }
    return {std::move(table), std::move(remap)};
  }

 private:
  KeyMap ids_;
  std::vector<std::vector<EntryId>> keys_;
  std::vector<std::vector<EntryId>> members_;
};

EntryId select(const RankTable& ranks, const EntryId* row, std::size_t n, EntryId query) {
  std::size_t best = 0;
  Rank best_rank = ranks.at(query, row[0]);
  for (std::size_t j = 1; j < n; ++j) {
    Rank r = ranks.at(query, row[j]);
    if (r > best_rank) {
      best_rank = r;
      best = j;
    }
  }
  return row[best];
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t e = 0; e < exp; ++e) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

NormalFormModel normalize(const guhat::GuhatModel& model, std::size_t n, const NormalFormOptions& options) {
  model.validate();
  if (n == 0) throw InputError("normalize needs n >= 1");

  NormalFormModel nf;
  nf.name = model.name;
  nf.n = n;
  nf.layers = model.layers;
  nf.heads = model.heads;
  nf.alphabet = model.alphabet;
  nf.mask = model.mask;

  nf.tables.push_back(build_leaf_table(model, n));
  if (nf.tables.front().size() > options.max_values) throw ResourceError("layer 0 table exceeds the value budget");

  const std::size_t input_count = checked_power(model.alphabet.size(), n - 1, options.max_inputs);
  if (input_count <= options.max_inputs) {
    nf.mode = EnumerationMode::Reachable;
  } else if (options.allow_superset) {
    nf.mode = EnumerationMode::Superset;
  } else {
    throw ResourceError("enumerating " + std::to_string(n - 1) + "-symbol inputs exceeds the budget of " +
                        std::to_string(options.max_inputs));
  }

  // Reachable mode: current entry id at every (input, position).
  std::vector<EntryId> state;
  if (nf.mode == EnumerationMode::Reachable) {
    const auto inputs = langs::strings_of_length(model.alphabet, n - 1);
    state.resize(inputs.size() * n);
    const auto& base = nf.tables.front();
    std::map<std::pair<char, std::size_t>, EntryId> leaf_id;
    for (EntryId e = 0; e < base.size(); ++e) leaf_id[{base.leaves[e].symbol, base.leaves[e].position}] = e;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
      for (std::size_t i = 1; i <= n; ++i) {
        char c = i < n ? inputs[s][i - 1] : guhat::kEndMarker;
        state[s * n + (i - 1)] = leaf_id.at({c, i});
      }
    }
  }

  for (std::size_t k = 1; k <= model.layers; ++k) {
    const ValueTable& prev = nf.tables[k - 1];
    std::vector<RankTable> ranks;
    for (std::size_t h = 1; h <= model.heads; ++h) ranks.push_back(build_rank_table(model, prev, k, h, options));

    TupleCollector collector(n);
    std::vector<EntryId> key(model.heads + 1);
    if (nf.mode == EnumerationMode::Reachable) {
      std::vector<EntryId> next(state.size());
      const std::size_t count = state.size() / n;
      for (std::size_t s = 0; s < count; ++s) {
        const EntryId* row = &state[s * n];
        for (std::size_t i = 0; i < n; ++i) {
          key[0] = row[i];
          for (std::size_t h = 0; h < model.heads; ++h) key[h + 1] = select(ranks[h], row, n, row[i]);
          next[s * n + i] = collector.add(key, i + 1, options.max_values);
        }
      }
      auto [table, remap] = collector.finish(model, prev, k);
      for (auto& id : next) id = remap[id];
      state = std::move(next);
      nf.tables.push_back(std::move(table));
    } else {
      std::size_t total = 0;
      for (const auto& members : prev.at_position) {
        std::size_t combos = checked_power(prev.size(), model.heads, options.max_values);
        total += members.size() * combos;
        if (combos > options.max_values || total > options.max_values) {
          throw ResourceError("superset table for layer " + std::to_string(k) + " exceeds the value budget of " +
                              std::to_string(options.max_values));
        }
      }
      for (std::size_t i = 1; i <= n; ++i) {
        for (EntryId self : prev.at_position[i - 1]) {
          key[0] = self;
          std::vector<EntryId> odometer(model.heads, 0);
          while (true) {
            for (std::size_t h = 0; h < model.heads; ++h) key[h + 1] = odometer[h];
            collector.add(key, i, options.max_values);
            std::size_t h = 0;
            while (h < model.heads && ++odometer[h] == prev.size()) odometer[h++] = 0;
            if (h == model.heads) break;
          }
        }
      }
      nf.tables.push_back(collector.finish(model, prev, k).first);
    }
    nf.attention.push_back(std::move(ranks));
  }

  const ValueTable& last = nf.tables.back();
  nf.output_bits.reserve(last.size());
  for (const auto& v : last.translations) {
    nf.output_bits.push_back(guarded("output function", [&] { return model.output(v); }) ? 1 : 0);
  }
  nf.build_indexes();
  return nf;
}

std::vector<ValueTable> enumerate_values(const guhat::GuhatModel& model, std::size_t n,
                                         const NormalFormOptions& options) {
  return normalize(model, n, options).tables;
}

NfRun run_nf_detailed(const NormalFormModel& nf, std::string_view x) {
  if (x.size() + 1 != nf.n) {
    throw InputError("normal form was built for inputs of length " + std::to_string(nf.n - 1) + ", got " +
                     std::to_string(x.size()));
  }
  const std::size_t n = nf.n;
  NfRun out;
  std::vector<EntryId> row(n);
  for (std::size_t i = 1; i <= n; ++i) {
    char c = i < n ? x[i - 1] : guhat::kEndMarker;
    auto id = nf.find_leaf(c, i);
    if (!id) throw InputError(std::string("symbol '") + c + "' is not in the alphabet of " + nf.name);
    row[i - 1] = *id;
  }
  out.entries.push_back(row);

  std::vector<EntryId> key(nf.heads + 1);
  for (std::size_t k = 1; k <= nf.layers; ++k) {
    std::vector<EntryId> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      key[0] = row[i];
      for (std::size_t h = 0; h < nf.heads; ++h) key[h + 1] = select(nf.attention[k - 1][h], row.data(), n, row[i]);
      auto id = nf.find_tuple(k, key);
      if (!id) throw ModelError("normal form table of layer " + std::to_string(k) + " is missing a reachable value");
      next[i] = *id;
    }
    row = std::move(next);
    out.entries.push_back(row);
  }
  out.accepted = nf.output_bits[row[n - 1]] != 0;
  return out;
}

bool run_nf(const NormalFormModel& nf, std::string_view x) { return run_nf_detailed(nf, x).accepted; }

std::string encode_value(const NormalFormModel& nf, const SymbolEncoding& enc, std::size_t layer, EntryId entry) {
  if (layer >= nf.tables.size() || entry >= nf.tables[layer].size()) {
    throw InputError("value " + std::to_string(entry) + " is not in the layer-" + std::to_string(layer) + " table");
  }
  if (layer == 0) {
    const Leaf& l = nf.tables[0].leaves[entry];
    return enc.code(l.symbol) + bin(l.position, nf.n) + bin(nf.n, nf.n);
  }
  std::string out;
  for (EntryId child : nf.tables[layer].children[entry]) out += encode_value(nf, enc, layer - 1, child);
  return out;
}

namespace {

std::size_t parse_binary(std::string_view bits) {
  std::size_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("not a bit string");
    v = (v << 1) | static_cast<std::size_t>(c - '0');
  }
  return v;
}

}  // namespace

EntryId decode_value(const NormalFormModel& nf, const SymbolEncoding& enc, std::size_t layer, std::string_view bits) {
  const auto layout = nf.layout();
  if (layer >= nf.tables.size()) throw InputError("no layer " + std::to_string(layer));
  if (bits.size() != layout.value_width(layer)) {
    throw InputError("layer-" + std::to_string(layer) + " values are " + std::to_string(layout.value_width(layer)) +
                     " bits, got " + std::to_string(bits.size()));
  }
  if (layer == 0) {
    const std::size_t s = enc.width();
    const std::size_t w = layout.ell_n();
    char symbol = enc.decode(bits.substr(0, s));
    std::size_t position = parse_binary(bits.substr(s, w));
    std::size_t length = parse_binary(bits.substr(s + w, w));
    auto id = length == nf.n ? nf.find_leaf(symbol, position) : std::nullopt;
    if (!id) throw InputError("'" + std::string(bits) + "' does not encode a layer-0 table entry");
    return *id;
  }
  const std::size_t child_width = layout.value_width(layer - 1);
  std::vector<EntryId> key;
  for (std::size_t c = 0; c <= nf.heads; ++c) {
    key.push_back(decode_value(nf, enc, layer - 1, bits.substr(c * child_width, child_width)));
  }
  auto id = nf.find_tuple(layer, key);
  if (!id) throw InputError("'" + std::string(bits) + "' does not encode a layer-" + std::to_string(layer) + " entry");
  return *id;
}

std::string encode_score(const EncodingLayout& layout, std::size_t layer, std::uint64_t rank) {
  return fixed_width_binary(rank, layout.score_width(layer));
}

WidthAudit audit_widths(const NormalFormModel& nf, const SymbolEncoding& enc) {
  WidthAudit audit;
  const auto layout = nf.layout();
  auto fail = [&](std::string msg) {
    audit.ok = false;
    audit.violations.push_back(std::move(msg));
  };
  auto fits = [](std::uint64_t count, std::size_t width) { return width >= 64 || count <= (std::uint64_t{1} << width); };

  if (enc.width() != layout.symbol_width) fail("symbol encoding width differs from the layout");
  for (std::size_t k = 0; k < nf.tables.size(); ++k) {
    const std::size_t vw = layout.value_width(k);
    if (!fits(nf.tables[k].size(), vw)) fail("layer " + std::to_string(k) + " table does not fit in value width");
    for (EntryId e = 0; e < nf.tables[k].size(); ++e) {
      if (encode_value(nf, enc, k, e).size() != vw) {
        fail("layer " + std::to_string(k) + " entry " + std::to_string(e) + " encodes to the wrong width");
        break;
      }
    }
    if (k == 0) continue;
    const std::size_t sw = layout.score_width(k);
    const std::uint64_t pairs = static_cast<std::uint64_t>(nf.tables[k - 1].size()) * nf.tables[k - 1].size();
    if (!fits(pairs, sw)) fail("layer " + std::to_string(k) + " pair count exceeds the score width");
    for (const auto& ranks : nf.attention[k - 1]) {
      if (!fits(ranks.rank_count, sw) || ranks.rank_count > pairs) {
        fail("layer " + std::to_string(k) + " rank range exceeds the score width");
      }
    }
  }
  return audit;
}

std::string nf_report(const NormalFormModel& nf) {
  const auto layout = nf.layout();
  std::string out = "MODEL " + nf.name + " N " + std::to_string(nf.n) + " MODE " + std::string(to_string(nf.mode)) + "\n";
  for (std::size_t k = 0; k < nf.tables.size(); ++k) {
    std::size_t ranks = 0;
    if (k > 0) {
      for (const auto& t : nf.attention[k - 1]) ranks = std::max<std::size_t>(ranks, t.rank_count);
    }
    out += "LAYER " + std::to_string(k) + " VALUES " + std::to_string(nf.tables[k].size()) + " RANKS " +
           std::to_string(ranks) + " WIDTH " + std::to_string(layout.value_width(k)) + "\n";
  }
  return out;
}

}  // namespace hardattn::nf
