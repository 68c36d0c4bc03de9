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

#include "hardattn/zoo.hpp"

#include "hardattn/errors.hpp"

namespace hardattn::zoo {
namespace {

using guhat::GuhatModel;
using restricted::RestrictedModel;

Rational indicator(bool b) { return Rational(b ? 1 : 0); }

std::int64_t as_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

restricted::AffineLayer affine(RationalMatrix w, std::size_t out) {
  return {std::move(w), RationalVector(out, Rational(0))};
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::GUHAT: return "GUHAT";
    case ModelKind::UHAT: return "UHAT";
    case ModelKind::AHAT: return "AHAT";
  }
  return "?";
}

GuhatModel build_palindromes(std::string_view alphabet) {
  if (alphabet.empty()) throw InputError("palindromes needs a nonempty alphabet");
  GuhatModel m;
  m.name = "palindromes";
  m.alphabet.assign(alphabet.begin(), alphabet.end());
  m.layers = 2;
  m.heads = 1;
  m.input = [](char symbol, std::size_t i, std::size_t n) { return Value::leaf(symbol, i, n); };

  auto mirror = [](const Value& q, const Value& k) {
    const Leaf& a = q.as_leaf();
    const Leaf& b = k.as_leaf();
    const std::size_t n = a.length;
    return indicator(b.position + a.position == n || (a.position == n && b.position == n));
  };
  auto compare = [](const Value& self, std::span<const Value> heads) {
    const Leaf& a = self.as_leaf();
    const Leaf& b = heads[0].as_leaf();
    const bool end = a.position == a.length && b.position == a.length;
    const bool mismatch = a.symbol != b.symbol;
    return Value::tuple({Value::integer(end || mismatch ? 1 : 0), Value::integer(as_i64(a.position))});
  };
  auto flagged = [](const Value&, const Value& k) { return Rational(k[0].as_int()); };
  auto route = [](const Value& self, std::span<const Value> heads) {
    return Value::tuple({self[1], heads[0][1]});
  };
  m.attention = {{mirror}, {flagged}};
  m.activation = {compare, route};
  m.output = [](const Value& v) { return v[0].as_int() == v[1].as_int(); };
  return m;
}

RestrictedModel build_majority_ahat() {
  RestrictedModel m;
  m.name = "majority-ahat";
  m.alphabet = {'0', '1'};
  m.dim = 2;
  m.layers = 1;
  m.heads = 1;
  m.token_embedding = {{'1', {1, 0}}, {'0', {-1, 0}}, {guhat::kEndMarker, {0, 0}}};
  m.position = restricted::PositionEmbedding::zero();
  m.attention = {{RationalMatrix{{0, 0}, {0, 0}}}};
  // [self, head] -> (head_0, 0), split into ReLU halves and recombined.
  restricted::FeedForwardNet act;
  act.layers.push_back(affine({{0, 0, 1, 0}, {0, 0, -1, 0}}, 2));
  act.layers.push_back(affine({{1, -1}, {0, 0}}, 2));
  act.relu_last = false;
  m.activation = {act};
  restricted::FeedForwardNet out;
  out.layers.push_back(affine({{1, 0}, {-1, 0}}, 2));
  out.relu_last = false;
  m.output = out;
  m.mask = guhat::MaskMode::None;
  m.pooling = guhat::Pooling::Averaging;
  return m;
}

RestrictedModel build_contains_one_uhat() {
  RestrictedModel m;
  m.name = "contains-one";
  m.alphabet = {'0', '1'};
  m.dim = 2;
  m.layers = 1;
  m.heads = 1;
  m.token_embedding = {{'1', {1, 1}}, {'0', {0, 1}}, {guhat::kEndMarker, {0, 1}}};
  m.position = restricted::PositionEmbedding::zero();
  // Score y_q[1] * y_k[0]: the key's 1-indicator.
  m.attention = {{RationalMatrix{{0, 0}, {1, 0}}}};
  restricted::FeedForwardNet act;
  act.layers.push_back(affine({{0, 0, 1, 0}, {0, 1, 0, 0}}, 2));
  m.activation = {act};
  restricted::FeedForwardNet out;
  out.layers.push_back(affine({{1, 0}, {0, Rational(1, 2)}}, 2));
  out.relu_last = false;
  m.output = out;
  m.mask = guhat::MaskMode::None;
  m.pooling = guhat::Pooling::Unique;
  return m;
}

GuhatModel build_one_star_guhat() {
  GuhatModel m;
  m.name = "onestar";
  m.alphabet = {'0', '1'};
  m.layers = 1;
  m.heads = 1;
  m.input = [](char symbol, std::size_t i, std::size_t n) { return Value::leaf(symbol, i, n); };
  // Every non-1 is a violation; the end marker is the fallback target.
  m.attention = {{[](const Value&, const Value& k) { return indicator(k.as_leaf().symbol != '1'); }}};
  m.activation = {[](const Value& self, std::span<const Value> heads) {
    return Value::tuple({Value::integer(as_i64(self.as_leaf().position)),
                         Value::integer(as_i64(heads[0].as_leaf().position))});
  }};
  m.output = [](const Value& v) { return v[0].as_int() == v[1].as_int(); };
  return m;
}

GuhatModel build_anbn_guhat() {
  GuhatModel m;
  m.name = "anbn";
  m.alphabet = {'a', 'b'};
  m.layers = 1;
  m.heads = 1;
  m.input = [](char symbol, std::size_t i, std::size_t n) { return Value::leaf(symbol, i, n); };
  // Position j < n violates when x_j is not the symbol a^m b^m puts there
  // (a in the first half); the end marker violates when |x| is odd or zero.
  auto violates = [](const Leaf& leaf) {
    const std::size_t len = leaf.length - 1;
    if (leaf.position == leaf.length) return len == 0 || len % 2 != 0;
    return leaf.symbol != (2 * leaf.position <= len ? 'a' : 'b');
  };
  m.attention = {{[violates](const Value&, const Value& k) {
    const Leaf& leaf = k.as_leaf();
    return indicator(violates(leaf) || leaf.position == leaf.length);
  }}};
  m.activation = {[violates](const Value& self, std::span<const Value> heads) {
    const Leaf& key = heads[0].as_leaf();
    return Value::tuple({Value::integer(as_i64(self.as_leaf().position)), Value::integer(as_i64(key.position)),
                         Value::integer(violates(key) ? 1 : 0)});
  }};
  m.output = [](const Value& v) { return v[0].as_int() == v[1].as_int() && v[2].as_int() == 0; };
  return m;
}

GuhatModel ZooEntry::as_guhat() const {
  if (const auto* g = std::get_if<GuhatModel>(&model)) return *g;
  return restricted::lift(std::get<RestrictedModel>(model));
}

guhat::Pooling ZooEntry::pooling() const {
  if (const auto* r = std::get_if<RestrictedModel>(&model)) return r->pooling;
  return guhat::Pooling::Unique;
}

bool ZooEntry::accepts(std::string_view x) const {
  if (const auto* g = std::get_if<GuhatModel>(&model)) return guhat::accepts(*g, x);
  return restricted::restricted_accepts(std::get<RestrictedModel>(model), x);
}

std::vector<std::string> names() { return {"palindromes", "majority-ahat", "contains-one", "onestar", "anbn"}; }

namespace {

ZooEntry with_oracle(ZooEntry entry) {
  if (!entry.oracle) {
    entry.oracle = [lang = *entry.language](std::string_view x) { return langs::member(lang, x); };
  }
  return entry;
}

ZooEntry lookup(std::string_view name) {
  if (name == "palindromes") {
    return {"palindromes", ModelKind::GUHAT, build_palindromes(), langs::LangSpec::palindromes(),
            "two-layer construction with mirrored attention and leftmost-mismatch routing", {}};
  }
  if (name == "majority-ahat") {
    return {"majority-ahat", ModelKind::AHAT, build_majority_ahat(), langs::LangSpec::majority(),
            "zero attention matrix, averaging over every position", {}};
  }
  if (name == "contains-one") {
    return {"contains-one", ModelKind::UHAT, build_contains_one_uhat(),
            std::nullopt, "artifact model: tie-rich unique attention for the averaging conversion",
            [](std::string_view x) { return x.find('1') != std::string_view::npos; }};
  }
  if (name == "onestar") {
    return {"onestar", ModelKind::GUHAT, build_one_star_guhat(), langs::LangSpec::one_star(),
            "the leftmost non-1 is routed to the end marker", {}};
  }
  if (name == "anbn") {
    return {"anbn", ModelKind::GUHAT, build_anbn_guhat(), langs::LangSpec::anbn(),
            "the leftmost misplaced symbol is routed to the end marker", {}};
  }
  std::string list;
  for (const auto& n : names()) list += (list.empty() ? "" : ", ") + n;
  throw InputError("unknown model '" + std::string(name) + "' (available: " + list + ")");
}

}  // namespace

ZooEntry registry(std::string_view name) { return with_oracle(lookup(name)); }

}  // namespace hardattn::zoo
