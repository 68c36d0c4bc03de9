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

#include "hardattn/restricted.hpp"

#include <algorithm>

#include "hardattn/errors.hpp"

namespace hardattn::restricted {

std::size_t FeedForwardNet::input_dim() const { return layers.empty() ? 0 : layers.front().input_dim(); }

std::size_t FeedForwardNet::output_dim() const { return layers.empty() ? 0 : layers.back().output_dim(); }

void FeedForwardNet::validate() const {
  if (layers.empty()) throw InputError("feedforward net has no layers");
  std::size_t expected = layers.front().input_dim();
  if (expected == 0) throw InputError("feedforward net has zero input dimension");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (layer.weights.empty()) throw InputError("feedforward layer " + std::to_string(l) + " has no rows");
    if (layer.bias.size() != layer.weights.size()) {
      throw InputError("feedforward layer " + std::to_string(l) + ": bias length differs from row count");
    }
    for (const auto& row : layer.weights) {
      if (row.size() != expected) throw InputError("feedforward layer " + std::to_string(l) + ": ragged or mis-chained");
    }
    expected = layer.weights.size();
  }
}

RationalVector ffn_eval(const FeedForwardNet& net, std::span<const Rational> v) {
  if (v.empty()) throw InputError("ffn_eval: empty input vector");
  if (net.layers.empty() || v.size() != net.input_dim()) {
    throw InputError("ffn_eval: input dimension " + std::to_string(v.size()) + " does not match net input " +
                     std::to_string(net.input_dim()));
  }
  RationalVector x(v.begin(), v.end());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    if (layer.input_dim() != x.size()) throw InputError("ffn_eval: layer dimensions do not chain");
    RationalVector y(layer.output_dim());
    for (std::size_t r = 0; r < y.size(); ++r) {
      Rational acc = layer.bias[r];
      const auto& w = layer.weights[r];
      for (std::size_t c = 0; c < x.size(); ++c) {
        if (sgn(w[c]) != 0) acc += w[c] * x[c];
      }
      bool relu = l + 1 < net.layers.size() || net.relu_last;
      if (relu && sgn(acc) < 0) acc = 0;
      y[r] = std::move(acc);
    }
    x = std::move(y);
  }
  return x;
}

Rational bilinear_score(std::span<const Rational> y, std::span<const Rational> y2, const RationalMatrix& a) {
  if (a.size() != y.size() || y.size() != y2.size()) throw InputError("bilinear_score: dimension mismatch");
  Rational acc = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != y2.size()) throw InputError("bilinear_score: matrix is not square in the vector dimension");
    if (sgn(y[r]) == 0) continue;
    for (std::size_t c = 0; c < y2.size(); ++c) {
      if (sgn(a[r][c]) != 0) acc += y[r] * a[r][c] * y2[c];
    }
  }
  return acc;
}

PositionEmbedding PositionEmbedding::ratio(std::size_t coord) {
  return {{{coord, TermKind::IndexOverLength, 1}}};
}

PositionEmbedding PositionEmbedding::scaled_pair(std::size_t coord_i, std::size_t coord_n) {
  return {{{coord_i, TermKind::IndexOverLength, 1}, {coord_n, TermKind::LengthOverLength, 1}}};
}

RationalVector PositionEmbedding::at(std::size_t i, std::size_t n, std::size_t dim) const {
  RationalVector p(dim, Rational(0));
  for (const auto& t : terms) {
    if (t.coord >= dim) throw InputError("position embedding coordinate out of range");
    Rational v;
    switch (t.kind) {
      case TermKind::IndexOverLength: v = Rational(static_cast<long>(i), static_cast<unsigned long>(n)); break;
      case TermKind::LengthOverLength: v = 1; break;
      case TermKind::Constant: v = 1; break;
      case TermKind::ScaledIndex: v = static_cast<long>(i); break;
    }
    v.canonicalize();
    p[t.coord] += t.coeff * v;
  }
  return p;
}

void RestrictedModel::validate() const {
  if (dim == 0) throw InputError(name + ": dimension must be >= 1");
  if (layers == 0 || heads == 0) throw InputError(name + ": need K >= 1 and H >= 1");
  if (alphabet.empty()) throw InputError(name + ": empty alphabet");
  auto check_embed = [&](char c) {
    auto it = token_embedding.find(c);
    if (it == token_embedding.end()) throw InputError(name + ": no token embedding for '" + std::string(1, c) + "'");
    if (it->second.size() != dim) throw InputError(name + ": token embedding has wrong dimension");
  };
  for (char c : alphabet) check_embed(c);
  check_embed(guhat::kEndMarker);
  if (attention.size() != layers || activation.size() != layers) throw InputError(name + ": per-layer tables");
  for (std::size_t k = 0; k < layers; ++k) {
    if (attention[k].size() != heads) throw InputError(name + ": attention head count");
    for (const auto& a : attention[k]) {
      if (a.size() != dim) throw InputError(name + ": attention matrix row count");
      for (const auto& row : a) {
        if (row.size() != dim) throw InputError(name + ": attention matrix column count");
      }
    }
    activation[k].validate();
    if (activation[k].input_dim() != dim * (heads + 1) || activation[k].output_dim() != dim) {
      throw InputError(name + ": activation net must map d(H+1) to d");
    }
  }
  output.validate();
  if (output.input_dim() != dim || output.output_dim() != 2) {
    throw InputError(name + ": output net must map d to two logits");
  }
  for (const auto& t : position.terms) {
    if (t.coord >= dim) throw InputError(name + ": position embedding coordinate out of range");
  }
}

RationalVector RestrictedModel::embed(char symbol, std::size_t i, std::size_t n) const {
  auto it = token_embedding.find(symbol);
  if (it == token_embedding.end()) throw InputError(std::string("symbol '") + symbol + "' is not in the alphabet of " + name);
  RationalVector v = position.at(i, n, dim);
  for (std::size_t c = 0; c < dim; ++c) v[c] += it->second[c];
  return v;
}

namespace {

bool execute(const RestrictedModel& model, std::string_view x, RestrictedRun* out) {
  for (char c : x) {
    if (c == guhat::kEndMarker || std::find(model.alphabet.begin(), model.alphabet.end(), c) == model.alphabet.end()) {
      throw InputError(std::string("symbol '") + c + "' is not in the alphabet of " + model.name);
    }
  }
  const std::size_t n = x.size() + 1;
  const std::size_t d = model.dim;
  std::vector<RationalVector> y(n);
  for (std::size_t i = 1; i <= n; ++i) y[i - 1] = model.embed(i < n ? x[i - 1] : guhat::kEndMarker, i, n);

  auto snapshot = [&] {
    std::vector<Value> layer;
    layer.reserve(n);
    for (const auto& v : y) layer.push_back(Value::vector(v));
    out->trace.values.push_back(std::move(layer));
  };
  if (out) {
    out->trace.input = std::string(x);
    snapshot();
  }

  std::vector<Rational> scores;
  std::vector<RationalVector> candidates;
  for (std::size_t k = 0; k < model.layers; ++k) {
    // act_in[i] = y_i ++ b_{i,1} ++ ... ++ b_{i,H}
    std::vector<RationalVector> act_in(n);
    for (std::size_t i = 0; i < n; ++i) {
      act_in[i].reserve(d * (model.heads + 1));
      act_in[i].insert(act_in[i].end(), y[i].begin(), y[i].end());
    }
    for (std::size_t h = 0; h < model.heads; ++h) {
      guhat::HeadTrace head{k + 1, h + 1, {}, {}};
      const auto& a = model.attention[k][h];
      for (std::size_t i = 1; i <= n; ++i) {
        RationalVector row(n);
        for (std::size_t j = 1; j <= n; ++j) row[j - 1] = bilinear_score(y[i - 1], y[j - 1], a);
        scores.clear();
        candidates.clear();
        std::vector<std::size_t> positions;
        for (std::size_t j = 1; j <= n; ++j) {
          if (!guhat::visible(model.mask, i, j)) continue;
          scores.push_back(row[j - 1]);
          candidates.push_back(y[j - 1]);
          positions.push_back(j);
        }
        RationalVector pooled;
        std::vector<std::size_t> targets;
        if (model.pooling == Pooling::Unique) {
          std::size_t best = guhat::leftmost_argmax(scores);
          pooled = candidates[best];
          targets.push_back(positions[best]);
        } else {
          pooled = guhat::aha_pool(std::span<const RationalVector>(candidates), scores);
          for (std::size_t w : guhat::argmax_positions(scores)) targets.push_back(positions[w]);
        }
        act_in[i - 1].insert(act_in[i - 1].end(), pooled.begin(), pooled.end());
        if (out) {
          head.scores.push_back(std::move(row));
          head.targets.push_back(std::move(targets));
        }
      }
      if (out) out->trace.heads.push_back(std::move(head));
    }
    for (std::size_t i = 0; i < n; ++i) y[i] = ffn_eval(model.activation[k], act_in[i]);
    if (out) snapshot();
  }

  RationalVector logits = ffn_eval(model.output, y[n - 1]);
  bool accepted = logits[0] >= logits[1];
  if (out) {
    out->accepted = accepted;
    out->trace.output = accepted;
    out->logits = std::move(logits);
  }
  return accepted;
}

}  // namespace

RestrictedRun run_restricted(const RestrictedModel& model, std::string_view x) {
  RestrictedRun result;
  execute(model, x, &result);
  return result;
}

bool restricted_accepts(const RestrictedModel& model, std::string_view x) { return execute(model, x, nullptr); }

guhat::GuhatModel lift(const RestrictedModel& model) {
  model.validate();
  auto shared = std::make_shared<const RestrictedModel>(model);
  guhat::GuhatModel g;
  g.name = model.name;
  g.alphabet = model.alphabet;
  g.layers = model.layers;
  g.heads = model.heads;
  g.mask = model.mask;
  g.input = [shared](char symbol, std::size_t i, std::size_t n) { return Value::vector(shared->embed(symbol, i, n)); };
  g.attention.resize(model.layers);
  for (std::size_t k = 0; k < model.layers; ++k) {
    for (std::size_t h = 0; h < model.heads; ++h) {
      g.attention[k].push_back([shared, k, h](const Value& q, const Value& key) {
        return bilinear_score(q.as_vector(), key.as_vector(), shared->attention[k][h]);
      });
    }
    g.activation.push_back([shared, k](const Value& self, std::span<const Value> heads) {
      RationalVector in = self.as_vector();
      for (const auto& b : heads) {
        const auto& v = b.as_vector();
        in.insert(in.end(), v.begin(), v.end());
      }
      return Value::vector(ffn_eval(shared->activation[k], in));
    });
  }
  g.output = [shared](const Value& v) {
    auto logits = ffn_eval(shared->output, v.as_vector());
    return logits[0] >= logits[1];
  };
  return g;
}

}  // namespace hardattn::restricted
