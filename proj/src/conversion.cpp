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

#include "hardattn/conversion.hpp"

#include <set>

#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"

namespace hardattn::restricted {

namespace {

std::vector<std::string> inputs_of_length(const RestrictedModel& model, std::size_t len, std::size_t budget) {
  std::size_t count = 1;
  for (std::size_t m = 0; m < len; ++m) {
    count *= model.alphabet.size();
    if (count > budget) {
      throw ResourceError("enumerating length-" + std::to_string(len) + " inputs of " + model.name +
                          " exceeds the budget of " + std::to_string(budget));
    }
  }
  return langs::strings_of_length(model.alphabet, len);
}

// (d x d) matrix embedded in the top-left of a (d+2) x (d+2) zero matrix.
RationalMatrix widen_square(const RationalMatrix& a, std::size_t d) {
  RationalMatrix out(d + 2, RationalVector(d + 2, Rational(0)));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) out[r][c] = a[r][c];
  }
  return out;
}

// Extends an activation net d(H+1) -> d to (d+2)(H+1) -> d+2 so that the two
// appended coordinates of the query's own value pass through unchanged. The
// pass-through values (1 and i/N) are nonnegative, so ReLU leaves them alone.
FeedForwardNet widen_activation(const FeedForwardNet& net, std::size_t d, std::size_t heads) {
  const std::size_t wide_block = d + 2;
  FeedForwardNet out;
  out.relu_last = net.relu_last;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    const std::size_t in_old = layer.input_dim();
    const std::size_t in_new = l == 0 ? wide_block * (heads + 1) : in_old + 2;
    AffineLayer wide;
    for (std::size_t r = 0; r < layer.output_dim(); ++r) {
      RationalVector row(in_new, Rational(0));
      for (std::size_t c = 0; c < in_old; ++c) {
        std::size_t target = l == 0 ? (c / d) * wide_block + (c % d) : c;
        row[target] = layer.weights[r][c];
      }
      wide.weights.push_back(std::move(row));
      wide.bias.push_back(layer.bias[r]);
    }
    // Pass-through rows for the constant-1 and i/N coordinates.
    for (std::size_t extra = 0; extra < 2; ++extra) {
      RationalVector row(in_new, Rational(0));
      row[l == 0 ? d + extra : in_old + extra] = 1;
      wide.weights.push_back(std::move(row));
      wide.bias.push_back(0);
    }
    out.layers.push_back(std::move(wide));
  }
  return out;
}

FeedForwardNet widen_output(const FeedForwardNet& net) {
  FeedForwardNet out = net;
  for (auto& row : out.layers.front().weights) {
    row.push_back(0);
    row.push_back(0);
  }
  return out;
}

}  // namespace

std::uint64_t tie_breaking_denominator(std::size_t n, const Rational& gap) {
  if (sgn(gap) <= 0) throw InputError("tie-breaking gap must be positive");
  std::uint64_t denom = 2;
  while (Rational(mpz_class(static_cast<unsigned long>(n)), mpz_class(static_cast<unsigned long>(denom))) >= gap) {
    if (denom > (std::uint64_t{1} << 62)) throw ResourceError("tie-breaking denominator overflow");
    denom *= 2;
  }
  return denom;
}

ConversionPlan plan_conversion(const RestrictedModel& model, std::size_t n, std::size_t budget) {
  model.validate();
  if (model.pooling != Pooling::Unique) throw InputError(model.name + " does not use unique hard attention");
  if (n == 0) throw InputError("plan_conversion needs n >= 1");

  std::vector<std::set<Rational>> seen(model.layers * model.heads);
  for (const auto& x : inputs_of_length(model, n - 1, budget)) {
    auto run = run_restricted(model, x);
    for (const auto& head : run.trace.heads) {
      auto& bucket = seen[(head.layer - 1) * model.heads + (head.head - 1)];
      for (const auto& row : head.scores) bucket.insert(row.begin(), row.end());
    }
  }

  ConversionPlan plan;
  plan.n = n;
  plan.source_name = model.name;
  plan.source_dim = model.dim;
  plan.source_layers = model.layers;
  plan.source_heads = model.heads;

  bool found = false;
  for (const auto& bucket : seen) {
    for (auto it = bucket.begin(); it != bucket.end() && std::next(it) != bucket.end(); ++it) {
      Rational gap = *std::next(it) - *it;
      if (!found || gap < plan.min_gap) plan.min_gap = gap;
      found = true;
    }
  }
  if (!found) {
    plan.min_gap = 1;
    plan.gap_fallback = true;
  }
  plan.denominator = tie_breaking_denominator(n, plan.min_gap);
  return plan;
}

RestrictedModel uhat_to_ahat(const RestrictedModel& model, const ConversionPlan& plan) {
  model.validate();
  if (model.pooling != Pooling::Unique) throw InputError(model.name + " does not use unique hard attention");
  if (plan.source_name != model.name || plan.source_dim != model.dim || plan.source_layers != model.layers ||
      plan.source_heads != model.heads) {
    throw InputError("conversion plan was measured on a different model");
  }
  const Rational gap_check(mpz_class(static_cast<unsigned long>(plan.n)),
                           mpz_class(static_cast<unsigned long>(plan.denominator)));
  if (!(gap_check < plan.min_gap)) throw InputError("conversion plan violates n/N < min_gap");

  const std::size_t d = model.dim;
  RestrictedModel out;
  out.name = model.name + "-ahat";
  out.alphabet = model.alphabet;
  out.dim = d + 2;
  out.layers = model.layers;
  out.heads = model.heads;
  out.mask = model.mask;
  out.pooling = Pooling::Averaging;

  for (const auto& [symbol, embedding] : model.token_embedding) {
    RationalVector wide = embedding;
    wide.push_back(0);
    wide.push_back(0);
    out.token_embedding.emplace(symbol, std::move(wide));
  }
  out.position = model.position;
  out.position.terms.push_back({d, PositionEmbedding::TermKind::Constant, 1});
  Rational inv(mpz_class(1), mpz_class(static_cast<unsigned long>(plan.denominator)));
  out.position.terms.push_back({d + 1, PositionEmbedding::TermKind::ScaledIndex, inv});

  out.attention.resize(model.layers);
  for (std::size_t k = 0; k < model.layers; ++k) {
    for (const auto& a : model.attention[k]) {
      auto wide = widen_square(a, d);
      // Query's constant 1 times key's j/N, negated: score - j/N.
      wide[d][d + 1] = -1;
      out.attention[k].push_back(std::move(wide));
    }
    out.activation.push_back(widen_activation(model.activation[k], d, model.heads));
  }
  out.output = widen_output(model.output);
  out.validate();
  return out;
}

std::size_t tie_audit(const RestrictedModel& model, const std::vector<std::string>& inputs) {
  std::size_t ties = 0;
  for (const auto& x : inputs) {
    auto run = run_restricted(model, x);
    for (const auto& head : run.trace.heads) {
      for (std::size_t i = 1; i <= head.scores.size(); ++i) {
        const auto& row = head.scores[i - 1];
        const Rational* best = nullptr;
        std::size_t hits = 0;
        for (std::size_t j = 1; j <= row.size(); ++j) {
          if (!guhat::visible(model.mask, i, j)) continue;
          if (!best || row[j - 1] > *best) {
            best = &row[j - 1];
            hits = 1;
          } else if (row[j - 1] == *best) {
            ++hits;
          }
        }
        if (hits >= 2) ++ties;
      }
    }
  }
  return ties;
}

}  // namespace hardattn::restricted
