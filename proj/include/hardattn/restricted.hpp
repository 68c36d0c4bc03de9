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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardattn/guhat.hpp"
#include "hardattn/rational.hpp"

namespace hardattn::restricted {

using guhat::MaskMode;
using guhat::Pooling;

/// y = W x + b with W stored row-major (rows = output dimension).
struct AffineLayer {
  RationalMatrix weights;
  RationalVector bias;

  std::size_t input_dim() const { return weights.empty() ? 0 : weights.front().size(); }
  std::size_t output_dim() const { return weights.size(); }
};

/// Affine layers with ReLU after each one; the last layer skips ReLU when
/// relu_last is false.
struct FeedForwardNet {
  std::vector<AffineLayer> layers;
  bool relu_last = true;

  std::size_t input_dim() const;
  std::size_t output_dim() const;
  void validate() const;
};

RationalVector ffn_eval(const FeedForwardNet& net, std::span<const Rational> v);

/// yᵀ A y'.
Rational bilinear_score(std::span<const Rational> y, std::span<const Rational> y2, const RationalMatrix& a);

/// Sum of per-coordinate terms added to the token embedding.
struct PositionEmbedding {
  enum class TermKind {
    IndexOverLength,   // coeff * i / n
    LengthOverLength,  // coeff * n / n, the second half of the scaled (i, n) pair
    Constant,          // coeff
    ScaledIndex,       // coeff * i
  };
  struct Term {
    std::size_t coord = 0;
    TermKind kind = TermKind::IndexOverLength;
    Rational coeff = 1;
  };

  std::vector<Term> terms;

  static PositionEmbedding zero() { return {}; }
  /// i/n in one coordinate.
  static PositionEmbedding ratio(std::size_t coord);
  /// (i, n) scaled by 1/n, i.e. (i/n, 1).
  static PositionEmbedding scaled_pair(std::size_t coord_i, std::size_t coord_n);

  RationalVector at(std::size_t i, std::size_t n, std::size_t dim) const;
};

/// UHAT/AHAT over exact rationals. Attention and activation nets are indexed
/// by 0-based layer.
struct RestrictedModel {
  std::string name;
  std::vector<char> alphabet;
  std::size_t dim = 1;
  std::size_t layers = 1;
  std::size_t heads = 1;
  std::map<char, RationalVector> token_embedding;  // alphabet plus '$'
  PositionEmbedding position;
  std::vector<std::vector<RationalMatrix>> attention;  // [layer][head], dim x dim
  std::vector<FeedForwardNet> activation;              // dim*(heads+1) -> dim
  FeedForwardNet output;                               // dim -> (accept, reject)
  MaskMode mask = MaskMode::None;
  Pooling pooling = Pooling::Unique;

  void validate() const;
  RationalVector embed(char symbol, std::size_t i, std::size_t n) const;
};

struct RestrictedRun {
  bool accepted = false;
  RationalVector logits;
  guhat::Trace trace;
};

/// Accepts iff the accept logit is at least the reject logit, which is the
/// two-way softmax probability test against 1/2 without exponentials.
RestrictedRun run_restricted(const RestrictedModel& model, std::string_view x);
bool restricted_accepts(const RestrictedModel& model, std::string_view x);

/// The same model expressed as a generalized transformer over vector values.
guhat::GuhatModel lift(const RestrictedModel& model);

}  // namespace hardattn::restricted
