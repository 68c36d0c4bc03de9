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
#include <string>
#include <vector>

#include "hardattn/restricted.hpp"

namespace hardattn::restricted {

/// Tie-breaking parameters for one input length n (including the end
/// marker). Invariant: n / denominator < min_gap, denominator a power of 2.
struct ConversionPlan {
  std::size_t n = 1;
  std::uint64_t denominator = 2;
  Rational min_gap = 1;
  bool gap_fallback = false;  // no two distinct scores were observed

  // Shape of the source model the plan was measured on.
  std::string source_name;
  std::size_t source_dim = 0;
  std::size_t source_layers = 0;
  std::size_t source_heads = 0;
};

inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

/// Enumerates every input of length n-1, collects every attention score per
/// (layer, head), and picks the least power of two N with n/N < min_gap.
ConversionPlan plan_conversion(const RestrictedModel& model, std::size_t n,
                               std::size_t budget = kDefaultEnumerationBudget);

/// Least power of two N with n/N < gap.
std::uint64_t tie_breaking_denominator(std::size_t n, const Rational& gap);

/// Appends constant coordinates 1 and i/N, subtracts j/N from every
/// attention score, and switches to averaging pooling. For inputs of the
/// planned length the result has no attention ties and the same decisions.
RestrictedModel uhat_to_ahat(const RestrictedModel& model, const ConversionPlan& plan);

/// Count of (input, layer, head, query) rows whose maximum over visible
/// positions is attained at two or more positions.
std::size_t tie_audit(const RestrictedModel& model, const std::vector<std::string>& inputs);

}  // namespace hardattn::restricted
