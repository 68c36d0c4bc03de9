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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hardattn/guhat.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/restricted.hpp"

namespace hardattn::zoo {

enum class ModelKind { GUHAT, UHAT, AHAT };

std::string_view to_string(ModelKind kind);

/// Palindromes over Σ with two single-head layers: layer 1 compares x_i with
/// x_{n-i}, layer 2 routes the leftmost mismatch to the end marker.
guhat::GuhatModel build_palindromes(std::string_view alphabet = "abc");

/// Averages the ±1 token codes over all positions; accepts iff the mean is
/// nonnegative.
restricted::RestrictedModel build_majority_ahat();

/// Unique attention to the leftmost 1; accepts iff one exists.
restricted::RestrictedModel build_contains_one_uhat();

guhat::GuhatModel build_one_star_guhat();
guhat::GuhatModel build_anbn_guhat();

struct ZooEntry {
  std::string name;
  ModelKind kind = ModelKind::GUHAT;
  std::variant<guhat::GuhatModel, restricted::RestrictedModel> model;
  /// Unset for contains-one, whose language has no named oracle.
  std::optional<langs::LangSpec> language;
  std::string provenance;
  std::function<bool(std::string_view)> oracle;

  /// The GUHAT view: the model itself, or the lifted restricted model.
  guhat::GuhatModel as_guhat() const;
  guhat::Pooling pooling() const;
  bool accepts(std::string_view x) const;
  /// GUHAT and UHAT entries have a normal form and a circuit.
  bool compilable() const { return kind != ModelKind::AHAT; }
};

std::vector<std::string> names();

/// Throws InputError listing the available names when `name` is unknown.
ZooEntry registry(std::string_view name);

}  // namespace hardattn::zoo
