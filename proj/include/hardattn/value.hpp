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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hardattn/rational.hpp"

namespace hardattn {

/// Initial activation (σ, i, n) with 1-based position i.
struct Leaf {
  char symbol = '$';
  std::size_t position = 0;
  std::size_t length = 0;

  auto operator<=>(const Leaf&) const = default;
};

/// Activation value of a generalized transformer: a symbol leaf, an
/// integer, a tuple of values, or a rational vector. Immutable; copies
/// share structure.
class Value {
 public:
  enum class Kind { Leaf, Int, Tuple, Vector };

  Value() : data_(std::int64_t{0}) {}

  static Value leaf(char symbol, std::size_t position, std::size_t length);
  static Value integer(std::int64_t v);
  static Value tuple(std::vector<Value> items);
  static Value vector(RationalVector coords);

  Kind kind() const { return static_cast<Kind>(data_.index()); }

  // Accessors throw InputError on a kind mismatch.
  const Leaf& as_leaf() const;
  std::int64_t as_int() const;
  const std::vector<Value>& as_tuple() const;
  const RationalVector& as_vector() const;

  /// Tuple element shorthand.
  const Value& operator[](std::size_t i) const;

  /// Leaves as "(σ,i,n)", tuples and vectors as "(c1,c2,...)", integers in
  /// decimal, rationals as p/q.
  std::string render() const;

  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == std::strong_ordering::equal; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) { return compare(a, b); }

 private:
  using TuplePtr = std::shared_ptr<const std::vector<Value>>;
  using VectorPtr = std::shared_ptr<const RationalVector>;

  using Data = std::variant<Leaf, std::int64_t, TuplePtr, VectorPtr>;

  explicit Value(Data d) : data_(std::move(d)) {}

  static std::strong_ordering compare(const Value& a, const Value& b);
  void render_into(std::string& out) const;

  Data data_;
};

}  // namespace hardattn
