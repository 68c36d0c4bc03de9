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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardattn/rational.hpp"
#include "hardattn/value.hpp"

namespace hardattn::guhat {

inline constexpr char kEndMarker = '$';

enum class MaskMode { None, Future, Past };
enum class Pooling { Unique, Averaging };

using InputFn = std::function<Value(char symbol, std::size_t position, std::size_t length)>;
using AttentionFn = std::function<Rational(const Value& query, const Value& key)>;
using ActivationFn = std::function<Value(const Value& self, std::span<const Value> heads)>;
using OutputFn = std::function<bool(const Value&)>;

/// Generalized transformer with K layers and H heads over an arbitrary
/// value domain. Attention functions return exact rationals.
struct GuhatModel {
  std::string name;
  std::vector<char> alphabet;
  std::size_t layers = 1;
  std::size_t heads = 1;
  InputFn input;
  std::vector<std::vector<AttentionFn>> attention;  // [layer][head], layer 0-based
  std::vector<ActivationFn> activation;             // [layer]
  OutputFn output;
  MaskMode mask = MaskMode::None;

  /// Checks K, H >= 1 and that every function slot is filled.
  void validate() const;

  bool has_symbol(char c) const;
};

/// Scores and selections of one (layer, head) during a run.
struct HeadTrace {
  std::size_t layer = 0;  // 1-based
  std::size_t head = 0;   // 1-based
  std::vector<RationalVector> scores;          // n x n, row i is query position i
  std::vector<std::vector<std::size_t>> targets;  // per query, 1-based argmax positions after masking
};

struct Trace {
  std::string input;                       // without the end marker
  std::vector<std::vector<Value>> values;  // layer 0..K, each of length n
  std::vector<HeadTrace> heads;            // layer-major, head-minor
  bool output = false;
};

/// Tab-separated table: one row per layer, one column per position, then
/// "OUTPUT <bit>".
std::string render_trace(const Trace& trace);

/// Smallest 0-based index attaining the maximum. Throws InputError if empty.
std::size_t leftmost_argmax(std::span<const Rational> scores);

/// All 0-based indices attaining the maximum.
std::vector<std::size_t> argmax_positions(std::span<const Rational> scores);

/// Unique hard attention: the value at the leftmost maximal score.
Value uha_pool(std::span<const Value> values, std::span<const Rational> scores);

/// Averaging hard attention: exact mean of the vectors at every maximal score.
RationalVector aha_pool(std::span<const RationalVector> values, std::span<const Rational> scores);
Value aha_pool(std::span<const Value> values, std::span<const Rational> scores);

/// Whether key position j is visible from query position i (both 1-based).
bool visible(MaskMode mode, std::size_t i, std::size_t j);

/// Surviving (1-based position, score) pairs for query position i.
std::vector<std::pair<std::size_t, Rational>> apply_mask(MaskMode mode, std::size_t i,
                                                         std::span<const Rational> scores);

struct RunResult {
  bool accepted = false;
  Trace trace;
};

/// Runs the model on x followed by the end marker.
RunResult run(const GuhatModel& model, std::string_view x, Pooling pooling = Pooling::Unique);

/// Same decisions as run() without building a trace.
bool accepts(const GuhatModel& model, std::string_view x, Pooling pooling = Pooling::Unique);

}  // namespace hardattn::guhat
