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

// Reference implementations written independently of the library, plus
// seeded generators for property tests.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardattn/circuit.hpp"
#include "hardattn/dnf.hpp"
#include "hardattn/rational.hpp"

namespace testing_support {

inline bool is_palindrome(const std::string& x) { return std::equal(x.begin(), x.end(), x.rbegin()); }

inline bool contains_one(const std::string& x) { return x.find('1') != std::string::npos; }

inline bool all_ones(const std::string& x) { return std::all_of(x.begin(), x.end(), [](char c) { return c == '1'; }); }

inline bool is_anbn(const std::string& x) {
  if (x.empty() || x.size() % 2 != 0) return false;
  const std::size_t half = x.size() / 2;
  return x == std::string(half, 'a') + std::string(half, 'b');
}

inline bool count_majority(const std::string& x) {
  const auto ones = std::count(x.begin(), x.end(), '1');
  return 2 * ones >= static_cast<std::ptrdiff_t>(x.size());
}

/// Balanced-bracket check by repeatedly deleting adjacent matched pairs.
inline bool dyck_by_rewriting(std::string x, const std::string& pairs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p + 1 < pairs.size(); p += 2) {
      const std::string pair{pairs[p], pairs[p + 1]};
      for (auto pos = x.find(pair); pos != std::string::npos; pos = x.find(pair)) {
        x.erase(pos, 2);
        changed = true;
      }
    }
  }
  return x.empty();
}

/// Maximum nesting depth of a bracket string (open symbols at even indices).
inline std::size_t nesting_depth(const std::string& x, const std::string& pairs) {
  std::size_t depth = 0;
  std::size_t best = 0;
  for (char c : x) {
    const auto at = pairs.find(c);
    if (at % 2 == 0) {
      best = std::max(best, ++depth);
    } else if (depth > 0) {
      --depth;
    }
  }
  return best;
}

inline std::size_t geometric_count(std::size_t base, std::size_t max_len) {
  std::size_t total = 0;
  std::size_t term = 1;
  for (std::size_t m = 0; m <= max_len; ++m) {
    total += term;
    term *= base;
  }
  return total;
}

inline std::size_t power(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// Leftmost maximum by a straightforward scan from the left.
inline std::size_t first_max(const std::vector<hardattn::Rational>& scores) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return best;
}

/// Smallest power of two strictly above n / gap, found by doubling.
inline std::uint64_t doubling_denominator(std::size_t n, const hardattn::Rational& gap) {
  std::uint64_t N = 1;
  while (!(hardattn::Rational(static_cast<long>(n), static_cast<long>(N)) < gap)) N *= 2;
  return N;
}

/// Big-endian bits of v, width w.
inline std::string bits_of(std::uint64_t v, std::size_t w) {
  std::string s;
  for (std::size_t b = w; b-- > 0;) s.push_back(((v >> b) & 1U) ? '1' : '0');
  return s;
}

inline std::string random_string(std::mt19937& rng, const std::vector<char>& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet.size() - 1);
  std::string s(len_dist(rng), ' ');
  for (auto& c : s) c = alphabet[sym(rng)];
  return s;
}

inline std::vector<hardattn::Rational> random_scores(std::mt19937& rng, std::size_t n, int range = 3) {
  std::uniform_int_distribution<int> dist(-range, range);
  std::vector<hardattn::Rational> out;
  for (std::size_t j = 0; j < n; ++j) out.emplace_back(dist(rng), 1 + (dist(rng) + range) % 2);
  for (auto& r : out) r.canonicalize();
  return out;
}

/// Random valid circuit: each gate draws its inputs from earlier vertices.
inline hardattn::circuit::Circuit random_circuit(std::mt19937& rng, std::size_t inputs, std::size_t gates,
                                                 std::size_t outputs) {
  using hardattn::circuit::Gate;
  using hardattn::circuit::GateKind;
  using hardattn::circuit::Ref;
  std::vector<Gate> gs;
  auto pick = [&](std::size_t defined) {
    std::uniform_int_distribution<std::size_t> d(0, inputs + defined - 1);
    const std::size_t v = d(rng);
    return v < inputs ? Ref::input(v) : Ref::gate(v - inputs);
  };
  std::uniform_int_distribution<int> kind(0, 9);
  for (std::size_t g = 0; g < gates; ++g) {
    const int k = (inputs + g == 0) ? 0 : kind(rng);
    Gate gate;
    if (k == 0) {
      gate.kind = (rng() % 2) ? GateKind::Const1 : GateKind::Const0;
    } else if (k <= 3) {
      gate.kind = GateKind::Not;
      gate.inputs = {pick(g)};
    } else {
      gate.kind = k <= 6 ? GateKind::And : GateKind::Or;
      const std::size_t fan = 1 + rng() % 4;
      for (std::size_t f = 0; f < fan; ++f) gate.inputs.push_back(pick(g));
    }
    gs.push_back(gate);
  }
  std::vector<Ref> outs;
  for (std::size_t o = 0; o < outputs; ++o) outs.push_back(pick(gates));
  return hardattn::circuit::Circuit("random", inputs, gs, outs);
}

/// Random partial truth table with distinct input rows.
inline hardattn::circuit::TruthTableSpec random_table(std::mt19937& rng, std::size_t in_width, std::size_t out_width) {
  hardattn::circuit::TruthTableSpec spec;
  spec.in_width = in_width;
  spec.out_width = out_width;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << in_width); ++v) {
    if (rng() % 3 == 0) continue;
    spec.rows.push_back({bits_of(v, in_width), bits_of(rng() % (std::uint64_t{1} << out_width), out_width)});
  }
  return spec;
}

}  // namespace testing_support
