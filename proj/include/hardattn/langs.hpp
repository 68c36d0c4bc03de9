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
#include <string>
#include <string_view>
#include <vector>

namespace hardattn::langs {

enum class LangKind { Parity, Majority, Equality, Dyck, DyckBounded, Shuffle, Palindromes, OneStar, AnBn };

/// A formal language with its alphabet. Bracket languages keep their
/// alphabet as consecutive (open, close) pairs.
struct LangSpec {
  LangKind kind = LangKind::Parity;
  std::size_t k = 0;  // bracket pair count, Dyck/Shuffle only
  std::size_t depth = 0;  // max nesting, DyckBounded only
  std::vector<char> alphabet;

  static LangSpec parity();
  static LangSpec majority();
  static LangSpec equality();
  /// `pairs` lists open/close symbols alternately; empty selects the
  /// canonical "[]", "()", "{}", "<>" sequence.
  static LangSpec dyck(std::size_t k, std::string_view pairs = {});
  static LangSpec dyck_bounded(std::size_t k, std::size_t depth, std::string_view pairs = {});
  static LangSpec shuffle(std::size_t k, std::string_view pairs = {});
  static LangSpec palindromes(std::string_view alphabet = "abc");
  static LangSpec one_star();
  static LangSpec anbn();

  /// Parses CLI names: parity, majority, equality, dyck:<k>, dyckd:<k>:<D>,
  /// shuffle:<k>, palindromes, onestar, anbn.
  static LangSpec parse(std::string_view name);

  std::string name() const;
};

/// Membership oracle. Throws InputError on a symbol outside the alphabet.
bool member(const LangSpec& lang, std::string_view x);

/// All strings of length 0..max_len, shorter first, then lexicographic in
/// alphabet order.
std::vector<std::string> enumerate_strings(const std::vector<char>& alphabet, std::size_t max_len);

/// All strings of exactly `len` symbols, lexicographic in alphabet order.
std::vector<std::string> strings_of_length(const std::vector<char>& alphabet, std::size_t len);

/// Σ_{m ≤ max_len} |alphabet|^m.
std::size_t count_strings(std::size_t alphabet_size, std::size_t max_len);

}  // namespace hardattn::langs
