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

#include "hardattn/langs.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "hardattn/errors.hpp"

namespace hardattn::langs {

namespace {

constexpr std::string_view kCanonicalPairs = "[](){}<>";

std::vector<char> bracket_alphabet(std::size_t k, std::string_view pairs) {
  if (k == 0) throw InputError("bracket languages need k >= 1");
  if (pairs.empty()) {
    if (2 * k > kCanonicalPairs.size()) {
      throw InputError("no canonical bracket symbols for k = " + std::to_string(k) + "; pass explicit pairs");
    }
    pairs = kCanonicalPairs.substr(0, 2 * k);
  }
  if (pairs.size() != 2 * k) throw InputError("bracket alphabet must list exactly 2k symbols");
  std::vector<char> out(pairs.begin(), pairs.end());
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("bracket alphabet has repeated symbols");
  }
  return out;
}

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw InputError("bad language parameter in '" + std::string(whole) + "'");
  }
  return value;
}

// Index of symbol c in the alphabet; throws for foreign symbols.
std::size_t symbol_index(const LangSpec& lang, char c) {
  auto it = std::find(lang.alphabet.begin(), lang.alphabet.end(), c);
  if (it == lang.alphabet.end()) {
    throw InputError(std::string("symbol '") + c + "' is not in the alphabet of " + lang.name());
  }
  return static_cast<std::size_t>(it - lang.alphabet.begin());
}

bool dyck_scan(const LangSpec& lang, std::string_view x, std::size_t max_depth) {
  std::vector<std::size_t> stack;
  for (char c : x) {
    std::size_t idx = symbol_index(lang, c);
    std::size_t type = idx / 2;
    if (idx % 2 == 0) {
      stack.push_back(type);
      if (stack.size() > max_depth) return false;
    } else {
      if (stack.empty() || stack.back() != type) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace

LangSpec LangSpec::parity() { return {LangKind::Parity, 0, 0, {'0', '1'}}; }
LangSpec LangSpec::majority() { return {LangKind::Majority, 0, 0, {'0', '1'}}; }
LangSpec LangSpec::equality() { return {LangKind::Equality, 0, 0, {'0', '1'}}; }

LangSpec LangSpec::dyck(std::size_t k, std::string_view pairs) {
  return {LangKind::Dyck, k, 0, bracket_alphabet(k, pairs)};
}

LangSpec LangSpec::dyck_bounded(std::size_t k, std::size_t depth, std::string_view pairs) {
  if (depth == 0) throw InputError("bounded Dyck needs D >= 1");
  return {LangKind::DyckBounded, k, depth, bracket_alphabet(k, pairs)};
}

LangSpec LangSpec::shuffle(std::size_t k, std::string_view pairs) {
  return {LangKind::Shuffle, k, 0, bracket_alphabet(k, pairs)};
}

LangSpec LangSpec::palindromes(std::string_view alphabet) {
  if (alphabet.empty()) throw InputError("alphabet must be nonempty");
  return {LangKind::Palindromes, 0, 0, std::vector<char>(alphabet.begin(), alphabet.end())};
}

LangSpec LangSpec::one_star() { return {LangKind::OneStar, 0, 0, {'0', '1'}}; }
LangSpec LangSpec::anbn() { return {LangKind::AnBn, 0, 0, {'a', 'b'}}; }

LangSpec LangSpec::parse(std::string_view name) {
  if (name == "parity") return parity();
  if (name == "majority") return majority();
  if (name == "equality") return equality();
  if (name == "palindromes") return palindromes();
  if (name == "onestar") return one_star();
  if (name == "anbn") return anbn();

  auto colon = name.find(':');
  std::string_view head = name.substr(0, colon);
  if (colon != std::string_view::npos) {
    std::string_view rest = name.substr(colon + 1);
    if (head == "dyck") return dyck(parse_count(rest, name));
    if (head == "shuffle") return shuffle(parse_count(rest, name));
    if (head == "dyckd") {
      auto second = rest.find(':');
      if (second == std::string_view::npos) throw InputError("expected dyckd:<k>:<D>");
      return dyck_bounded(parse_count(rest.substr(0, second), name), parse_count(rest.substr(second + 1), name));
    }
  }
  throw InputError("unknown language '" + std::string(name) +
                   "' (expected parity, majority, equality, dyck:<k>, dyckd:<k>:<D>, shuffle:<k>, "
                   "palindromes, onestar, anbn)");
}

std::string LangSpec::name() const {
  switch (kind) {
    case LangKind::Parity: return "parity";
    case LangKind::Majority: return "majority";
    case LangKind::Equality: return "equality";
    case LangKind::Dyck: return "dyck:" + std::to_string(k);
    case LangKind::DyckBounded: return "dyckd:" + std::to_string(k) + ":" + std::to_string(depth);
    case LangKind::Shuffle: return "shuffle:" + std::to_string(k);
    case LangKind::Palindromes: return "palindromes";
    case LangKind::OneStar: return "onestar";
    case LangKind::AnBn: return "anbn";
  }
  return "?";
}

bool member(const LangSpec& lang, std::string_view x) {
  switch (lang.kind) {
    case LangKind::Parity:
    case LangKind::Majority:
    case LangKind::Equality: {
      std::int64_t ones = 0;
      for (char c : x) ones += static_cast<std::int64_t>(symbol_index(lang, c));
      std::int64_t zeros = static_cast<std::int64_t>(x.size()) - ones;
      if (lang.kind == LangKind::Parity) return ones % 2 == 0;
      if (lang.kind == LangKind::Majority) return ones >= zeros;
      return ones == zeros;
    }
    case LangKind::Dyck:
      return dyck_scan(lang, x, x.size() + 1);
    case LangKind::DyckBounded:
      return dyck_scan(lang, x, lang.depth);
    case LangKind::Shuffle: {
      std::vector<std::int64_t> balance(lang.k, 0);
      for (char c : x) {
        std::size_t idx = symbol_index(lang, c);
        balance[idx / 2] += (idx % 2 == 0) ? 1 : -1;
        if (balance[idx / 2] < 0) return false;
      }
      return std::all_of(balance.begin(), balance.end(), [](std::int64_t b) { return b == 0; });
    }
    case LangKind::Palindromes: {
      for (char c : x) symbol_index(lang, c);
      return std::equal(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2), x.rbegin());
    }
    case LangKind::OneStar: {
      bool ok = true;
      for (char c : x) ok = (symbol_index(lang, c) == 1) && ok;
      return ok;
    }
    case LangKind::AnBn: {
      for (char c : x) symbol_index(lang, c);
      if (x.empty() || x.size() % 2 != 0) return false;
      std::size_t half = x.size() / 2;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != (i < half ? lang.alphabet[0] : lang.alphabet[1])) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<std::string> strings_of_length(const std::vector<char>& alphabet, std::size_t len) {
  if (alphabet.empty()) return len == 0 ? std::vector<std::string>{""} : std::vector<std::string>{};
  std::vector<std::string> out;
  std::vector<std::size_t> digits(len, 0);
  std::string current(len, alphabet[0]);
  while (true) {
    out.push_back(current);
    // Odometer increment, rightmost digit fastest.
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < alphabet.size()) {
        current[pos] = alphabet[digits[pos]];
        break;
      }
      digits[pos] = 0;
      current[pos] = alphabet[0];
      if (pos == 0) return out;
    }
    if (len == 0) return out;
  }
}

std::vector<std::string> enumerate_strings(const std::vector<char>& alphabet, std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t m = 0; m <= max_len; ++m) {
    auto level = strings_of_length(alphabet, m);
    out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
  }
  return out;
}

std::size_t count_strings(std::size_t alphabet_size, std::size_t max_len) {
  std::size_t total = 0;
  std::size_t power = 1;
  for (std::size_t m = 0; m <= max_len; ++m) {
    total += power;
    power *= alphabet_size;
  }
  return total;
}

}  // namespace hardattn::langs
