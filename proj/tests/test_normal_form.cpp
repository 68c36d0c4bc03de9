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

#include <doctest.h>

#include <random>

#include "hardattn/encoding.hpp"
#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/normal_form.hpp"
#include "hardattn/zoo.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::nf;
namespace ts = testing_support;

namespace {

guhat::GuhatModel masked_contains_one(guhat::MaskMode mask) {
  auto m = zoo::build_contains_one_uhat();
  m.mask = mask;
  m.name = "contains-one-masked";
  return restricted::lift(m);
}

std::vector<guhat::GuhatModel> guhat_models() {
  return {zoo::build_palindromes(), zoo::build_one_star_guhat(), zoo::build_anbn_guhat(),
          restricted::lift(zoo::build_contains_one_uhat()), masked_contains_one(guhat::MaskMode::Future),
          masked_contains_one(guhat::MaskMode::Past)};
}

std::size_t max_n_for(const guhat::GuhatModel& m) { return m.alphabet.size() == 3 ? 7 : 8; }

}  // namespace

TEST_CASE("ell and bin") {
  CHECK(bin(6, 30) == "00110");
  CHECK(ell(1) == 1);
  CHECK(ell(3) == 2);
  CHECK(ell(4) == 3);
  CHECK(bin(1, 1) == "1");
  CHECK_THROWS_AS(bin(0, 4), InputError);
  CHECK_THROWS_AS(bin(5, 4), InputError);
  for (std::size_t n = 1; n <= 200; ++n) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) <= n) ++bits;  // smallest b with 2^b > n
    CHECK(ell(n) == bits);
    CHECK(bin(n, n) == ts::bits_of(n, bits));
  }
}

TEST_CASE("symbol encoding") {
  SymbolEncoding enc({'a', 'b', 'c'});
  CHECK(enc.width() == 3);
  CHECK(enc.code('a') == "000");
  CHECK(enc.code('c') == "010");
  CHECK(enc.code('$') == "011");
  CHECK(enc.decode("001") == 'b');
  CHECK(enc.encode_string("ba") == "001000");
  CHECK_THROWS_AS(enc.code('z'), InputError);
  CHECK_THROWS_AS(enc.encode_string("a$"), InputError);
  CHECK(SymbolEncoding({'0', '1'}).width() == 2);
}

TEST_CASE("encoding widths") {
  EncodingLayout layout{6, 1, 3};
  CHECK(layout.value_width(0) == 9);
  CHECK(layout.value_width(2) == 36);
  CHECK(layout.score_width(1) == 18);
  CHECK(encode_score(layout, 1, 0) == std::string(18, '0'));
  CHECK(encode_score(layout, 1, 1) == std::string(17, '0') + "1");
  CHECK_THROWS_AS(encode_score(layout, 1, std::uint64_t{1} << 18), InputError);
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(layout.value_width(k) > layout.value_width(k - 1));
    CHECK(layout.score_width(k) == 2 * layout.value_width(k - 1));
  }
}

TEST_CASE("palindromes tables at n = 6") {
  const auto model = zoo::build_palindromes();
  const auto nf = normalize(model, 6);
  CHECK(nf.mode == EnumerationMode::Reachable);
  CHECK(nf.layers == 2);
  CHECK(nf.heads == 1);
  CHECK(nf.tables[0].size() == 3 * 5 + 1);
  const auto a1 = nf.find_leaf('a', 1);
  const auto a5 = nf.find_leaf('a', 5);
  REQUIRE(a1);
  REQUIRE(a5);
  const auto t = nf.find_tuple(1, {*a1, *a5});
  REQUIRE(t);
  CHECK(nf.tables[1].translations[*t].render() == "(0,1)");
  const auto run = run_nf_detailed(nf, "abcca");
  CHECK_FALSE(run.accepted);
  CHECK(nf.tables[2].translations[run.entries[2][5]].render() == "(6,2)");
  CHECK(run_nf(nf, "abcba"));
  CHECK(nf.attention[0][0].rank_count <= 2);
  for (auto r : nf.attention[0][0].ranks) CHECK(r <= 1);
  for (const auto& x : langs::strings_of_length(model.alphabet, 5)) CHECK(run_nf(nf, x) == ts::is_palindrome(x));
  CHECK_THROWS_AS(run_nf(nf, "abc"), InputError);
  CHECK(nf_report(nf).find("LAYER 0 VALUES 16") != std::string::npos);
}

TEST_CASE("single-position normal form") {
  const auto nf = normalize(zoo::build_palindromes(), 1);
  CHECK(nf.tables[0].size() == 1);
  CHECK(nf.tables[0].renderings[0] == "($,1,1)");
  CHECK(run_nf(nf, ""));
}

TEST_CASE("property: normal forms agree with the source on every input") {
  for (const auto& model : guhat_models()) {
    for (std::size_t n = 1; n <= max_n_for(model); ++n) {
      const auto nf = normalize(model, n);
      CHECK(nf.layers == model.layers);
      CHECK(nf.heads == model.heads);
      for (const auto& x : langs::strings_of_length(model.alphabet, n - 1)) {
        CHECK(run_nf(nf, x) == guhat::accepts(model, x));
      }
    }
  }
}

TEST_CASE("property: translations follow the source semantics") {
  for (const auto& model : guhat_models()) {
    const std::size_t n = 5;
    const auto nf = normalize(model, n);
    const auto& leaves = nf.tables[0];
    for (EntryId e = 0; e < leaves.size(); ++e) {
      const Leaf& leaf = leaves.leaves[e];
      CHECK(leaves.translations[e] == model.input(leaf.symbol, leaf.position, leaf.length));
    }
    for (std::size_t k = 1; k <= nf.layers; ++k) {
      CHECK(nf.tables[k].size() <= ts::power(nf.tables[k - 1].size(), nf.heads + 1));
      for (EntryId e = 0; e < nf.tables[k].size(); ++e) {
        const auto& kids = nf.tables[k].children[e];
        REQUIRE(kids.size() == nf.heads + 1);
        std::vector<Value> heads;
        for (std::size_t h = 1; h < kids.size(); ++h) heads.push_back(nf.tables[k - 1].translations[kids[h]]);
        CHECK(nf.tables[k].translations[e] == model.activation[k - 1](nf.tables[k - 1].translations[kids[0]], heads));
      }
    }
    for (EntryId e = 0; e < nf.tables[nf.layers].size(); ++e) {
      CHECK((nf.output_bits[e] != 0) == model.output(nf.tables[nf.layers].translations[e]));
    }
  }
}

TEST_CASE("property: ranks preserve the order of visible scores and hide masked pairs") {
  std::mt19937 rng(29);
  for (const auto& model : guhat_models()) {
    const auto nf = normalize(model, 5);
    for (std::size_t k = 1; k <= nf.layers; ++k) {
      for (std::size_t h = 1; h <= nf.heads; ++h) {
        const auto& table = nf.tables[k - 1];
        const auto& ranks = nf.attention[k - 1][h - 1];
        const auto& fn = model.attention[k - 1][h - 1];
        const std::size_t side = table.size();
        std::vector<bool> used(ranks.rank_count, false);
        for (EntryId p = 0; p < side; ++p) {
          for (EntryId q = 0; q < side; ++q) used[ranks.at(p, q)] = true;
        }
        for (bool u : used) CHECK(u);
        for (int trial = 0; trial < 400; ++trial) {
          const EntryId p1 = rng() % side, q1 = rng() % side, p2 = rng() % side, q2 = rng() % side;
          const bool v1 = guhat::visible(model.mask, table.positions[p1], table.positions[q1]);
          const bool v2 = guhat::visible(model.mask, table.positions[p2], table.positions[q2]);
          if (!v1) CHECK(ranks.at(p1, q1) == 0);
          if (v1 && v2) {
            const Rational s1 = fn(table.translations[p1], table.translations[q1]);
            const Rational s2 = fn(table.translations[p2], table.translations[q2]);
            CHECK((ranks.at(p1, q1) <= ranks.at(p2, q2)) == (s1 <= s2));
          }
          if (v1 && !v2) CHECK(ranks.at(p1, q1) > ranks.at(p2, q2));
        }
      }
    }
  }
}

TEST_CASE("property: encodings round-trip and fit the width bounds") {
  for (const auto& model : guhat_models()) {
    const SymbolEncoding enc(model.alphabet);
    for (std::size_t n = 1; n <= 10; ++n) {
      NormalFormOptions options;
      const auto nf = normalize(model, n, options);
      const auto layout = nf.layout();
      const auto audit = audit_widths(nf, enc);
      CHECK(audit.ok);
      for (std::size_t k = 0; k <= nf.layers; ++k) {
        CHECK(nf.tables[k].size() <= ts::power(2, layout.value_width(k)));
        if (k >= 1) {
          for (std::size_t h = 1; h <= nf.heads; ++h) {
            CHECK(nf.attention[k - 1][h - 1].rank_count <= ts::power(2, std::min<std::size_t>(60, layout.score_width(k))));
          }
        }
        if (n <= 6) {
          for (EntryId e = 0; e < nf.tables[k].size(); ++e) {
            const auto bits = encode_value(nf, enc, k, e);
            CHECK(bits.size() == layout.value_width(k));
            CHECK(decode_value(nf, enc, k, bits) == e);
          }
        }
      }
    }
  }
}

TEST_CASE("superset enumeration is sound when reachable enumeration is over budget") {
  const auto model = zoo::build_palindromes("ab");
  NormalFormOptions options;
  options.max_inputs = 4;
  const auto nf = normalize(model, 5, options);
  CHECK(nf.mode == EnumerationMode::Superset);
  const auto reachable = normalize(model, 5);
  CHECK(nf.tables[1].size() >= reachable.tables[1].size());
  for (const auto& x : langs::strings_of_length(model.alphabet, 4)) CHECK(run_nf(nf, x) == ts::is_palindrome(x));
  CHECK(nf_report(nf).find("MODE superset") != std::string::npos);
}

TEST_CASE("budgets raise resource errors") {
  NormalFormOptions tight;
  tight.max_values = 3;
  CHECK_THROWS_AS(normalize(zoo::build_palindromes(), 5, tight), ResourceError);
  NormalFormOptions no_superset;
  no_superset.max_inputs = 2;
  no_superset.allow_superset = false;
  CHECK_THROWS_AS(normalize(zoo::build_palindromes(), 5, no_superset), ResourceError);
  CHECK_THROWS_AS(normalize(zoo::build_palindromes(), 0), InputError);
}
