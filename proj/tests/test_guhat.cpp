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

#include <fstream>
#include <random>
#include <sstream>

#include "hardattn/errors.hpp"
#include "hardattn/guhat.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/zoo.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::guhat;
namespace ts = testing_support;

namespace {

std::vector<Rational> scores(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::string golden_trace() {
  std::ifstream in(HARDATTN_GOLDEN_DIR "/palindromes_abcca.trace", std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Single-layer model whose head scores every key 1 and reports the chosen
/// position; used to observe masking.
GuhatModel echo_model(MaskMode mask) {
  GuhatModel m;
  m.name = "echo";
  m.alphabet = {'a'};
  m.input = [](char s, std::size_t i, std::size_t n) { return Value::leaf(s, i, n); };
  m.attention = {{[](const Value&, const Value&) { return Rational(1); }}};
  m.activation = {[](const Value&, std::span<const Value> heads) {
    return Value::integer(static_cast<std::int64_t>(heads[0].as_leaf().position));
  }};
  m.output = [](const Value& v) { return v.as_int() == 1; };
  m.mask = mask;
  return m;
}

}  // namespace

TEST_CASE("uha_pool examples") {
  const std::vector<Value> vals{Value::integer(10), Value::integer(20), Value::integer(30)};
  CHECK(uha_pool(vals, scores({0, 5, 5})) == Value::integer(20));
  CHECK(uha_pool(vals, scores({2, 2, 2})) == Value::integer(10));
  CHECK(uha_pool(vals, scores({1, 0, 0})) == Value::integer(10));
  CHECK_THROWS_AS(uha_pool(std::vector<Value>{}, std::vector<Rational>{}), InputError);
  CHECK_THROWS_AS(leftmost_argmax(std::vector<Rational>{}), InputError);
}

TEST_CASE("aha_pool examples") {
  const std::vector<RationalVector> two{{Rational(1)}, {Rational(3)}};
  CHECK(aha_pool(two, scores({7, 7})) == RationalVector{Rational(2)});
  CHECK(aha_pool(two, scores({7, 1})) == RationalVector{Rational(1)});
  const std::vector<RationalVector> three{{Rational(1)}, {Rational(2)}, {Rational(6)}};
  CHECK(aha_pool(three, scores({0, 0, 0})) == RationalVector{Rational(3)});
  const std::vector<RationalVector> thirds{{Rational(1)}, {Rational(0)}, {Rational(1)}};
  CHECK(aha_pool(thirds, scores({4, 4, 4})) == RationalVector{Rational(2, 3)});
  CHECK_THROWS_AS(aha_pool(std::vector<RationalVector>{}, std::vector<Rational>{}), InputError);
  const std::vector<RationalVector> mixed{{Rational(1)}, {Rational(1), Rational(2)}};
  CHECK_THROWS_AS(aha_pool(mixed, scores({0, 0})), InputError);
}

TEST_CASE("apply_mask examples") {
  const auto s = scores({3, 1, 4, 1});
  auto kept = apply_mask(MaskMode::Future, 1, s);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].first == 1);
  kept = apply_mask(MaskMode::Past, 4, s);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].first == 4);
  CHECK(apply_mask(MaskMode::None, 2, s).size() == 4);
  CHECK(apply_mask(MaskMode::Future, 3, s).size() == 3);
  CHECK(apply_mask(MaskMode::Past, 2, s).size() == 3);
  CHECK(visible(MaskMode::Future, 3, 2));
  CHECK_FALSE(visible(MaskMode::Future, 2, 3));
  CHECK(visible(MaskMode::Past, 2, 3));
}

TEST_CASE("property: pooling rules agree with the scan oracle") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto s = ts::random_scores(rng, n);
    CHECK(leftmost_argmax(s) == ts::first_max(s));
    std::vector<RationalVector> vals;
    std::vector<Value> wrapped;
    for (std::size_t j = 0; j < n; ++j) {
      vals.push_back({Rational(static_cast<long>(rng() % 9)), Rational(static_cast<long>(j))});
      wrapped.push_back(Value::vector(vals.back()));
    }
    const auto winners = argmax_positions(s);
    CHECK(winners.front() == ts::first_max(s));
    if (winners.size() == 1) CHECK(Value::vector(aha_pool(vals, s)) == uha_pool(wrapped, s));
    RationalVector mean(2, Rational(0));
    for (auto j : winners) {
      mean[0] += vals[j][0];
      mean[1] += vals[j][1];
    }
    for (auto& c : mean) c /= static_cast<long>(winners.size());
    CHECK(aha_pool(vals, s) == mean);
    for (MaskMode mode : {MaskMode::None, MaskMode::Future, MaskMode::Past}) {
      const std::size_t i = 1 + rng() % n;
      const auto kept = apply_mask(mode, i, s);
      CHECK_FALSE(kept.empty());
      for (const auto& [j, score] : kept) {
        CHECK(visible(mode, i, j));
        CHECK(score == s[j - 1]);
      }
    }
  }
}

TEST_CASE("palindromes trace reproduces the worked example byte for byte") {
  const auto model = zoo::build_palindromes();
  const auto result = run(model, "abcca");
  CHECK_FALSE(result.accepted);
  CHECK(render_trace(result.trace) == golden_trace());
  CHECK(result.trace.values[2][5].render() == "(6,2)");
  REQUIRE(result.trace.heads.size() == 2);
  for (const auto& head : result.trace.heads) {
    CHECK(head.scores.size() == 6);
    for (const auto& row : head.scores) CHECK(row.size() == 6);
  }
}

TEST_CASE("palindromes accepting runs") {
  const auto model = zoo::build_palindromes();
  const auto yes = run(model, "abcba");
  CHECK(yes.accepted);
  CHECK(yes.trace.values[2][5].render() == "(6,6)");
  const auto empty = run(model, "");
  CHECK(empty.accepted);
  CHECK(empty.trace.values[1][0].render() == "(1,1)");
  CHECK_THROWS_AS(run(model, "abd"), InputError);
  CHECK_THROWS_AS(run(model, "ab$"), InputError);
}

TEST_CASE("palindromes agree with the reverse-compare oracle up to length 8") {
  const auto model = zoo::build_palindromes();
  std::size_t checked = 0;
  for (const auto& x : langs::enumerate_strings(model.alphabet, 8)) {
    CHECK(accepts(model, x) == ts::is_palindrome(x));
    ++checked;
  }
  CHECK(checked == ts::geometric_count(3, 8));
}

TEST_CASE("property: traced and untraced runs agree and are deterministic") {
  const auto model = zoo::build_palindromes("ab");
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = ts::random_string(rng, model.alphabet, 9);
    const auto a = run(model, x);
    const auto b = run(model, x);
    CHECK(a.accepted == accepts(model, x));
    CHECK(render_trace(a.trace) == render_trace(b.trace));
    for (const auto& head : a.trace.heads) {
      for (std::size_t i = 0; i < head.targets.size(); ++i) {
        for (auto j : head.targets[i]) CHECK(visible(model.mask, i + 1, j));
      }
    }
  }
}

TEST_CASE("masking restricts which positions are selected") {
  // All keys tie, so the leftmost visible one wins.
  const auto future = run(echo_model(MaskMode::Future), "aaa");
  const auto past = run(echo_model(MaskMode::Past), "aaa");
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(future.trace.values[1][i].as_int() == 1);
    CHECK(past.trace.values[1][i].as_int() == static_cast<std::int64_t>(i + 1));
  }
}

TEST_CASE("model validation and error context") {
  GuhatModel bad = echo_model(MaskMode::None);
  bad.attention.clear();
  CHECK_THROWS_AS(bad.validate(), InputError);
  GuhatModel throws = echo_model(MaskMode::None);
  throws.activation = {[](const Value& self, std::span<const Value>) { return Value::integer(self.as_int()); }};
  try {
    run(throws, "a");
    FAIL("expected a model error");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("layer 1") != std::string::npos);
  }
}

TEST_CASE("value rendering and ordering") {
  CHECK(Value::leaf('a', 1, 6).render() == "(a,1,6)");
  CHECK(Value::tuple({Value::integer(0), Value::integer(1)}).render() == "(0,1)");
  CHECK(Value::vector({Rational(1, 2), Rational(-3)}).render() == "(1/2,-3)");
  CHECK(Value::tuple({Value::integer(1)}) == Value::tuple({Value::integer(1)}));
  CHECK(Value::integer(1) < Value::integer(2));
  CHECK_THROWS_AS(Value::integer(1).as_leaf(), InputError);
}
