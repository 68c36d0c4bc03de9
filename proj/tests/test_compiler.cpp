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

#include "hardattn/compiler.hpp"
#include "hardattn/encoding.hpp"
#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/netlist.hpp"
#include "hardattn/normal_form.hpp"
#include "hardattn/reduction.hpp"
#include "hardattn/zoo.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::compiler;
namespace ts = testing_support;

namespace {

struct Compiled {
  nf::NormalFormModel nf;
  CompileResult result;
};

Compiled build(const guhat::GuhatModel& model, std::size_t n, const CompileOptions& options = {}) {
  auto normal = nf::normalize(model, n);
  auto result = compile(normal, nf::SymbolEncoding(model.alphabet), options);
  return {std::move(normal), std::move(result)};
}

bool circuit_accepts(const circuit::Circuit& c, const guhat::GuhatModel& model, const std::string& x) {
  return c.evaluate(nf::SymbolEncoding(model.alphabet).encode_string(x)) == "1";
}

guhat::GuhatModel masked_contains_one(guhat::MaskMode mask) {
  auto m = zoo::build_contains_one_uhat();
  m.mask = mask;
  m.name = "contains-one-masked";
  return restricted::lift(m);
}

}  // namespace

TEST_CASE("depth budget") {
  CHECK(depth_budget(1) == 14);
  CHECK(depth_budget(2) == 25);
  CHECK(depth_budget(2, true) == 29);
}

TEST_CASE("palindromes at n = 4") {
  const auto model = zoo::build_palindromes();
  const auto c = build(model, 4);
  const auto& circ = c.result.circuit;
  CHECK(circ.num_inputs() == 3 * 3);
  CHECK(circuit_accepts(circ, model, "aba"));
  CHECK_FALSE(circuit_accepts(circ, model, "abc"));
  CHECK(c.result.report.depth == 25);
  const auto m = circuit::metrics(circ);
  CHECK(c.result.report.size == m.size);
  CHECK(c.result.report.depth == m.depth);
  const std::vector<std::string> stage_names{"input", "attention", "comparator", "argmax", "leftmost", "selection",
                                             "output"};
  REQUIRE(c.result.report.stages.size() == stage_names.size());
  std::size_t gates = 0;
  std::size_t wires = 0;
  for (std::size_t s = 0; s < stage_names.size(); ++s) {
    CHECK(c.result.report.stages[s].name == stage_names[s]);
    gates += c.result.report.stages[s].gates;
    wires += c.result.report.stages[s].wires;
  }
  CHECK(gates == circ.gates().size());
  CHECK(wires == m.size);
  CHECK(c.result.report.max_attention_block_depth <= 3);
  CHECK(c.result.report.max_comparator_block_depth <= 3);
  CHECK(c.result.report.output_block_depth <= 3);
  const auto text = format_report(c.result.report);
  CHECK(text.find("STAGE attention GATES ") != std::string::npos);
  CHECK(text.find("SIZE " + std::to_string(m.size) + " DEPTH 25\n") != std::string::npos);
}

TEST_CASE("n = 1 compiles to a constant circuit") {
  const auto model = zoo::build_palindromes();
  const auto c = build(model, 1);
  CHECK(c.result.circuit.num_inputs() == 0);
  CHECK(c.result.circuit.evaluate("") == "1");
}

TEST_CASE("compilation is deterministic") {
  const auto model = zoo::build_palindromes();
  CHECK(circuit::write_netlist(build(model, 5).result.circuit) == circuit::write_netlist(build(model, 5).result.circuit));
}

TEST_CASE("property: compiled circuits equal the transformer and selectors are one-hot") {
  std::vector<guhat::GuhatModel> models{zoo::build_palindromes(), zoo::build_one_star_guhat(),
                                        zoo::build_anbn_guhat(), restricted::lift(zoo::build_contains_one_uhat()),
                                        masked_contains_one(guhat::MaskMode::Future),
                                        masked_contains_one(guhat::MaskMode::Past)};
  for (const auto& model : models) {
    const std::size_t max_n = model.alphabet.size() == 3 ? 6 : 8;
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto c = build(model, n);
      const nf::SymbolEncoding enc(model.alphabet);
      CHECK(c.result.report.depth == depth_budget(model.layers));
      for (const auto& x : langs::strings_of_length(model.alphabet, n - 1)) {
        const auto bits = circuit::parse_bits(enc.encode_string(x));
        const auto gates = c.result.circuit.evaluate_gates(bits);
        CHECK((c.result.circuit.evaluate(std::span<const std::uint8_t>(bits)).front() != 0) == guhat::accepts(model, x));
        for (const auto& probe : c.result.selectors) {
          std::size_t ones = 0;
          for (auto r : probe.selectors) ones += circuit::Circuit::probe(r, bits, gates);
          CHECK(ones == 1);
        }
      }
    }
  }
}

TEST_CASE("unleveled and structured variants compute the same function") {
  const auto model = zoo::build_palindromes("ab");
  for (std::size_t n = 2; n <= 6; ++n) {
    CompileOptions raw;
    raw.leveled = false;
    CompileOptions structured;
    structured.structured_comparators = true;
    const auto a = build(model, n, raw);
    const auto b = build(model, n, structured);
    CHECK(a.result.report.depth <= depth_budget(2));
    CHECK(b.result.report.depth == depth_budget(2, true));
    for (const auto& x : langs::strings_of_length(model.alphabet, n - 1)) {
      CHECK(circuit_accepts(a.result.circuit, model, x) == ts::is_palindrome(x));
      CHECK(circuit_accepts(b.result.circuit, model, x) == ts::is_palindrome(x));
    }
  }
}

TEST_CASE("wire budget names the stage") {
  CompileOptions tiny;
  tiny.max_wires = 100;
  const auto model = zoo::build_palindromes();
  const auto normal = nf::normalize(model, 5);
  try {
    compile(normal, nf::SymbolEncoding(model.alphabet), tiny);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("attention stage") != std::string::npos);
  }
}

TEST_CASE("mismatched encoding is rejected") {
  const auto normal = nf::normalize(zoo::build_palindromes(), 3);
  CHECK_THROWS_AS(compile(normal, nf::SymbolEncoding({'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'})), InputError);
}

TEST_CASE("equality from a dyck circuit") {
  const auto c6 = dyck1_circuit(6);
  CHECK(c6.num_inputs() == 6);
  CHECK(c6.evaluate("000111") == "1");
  CHECK(c6.evaluate("001111") == "0");
  const auto e2 = equality_to_dyck_reduction(c6);
  CHECK(e2.num_inputs() == 2);
  CHECK(e2.evaluate("01") == "1");
  CHECK(e2.evaluate("11") == "0");
  CHECK_THROWS_AS(equality_to_dyck_reduction(dyck1_circuit(4)), InputError);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto e = equality_to_dyck_reduction(dyck1_circuit(3 * n));
    for (const auto& x : langs::strings_of_length({'0', '1'}, n)) {
      const auto ones = std::count(x.begin(), x.end(), '1');
      CHECK((e.evaluate(x) == "1") == (2 * ones == static_cast<std::ptrdiff_t>(n)));
    }
  }
}

TEST_CASE("property: the dyck circuit matches the rewriting oracle") {
  for (std::size_t m = 1; m <= 10; ++m) {
    const auto c = dyck1_circuit(m);
    CHECK(circuit::metrics(c).depth <= 3);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
      const auto bits = ts::bits_of(v, m);
      std::string word = bits;
      for (auto& ch : word) ch = ch == '0' ? '[' : ']';
      CHECK((c.evaluate(bits) == "1") == ts::dyck_by_rewriting(word, "[]"));
    }
  }
}
