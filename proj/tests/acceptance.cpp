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

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hardattn/conversion.hpp"
#include "hardattn/dnf.hpp"
#include "hardattn/guhat.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/netlist.hpp"
#include "hardattn/normal_form.hpp"
#include "hardattn/reduction.hpp"
#include "hardattn/restricted.hpp"
#include "hardattn/verify.hpp"
#include "hardattn/zoo.hpp"
#include "support.hpp"

using namespace hardattn;
namespace ts = testing_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<zoo::ZooEntry> compiled_models() {
  std::vector<zoo::ZooEntry> out;
  for (const auto& name : zoo::names()) {
    auto entry = zoo::registry(name);
    if (entry.compilable()) out.push_back(std::move(entry));
  }
  return out;
}

Outcome figure_trace() {
  const auto start = Clock::now();
  const std::string cmd = std::string(HARDATTN_CLI_PATH) + " simulate palindromes abcca --trace";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {false, "cannot start cli"};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  const double elapsed = seconds_since(start);
  const bool rejected = WIFEXITED(status) && WEXITSTATUS(status) == 1;
  const bool same = out == slurp(HARDATTN_GOLDEN_DIR "/palindromes_abcca.trace");
  return {same && rejected && elapsed < 1.0,
          std::string(same ? "byte-exact" : "differs") + ", " + std::to_string(elapsed) + "s"};
}

Outcome palindromes_oracle() {
  const auto model = zoo::build_palindromes();
  std::size_t checked = 0;
  std::size_t agree = 0;
  for (const auto& x : langs::enumerate_strings(model.alphabet, 8)) {
    ++checked;
    agree += guhat::accepts(model, x) == ts::is_palindrome(x);
  }
  return {checked == 9841 && agree == checked, std::to_string(agree) + "/" + std::to_string(checked)};
}

Outcome normal_form_equivalence() {
  std::size_t checked = 0;
  std::size_t agree = 0;
  for (const auto& entry : compiled_models()) {
    const auto model = entry.as_guhat();
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto nf = nf::normalize(model, n);
      for (const auto& x : langs::strings_of_length(model.alphabet, n - 1)) {
        ++checked;
        agree += nf::run_nf(nf, x) == guhat::accepts(model, x);
      }
    }
  }
  const auto nf = nf::normalize(zoo::build_palindromes(), 6);
  const auto a1 = nf.find_leaf('a', 1);
  const auto a5 = nf.find_leaf('a', 5);
  const auto t1 = (a1 && a5) ? nf.find_tuple(1, {*a1, *a5}) : std::nullopt;
  const bool spot1 = t1 && nf.tables[1].translations[*t1].render() == "(0,1)";
  const auto run = nf::run_nf_detailed(nf, "abcca");
  const bool spot2 = nf.tables[2].translations[run.entries[2][5]].render() == "(6,2)";
  return {agree == checked && spot1 && spot2, std::to_string(agree) + "/" + std::to_string(checked) +
                                                  ", t_1 " + (spot1 ? "ok" : "bad") + ", t_2 " +
                                                  (spot2 ? "ok" : "bad")};
}

Outcome width_audit() {
  std::size_t audited = 0;
  std::vector<std::string> violations;
  for (const auto& entry : compiled_models()) {
    const auto model = entry.as_guhat();
    const nf::SymbolEncoding encoding(model.alphabet);
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto audit = nf::audit_widths(nf::normalize(model, n), encoding);
      ++audited;
      for (const auto& v : audit.violations) violations.push_back(entry.name + " n=" + std::to_string(n) + ": " + v);
    }
  }
  return {violations.empty(), std::to_string(audited) + " tables, " + std::to_string(violations.size()) +
                                  " violations" + (violations.empty() ? "" : " (" + violations.front() + ")")};
}

Outcome dnf_tables() {
  const auto start = Clock::now();
  std::size_t good = 0;
  std::size_t worst_size = 0;
  std::size_t worst_depth = 0;
  for (unsigned table = 0; table < 256; ++table) {
    circuit::TruthTableSpec spec;
    spec.in_width = 3;
    spec.out_width = 1;
    for (unsigned row = 0; row < 8; ++row)
      spec.rows.push_back({ts::bits_of(row, 3), ((table >> row) & 1U) ? "1" : "0"});
    const auto c = circuit::synth_dnf(spec);
    const auto m = circuit::metrics(c);
    worst_size = std::max(worst_size, m.size);
    worst_depth = std::max(worst_depth, m.depth);
    bool exact = true;
    for (unsigned row = 0; row < 8; ++row)
      exact = exact && c.evaluate(ts::bits_of(row, 3)) == (((table >> row) & 1U) ? "1" : "0");
    good += exact && m.depth <= 3 && m.size <= 35;
  }
  const double elapsed = seconds_since(start);
  return {good == 256 && elapsed < 1.0, std::to_string(good) + "/256, max size " + std::to_string(worst_size) +
                                            ", max depth " + std::to_string(worst_depth)};
}

Outcome circuit_equivalence() {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  for (const auto& entry : compiled_models()) {
    verify::EquivOptions options;
    options.max_len = entry.name == "palindromes" ? 6 : 8;
    options.budgets.jobs = jobs();
    const auto report = verify::equiv(entry, options);
    checked += report.checked;
    mismatches += report.mismatches.size();
  }
  return {checked > 0 && mismatches == 0,
          std::to_string(checked) + " inputs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome constant_depth() {
  const auto report = verify::growth(zoo::registry("palindromes"), 2, 9);
  const std::size_t depth = report.rows.front().depth;
  const bool ok = report.depth_constant && depth <= compiler::depth_budget(2);
  return {ok, "depth " + std::to_string(depth) + (report.depth_constant ? " at every n" : " varies")};
}

Outcome polynomial_size() {
  bool ok = true;
  std::string detail;
  for (const auto& entry : compiled_models()) {
    const auto report = verify::growth(entry, 4, 12);
    ok = ok && report.slope <= 8 && report.monotone;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s %.2f%s", detail.empty() ? "" : ", ", entry.name.c_str(), report.slope,
                  report.monotone ? "" : " (non-monotone)");
    detail += buf;
  }
  return {ok, detail};
}

Outcome conversion() {
  const auto entry = zoo::registry("contains-one");
  const auto& source = std::get<restricted::RestrictedModel>(entry.model);
  const auto plan = restricted::plan_conversion(source, 8);
  const auto converted = restricted::uhat_to_ahat(source, plan);
  const auto inputs = langs::strings_of_length({'0', '1'}, 7);
  std::size_t agree = 0;
  for (const auto& x : inputs) {
    const bool decision = restricted::restricted_accepts(converted, x);
    agree += decision == restricted::restricted_accepts(source, x) && decision == ts::contains_one(x);
  }
  const auto ties = restricted::tie_audit(converted, inputs);
  const bool ok = agree == 128 && inputs.size() == 128 && ties == 0 && plan.denominator == 16 && plan.min_gap == 1;
  return {ok, std::to_string(agree) + "/" + std::to_string(inputs.size()) + ", ties " + std::to_string(ties) +
                  ", N " + std::to_string(plan.denominator) + ", gap " + plan.min_gap.get_str()};
}

Outcome reduction() {
  const auto start = Clock::now();
  std::size_t checked = 0;
  std::size_t agree = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto e = compiler::equality_to_dyck_reduction(compiler::dyck1_circuit(3 * n));
    for (const auto& x : langs::strings_of_length({'0', '1'}, n)) {
      const auto ones = static_cast<std::size_t>(std::count(x.begin(), x.end(), '1'));
      ++checked;
      agree += (e.evaluate(x) == "1") == (2 * ones == n);
    }
  }
  const double elapsed = seconds_since(start);
  return {checked == 62 && agree == checked && elapsed < 60.0,
          std::to_string(agree) + "/" + std::to_string(checked)};
}

Outcome majority() {
  const auto model = zoo::build_majority_ahat();
  std::size_t checked = 0;
  std::size_t agree = 0;
  for (const auto& x : langs::enumerate_strings({'0', '1'}, 14)) {
    ++checked;
    agree += restricted::restricted_accepts(model, x) == ts::count_majority(x);
  }
  return {agree == checked, std::to_string(agree) + "/" + std::to_string(checked)};
}

Outcome netlist_round_trip() {
  std::size_t circuits = 0;
  std::size_t identical = 0;
  for (const auto& entry : compiled_models()) {
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto compiled = verify::compile_entry(entry, n);
      const auto first = circuit::write_netlist(compiled.circuit);
      const auto second = circuit::write_netlist(circuit::read_netlist(first));
      ++circuits;
      identical += first == second;
    }
  }
  return {identical == circuits, std::to_string(identical) + "/" + std::to_string(circuits) + " circuits"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"figure trace", figure_trace},
      {"palindromes oracle", palindromes_oracle},
      {"normal form equivalence", normal_form_equivalence},
      {"width audit", width_audit},
      {"dnf synthesis", dnf_tables},
      {"circuit equivalence", circuit_equivalence},
      {"constant depth", constant_depth},
      {"polynomial size", polynomial_size},
      {"uhat to ahat conversion", conversion},
      {"equality reduction", reduction},
      {"majority ahat", majority},
      {"netlist round trip", netlist_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds_since(start));
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << (i + 1) << " " << criteria[i].first << ": " << outcome.detail
              << " [" << timing << "]" << std::endl;
    failed += outcome.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
