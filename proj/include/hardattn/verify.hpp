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
#include <optional>
#include <string>
#include <vector>

#include "hardattn/compiler.hpp"
#include "hardattn/conversion.hpp"
#include "hardattn/normal_form.hpp"
#include "hardattn/zoo.hpp"

namespace hardattn::verify {

struct Budgets {
  nf::NormalFormOptions normal_form;
  compiler::CompileOptions compile;
  std::size_t jobs = 1;
};

/// Throws ModelError for averaging models.
void require_compilable(const zoo::ZooEntry& entry);

/// Normal form at length n followed by compilation.
compiler::CompileResult compile_entry(const zoo::ZooEntry& entry, std::size_t n, const Budgets& budgets = {});

struct Mismatch {
  std::string input;
  bool model = false;
  bool circuit = false;
};

struct EquivReport {
  std::string model;
  std::vector<std::size_t> lengths;
  std::size_t checked = 0;
  std::vector<Mismatch> mismatches;  // ordered by length, then input order

  bool ok() const { return mismatches.empty(); }
  std::optional<Mismatch> first_counterexample() const;
};

struct EquivOptions {
  std::size_t max_len = 0;
  std::size_t min_len = 0;
  Budgets budgets;
  /// Test hook: flips the circuit output on the first input of length max_len.
  bool inject_fault = false;
};

/// For each m in [min_len, max_len], compiles at n = m+1 and compares the
/// circuit with the transformer on every input of length m.
EquivReport equiv(const zoo::ZooEntry& entry, const EquivOptions& options);
std::string format_equiv(const EquivReport& report);

struct GrowthRow {
  std::size_t n = 0;
  std::size_t size = 0;
  std::size_t depth = 0;
  double seconds = 0;
};

struct GrowthReport {
  std::string model;
  std::vector<GrowthRow> rows;
  double slope = 0;
  bool depth_constant = true;
  bool monotone = true;
};

/// Least-squares slope of log size against log n over rows with n >= min_n.
/// Returns 0 with fewer than two such rows.
double loglog_slope(const std::vector<GrowthRow>& rows, std::size_t min_n = 4);

GrowthReport growth(const zoo::ZooEntry& entry, std::size_t n_lo, std::size_t n_hi, const Budgets& budgets = {});
/// Wall-clock columns appear only when `timing` is set, so default output is
/// byte-stable.
std::string format_growth(const GrowthReport& report, bool timing = false);

struct ConvertReport {
  std::string model;
  std::size_t n = 0;
  std::uint64_t denominator = 0;
  std::string min_gap;
  bool gap_fallback = false;
  std::size_t checked = 0;
  std::size_t agree = 0;
  std::size_t ties = 0;

  bool ok() const { return agree == checked && ties == 0; }
};

/// Throws ModelError unless the entry is a unique-attention restricted model.
ConvertReport convert(const zoo::ZooEntry& entry, std::size_t n,
                      std::size_t budget = restricted::kDefaultEnumerationBudget);
std::string format_convert(const ConvertReport& report);

struct ReduceReport {
  std::size_t n = 0;
  std::size_t dyck_size = 0;
  std::size_t dyck_depth = 0;
  std::size_t checked = 0;
  std::size_t agree = 0;

  bool ok() const { return agree == checked; }
};

inline constexpr std::size_t kMaxReduceLength = 8;

/// Throws ResourceError when n exceeds max_n.
ReduceReport reduce(std::size_t n, std::size_t max_n = kMaxReduceLength);
std::string format_reduce(const ReduceReport& report);

}  // namespace hardattn::verify
