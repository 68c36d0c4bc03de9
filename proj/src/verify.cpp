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

#include "hardattn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "hardattn/conversion.hpp"
#include "hardattn/encoding.hpp"
#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/reduction.hpp"

namespace hardattn::verify {
namespace {

/// Runs body(begin, end, worker) over [0, count) split into `jobs` contiguous
/// chunks.
template <typename Body>
void parallel_chunks(std::size_t count, std::size_t jobs, Body body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs <= 1) {
    body(0, count, 0);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    workers.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void require_compilable(const zoo::ZooEntry& entry) {
  if (!entry.compilable()) throw ModelError("averaging models are not compilable");
}

compiler::CompileResult compile_entry(const zoo::ZooEntry& entry, std::size_t n, const Budgets& budgets) {
  require_compilable(entry);
  if (n == 0) throw InputError("length n counts the end marker and must be at least 1");
  const auto model = entry.as_guhat();
  const auto normal = nf::normalize(model, n, budgets.normal_form);
  return compiler::compile(normal, nf::SymbolEncoding(model.alphabet), budgets.compile);
}

std::optional<Mismatch> EquivReport::first_counterexample() const {
  if (mismatches.empty()) return std::nullopt;
  return mismatches.front();
}

EquivReport equiv(const zoo::ZooEntry& entry, const EquivOptions& options) {
  require_compilable(entry);
  if (options.min_len > options.max_len) throw InputError("minimum length exceeds maximum length");
  const auto model = entry.as_guhat();
  const nf::SymbolEncoding encoding(model.alphabet);
  EquivReport report;
  report.model = entry.name;
  for (std::size_t m = options.min_len; m <= options.max_len; ++m) {
    const auto compiled = compile_entry(entry, m + 1, options.budgets);
    const auto inputs = langs::strings_of_length(model.alphabet, m);
    const std::size_t jobs = options.budgets.jobs;
    std::vector<std::vector<std::pair<std::size_t, Mismatch>>> found(std::max<std::size_t>(1, jobs));
    parallel_chunks(inputs.size(), jobs, [&](std::size_t begin, std::size_t end, std::size_t worker) {
      for (std::size_t idx = begin; idx < end; ++idx) {
        const std::string& x = inputs[idx];
        const auto bits = circuit::parse_bits(encoding.encode_string(x));
        bool circuit_bit = compiled.circuit.evaluate(std::span<const std::uint8_t>(bits)).front() != 0;
        if (options.inject_fault && m == options.max_len && idx == 0) circuit_bit = !circuit_bit;
        const bool model_bit = guhat::accepts(model, x, entry.pooling());
        if (circuit_bit != model_bit) found[worker].push_back({idx, Mismatch{x, model_bit, circuit_bit}});
      }
    });
    std::vector<std::pair<std::size_t, Mismatch>> merged;
    for (auto& part : found) merged.insert(merged.end(), part.begin(), part.end());
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [idx, mismatch] : merged) report.mismatches.push_back(std::move(mismatch));
    report.lengths.push_back(m);
    report.checked += inputs.size();
  }
  return report;
}

std::string format_equiv(const EquivReport& report) {
  std::ostringstream out;
  out << "MODEL " << report.model << '\n';
  out << "LENGTHS";
  for (auto m : report.lengths) out << ' ' << m;
  out << '\n';
  out << "CHECKED " << report.checked << '\n';
  out << "MISMATCHES " << report.mismatches.size() << '\n';
  if (auto first = report.first_counterexample()) {
    out << "COUNTEREXAMPLE \"" << first->input << "\" MODEL " << first->model << " CIRCUIT " << first->circuit
        << '\n';
  }
  return out.str();
}

double loglog_slope(const std::vector<GrowthRow>& rows, std::size_t min_n) {
  std::vector<std::pair<double, double>> points;
  for (const auto& r : rows) {
    if (r.n >= min_n && r.size > 0) points.emplace_back(std::log(static_cast<double>(r.n)), std::log(static_cast<double>(r.size)));
  }
  if (points.size() < 2) return 0;
  double mx = 0;
  double my = 0;
  for (auto [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxy = 0;
  double sxx = 0;
  for (auto [x, y] : points) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx == 0 ? 0 : sxy / sxx;
}

GrowthReport growth(const zoo::ZooEntry& entry, std::size_t n_lo, std::size_t n_hi, const Budgets& budgets) {
  require_compilable(entry);
  if (n_lo == 0 || n_lo > n_hi) {
    throw InputError("growth range must satisfy 1 <= n_lo <= n_hi, got " + std::to_string(n_lo) + ".." +
                     std::to_string(n_hi));
  }
  GrowthReport report;
  report.model = entry.name;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const auto compiled = compile_entry(entry, n, budgets);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.rows.push_back({n, compiled.report.size, compiled.report.depth, elapsed.count()});
  }
  for (std::size_t r = 1; r < report.rows.size(); ++r) {
    if (report.rows[r].depth != report.rows[0].depth) report.depth_constant = false;
    if (report.rows[r].size < report.rows[r - 1].size) report.monotone = false;
  }
  report.slope = loglog_slope(report.rows);
  return report;
}

std::string format_growth(const GrowthReport& report, bool timing) {
  std::ostringstream out;
  out << "MODEL " << report.model << '\n';
  for (const auto& r : report.rows) {
    out << "ROW N " << r.n << " SIZE " << r.size << " DEPTH " << r.depth;
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
      out << " SECONDS " << buf;
    }
    out << '\n';
  }
  char slope[32];
  std::snprintf(slope, sizeof slope, "%.4f", report.slope);
  out << "SLOPE " << slope << '\n';
  out << "DEPTH_CONSTANT " << (report.depth_constant ? "yes" : "no") << '\n';
  out << "MONOTONE " << (report.monotone ? "yes" : "no") << '\n';
  return out.str();
}

ConvertReport convert(const zoo::ZooEntry& entry, std::size_t n, std::size_t budget) {
  const auto* model = std::get_if<restricted::RestrictedModel>(&entry.model);
  if (model == nullptr || model->pooling != guhat::Pooling::Unique) {
    throw ModelError("conversion needs a unique-attention restricted model, '" + entry.name + "' is " +
                     std::string(zoo::to_string(entry.kind)));
  }
  if (n == 0) throw InputError("length n counts the end marker and must be at least 1");
  const auto plan = restricted::plan_conversion(*model, n, budget);
  const auto converted = restricted::uhat_to_ahat(*model, plan);
  const auto inputs = langs::strings_of_length(model->alphabet, n - 1);
  ConvertReport report;
  report.model = entry.name;
  report.n = n;
  report.denominator = plan.denominator;
  report.min_gap = to_string(plan.min_gap);
  report.gap_fallback = plan.gap_fallback;
  report.checked = inputs.size();
  for (const auto& x : inputs) {
    if (restricted::restricted_accepts(*model, x) == restricted::restricted_accepts(converted, x)) ++report.agree;
  }
  report.ties = restricted::tie_audit(converted, inputs);
  return report;
}

std::string format_convert(const ConvertReport& report) {
  std::ostringstream out;
  out << "MODEL " << report.model << '\n';
  out << "N " << report.n << '\n';
  out << "DENOMINATOR " << report.denominator << '\n';
  out << "MIN_GAP " << report.min_gap << (report.gap_fallback ? " (fallback)" : "") << '\n';
  out << "AGREE " << report.agree << '/' << report.checked << '\n';
  out << "TIES " << report.ties << '\n';
  return out.str();
}

ReduceReport reduce(std::size_t n, std::size_t max_n) {
  if (n > max_n) {
    throw ResourceError("reduction length " + std::to_string(n) + " exceeds the bound " + std::to_string(max_n));
  }
  const auto dyck = compiler::dyck1_circuit(3 * n);
  const auto eq = compiler::equality_to_dyck_reduction(dyck);
  const auto m = circuit::metrics(dyck);
  ReduceReport report;
  report.n = n;
  report.dyck_size = m.size;
  report.dyck_depth = m.depth;
  const auto lang = langs::LangSpec::equality();
  for (const auto& x : langs::strings_of_length(lang.alphabet, n)) {
    ++report.checked;
    if ((eq.evaluate(x) == "1") == langs::member(lang, x)) ++report.agree;
  }
  return report;
}

std::string format_reduce(const ReduceReport& report) {
  std::ostringstream out;
  out << "N " << report.n << '\n';
  out << "DYCK SIZE " << report.dyck_size << " DEPTH " << report.dyck_depth << '\n';
  out << "AGREE " << report.agree << '/' << report.checked << '\n';
  return out.str();
}

}  // namespace hardattn::verify
