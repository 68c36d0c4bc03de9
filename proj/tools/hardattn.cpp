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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hardattn/circuit.hpp"
#include "hardattn/errors.hpp"
#include "hardattn/langs.hpp"
#include "hardattn/netlist.hpp"
#include "hardattn/normal_form.hpp"
#include "hardattn/restricted.hpp"
#include "hardattn/verify.hpp"
#include "hardattn/zoo.hpp"

namespace {

using namespace hardattn;

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

struct Settings {
  std::string model;
  std::string input;
  bool input_given = false;
  std::size_t length = 0;
  std::size_t max_length = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::string out;
  std::string language;
  std::string netlist;
  std::string bits;
  bool trace = false;
  bool timing = false;
  bool inject_fault = false;
  bool structured = false;
  bool unleveled = false;
  std::size_t budget_wires = compiler::CompileOptions{}.max_wires;
  std::size_t budget_values = nf::NormalFormOptions{}.max_values;
  std::size_t jobs = 1;
};

verify::Budgets budgets(const Settings& s) {
  verify::Budgets b;
  b.compile.max_wires = s.budget_wires;
  b.compile.structured_comparators = s.structured;
  b.compile.leveled = !s.unleveled;
  b.normal_form.max_values = s.budget_values;
  b.jobs = s.jobs;
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

int cmd_simulate(const Settings& s) {
  const auto entry = zoo::registry(s.model);
  bool accepted = false;
  guhat::Trace trace;
  if (const auto* g = std::get_if<guhat::GuhatModel>(&entry.model)) {
    auto result = guhat::run(*g, s.input);
    accepted = result.accepted;
    trace = std::move(result.trace);
  } else {
    auto result = restricted::run_restricted(std::get<restricted::RestrictedModel>(entry.model), s.input);
    accepted = result.accepted;
    trace = std::move(result.trace);
  }
  if (s.trace) {
    std::cout << guhat::render_trace(trace);
  } else {
    std::cout << (accepted ? "ACCEPT" : "REJECT") << '\n';
  }
  return accepted ? kAccept : kReject;
}

int cmd_compile(const Settings& s) {
  const auto entry = zoo::registry(s.model);
  const auto result = verify::compile_entry(entry, s.length, budgets(s));
  if (!s.out.empty()) write_file(s.out, circuit::write_netlist(result.circuit));
  std::cout << compiler::format_report(result.report);
  return kAccept;
}

int cmd_equiv(const Settings& s) {
  verify::EquivOptions options;
  options.max_len = s.max_length;
  options.budgets = budgets(s);
  options.inject_fault = s.inject_fault;
  const auto report = verify::equiv(zoo::registry(s.model), options);
  std::cout << verify::format_equiv(report);
  return report.ok() ? kAccept : kReject;
}

int cmd_growth(const Settings& s) {
  const auto report = verify::growth(zoo::registry(s.model), s.lo, s.hi, budgets(s));
  std::cout << verify::format_growth(report, s.timing);
  return report.depth_constant && report.monotone ? kAccept : kReject;
}

int cmd_convert(const Settings& s) {
  const auto report = verify::convert(zoo::registry(s.model), s.length);
  std::cout << verify::format_convert(report);
  return report.ok() ? kAccept : kReject;
}

int cmd_reduce(const Settings& s) {
  const auto report = verify::reduce(s.length);
  std::cout << verify::format_reduce(report);
  return report.ok() ? kAccept : kReject;
}

int cmd_oracle(const Settings& s) {
  const bool in = langs::member(langs::LangSpec::parse(s.language), s.input);
  std::cout << (in ? 1 : 0) << '\n';
  return in ? kAccept : kReject;
}

int cmd_eval(const Settings& s) {
  const auto c = circuit::read_netlist(read_file(s.netlist));
  const std::string out = c.evaluate(s.bits);
  std::cout << out << '\n';
  return out == "1" ? kAccept : kReject;
}

int cmd_nf_report(const Settings& s) {
  const auto entry = zoo::registry(s.model);
  verify::require_compilable(entry);
  const auto model = entry.as_guhat();
  auto options = budgets(s).normal_form;
  const auto normal = nf::normalize(model, s.length, options);
  std::cout << nf::nf_report(normal);
  const auto audit = nf::audit_widths(normal, nf::SymbolEncoding(model.alphabet));
  std::cout << "WIDTHS " << (audit.ok ? "ok" : "violated") << '\n';
  for (const auto& v : audit.violations) std::cout << "VIOLATION " << v << '\n';
  return audit.ok ? kAccept : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hard-attention transformer simulator and circuit compiler"};
  app.require_subcommand(1);
  Settings s;

  auto add_budgets = [&](CLI::App* cmd) {
    cmd->add_option("--budget-wires", s.budget_wires, "Maximum circuit wires");
    cmd->add_option("--budget-values", s.budget_values, "Maximum normal-form table entries per layer");
    cmd->add_option("--jobs", s.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--structured-comparators", s.structured, "Use bitwise magnitude comparators");
    cmd->add_flag("--unleveled", s.unleveled, "Skip padding stage outputs to their nominal levels");
  };
  auto model_option = [&](CLI::App* cmd) {
    cmd->add_option("model,--model", s.model, "Zoo model name");
  };
  auto length_option = [&](CLI::App* cmd, const std::string& help) {
    cmd->add_option("length,--length", s.length, help);
  };

  auto* simulate = app.add_subcommand("simulate", "Run a zoo model on one input");
  model_option(simulate);
  simulate->add_option("input", s.input, "Input string without the end marker");
  simulate->add_flag("--trace", s.trace, "Print the per-layer value table");

  auto* compile = app.add_subcommand("compile", "Compile a model to a circuit at length n (end marker included)");
  model_option(compile);
  length_option(compile, "Length n including the end marker");
  compile->add_option("out,--out", s.out, "Netlist output path");
  add_budgets(compile);

  auto* equiv = app.add_subcommand("equiv", "Compare compiled circuits with the model on every input");
  model_option(equiv);
  equiv->add_option("max_length,--max-length", s.max_length, "Largest input length");
  equiv->add_flag("--inject-fault", s.inject_fault)->group("");
  add_budgets(equiv);

  auto* growth = app.add_subcommand("growth", "Circuit size and depth over a range of n");
  model_option(growth);
  growth->add_option("n_lo", s.lo, "Smallest n")->required();
  growth->add_option("n_hi", s.hi, "Largest n")->required();
  growth->add_flag("--timing", s.timing)->group("");
  add_budgets(growth);

  auto* convert = app.add_subcommand("convert", "Convert a unique-attention model to averaging attention");
  model_option(convert);
  length_option(convert, "Length n including the end marker");

  auto* reduce = app.add_subcommand("reduce", "Build EQUALITY circuits from a DYCK-1 circuit");
  length_option(reduce, "Length of the EQUALITY inputs");

  auto* oracle = app.add_subcommand("oracle", "Language membership");
  oracle->add_option("language", s.language, "Language name")->required();
  oracle->add_option("input", s.input, "Input string");

  auto* eval = app.add_subcommand("eval", "Evaluate a netlist on a bit string");
  eval->add_option("netlist", s.netlist, "Netlist path")->required();
  eval->add_option("bits", s.bits, "Input bits");

  auto* report = app.add_subcommand("nf-report", "Normal-form table sizes and width audit");
  model_option(report);
  length_option(report, "Length n including the end marker");
  add_budgets(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
  };
  try {
    if (simulate->parsed()) {
      require(!s.model.empty(), "simulate needs a model");
      return cmd_simulate(s);
    }
    if (compile->parsed()) {
      require(!s.model.empty(), "compile needs a model");
      require(compile->count("--length") > 0, "compile needs a length");
      return cmd_compile(s);
    }
    if (equiv->parsed()) {
      require(!s.model.empty(), "equiv needs a model");
      return cmd_equiv(s);
    }
    if (growth->parsed()) {
      require(!s.model.empty(), "growth needs a model");
      return cmd_growth(s);
    }
    if (convert->parsed()) {
      require(!s.model.empty(), "convert needs a model");
      return cmd_convert(s);
    }
    if (reduce->parsed()) return cmd_reduce(s);
    if (oracle->parsed()) return cmd_oracle(s);
    if (eval->parsed()) return cmd_eval(s);
    if (report->parsed()) {
      require(!s.model.empty(), "nf-report needs a model");
      return cmd_nf_report(s);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
