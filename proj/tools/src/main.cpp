// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/cli/study.hpp>
#include <fermicorr/errors.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace fermicorr::cli;

struct Options {
  ScanConfig config;
  std::vector<std::string> states;
  std::optional<int> n_up;
  std::optional<int> n_down;
  std::optional<double> tag;
  std::string format = "csv";
  std::string output;
  bool analytic = false;
  double tolerance = -1.0;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--beta", o.config.beta, "Inverse temperature in 1/Eh")->capture_default_str();
  cmd->add_option("--n-roots", o.config.n_roots, "Number of energies to report")->capture_default_str();
  cmd->add_option("--state", o.states, "gs, thermal or eig:<k> (repeatable)");
  cmd->add_option("--n-up", o.n_up, "Override the up electron count");
  cmd->add_option("--n-down", o.n_down, "Override the down electron count");
  cmd->add_option("--weight-cutoff", o.config.weight_cutoff, "Drop thermal weights below this")
      ->capture_default_str();
  cmd->add_option("--dense-limit", o.config.dense_limit, "Largest sector dimension")
      ->capture_default_str();
  cmd->add_option("--tag", o.tag, "Geometry tag R (single input only)");
  cmd->add_option("-o,--output", o.output, "Write to this file instead of stdout");
}

void finish(Options& o) {
  if (!o.states.empty()) {
    o.config.states.clear();
    for (const auto& s : o.states) o.config.states.push_back(parse_state(s));
  }
  o.config.n_up = o.n_up;
  o.config.n_down = o.n_down;
  o.config.tag = o.tag;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw fermicorr::DomainError("cannot open output file " + o.output);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalization and up-down correlation measures for FCIDUMP Hamiltonians"};
  app.require_subcommand(1);
  Options o;

  std::string solve_file_arg;
  auto* solve = app.add_subcommand("solve", "Solve one FCIDUMP and print a JSON report");
  solve->add_option("file", solve_file_arg, "FCIDUMP file")->required();
  add_common(solve, o);

  std::vector<std::string> scan_inputs;
  auto* scan = app.add_subcommand("scan", "Solve many FCIDUMPs and print one table");
  scan->add_option("inputs", scan_inputs, "FCIDUMP files or directories")->required();
  scan->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_common(scan, o);

  std::string limits_file;
  auto* limits = app.add_subcommand("check-limits", "Compare against the exact dissociation limit");
  limits->add_option("file", limits_file, "Large-R FCIDUMP (file mode)");
  limits->add_flag("--analytic", o.analytic, "Use the exact limit states");
  limits->add_option("--tolerance", o.tolerance, "Default 1e-9 analytic, 2e-2 file");
  add_common(limits, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    finish(o);
    if (*solve) {
      const auto res = solve_file(solve_file_arg, o.config);
      emit(o, to_json(res, o.config));
      return kOk;
    }
    if (*scan) {
      o.config.inputs.assign(scan_inputs.begin(), scan_inputs.end());
      emit(o, o.format == "json" ? scan_json(o.config) : scan_csv(o.config));
      return kOk;
    }
    if (*limits) {
      if (o.analytic == !limits_file.empty())
        throw fermicorr::DomainError("check-limits needs exactly one of --analytic or a file");
      const LimitsReport rep =
          o.analytic ? check_limits_analytic(o.tolerance > 0 ? o.tolerance : 1e-9)
                     : check_limits_file(limits_file, o.config, o.tolerance > 0 ? o.tolerance : 2e-2);
      emit(o, rep.table());
      if (!rep.ok()) {
        std::cerr << "check-limits: FAIL\n";
        return kAssertionFailed;
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "fermicorr: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
