// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file study.hpp
 * @brief Dissociation-curve drivers behind the `fermicorr` command line:
 *        solve one FCIDUMP, scan many, check the dissociation limit.
 */

#pragma once

#include <fermicorr/measures.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fermicorr::cli {

/// Exit codes of the command line tool.
enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kInputError = 2 };

enum class StateKind { gs, thermal, eigenstate };

struct StateSelection {
  StateKind kind = StateKind::gs;
  int index = 0;  ///< eigenstate only

  std::string label() const;
};

/// "gs", "thermal" or "eig:<k>". Throws DomainError otherwise.
StateSelection parse_state(const std::string& text);

struct ScanConfig {
  std::vector<std::filesystem::path> inputs;  ///< files or directories of *.fcidump
  std::optional<double> tag;                  ///< geometry override (single input)
  double beta = 1000.0;
  std::optional<int> n_up;
  std::optional<int> n_down;
  std::vector<StateSelection> states{{StateKind::gs, 0}, {StateKind::thermal, 0}};
  int n_roots = 13;
  double weight_cutoff = kDefaultWeightCutoff;
  std::size_t dense_limit = kDefaultDenseLimit;

  /// Throws DomainError for beta <= 0, n_roots < 1 or no states.
  void validate() const;
};

/// R from "<anything>_R<value>.fcidump", if present.
std::optional<double> geometry_tag(const std::filesystem::path& file);

/// Regular *.fcidump files named by `inputs`, directories expanded, sorted.
std::vector<std::filesystem::path> collect_inputs(const std::vector<std::filesystem::path>& inputs);

struct StateResult {
  StateSelection selection;
  MeasureReport report;
};

struct SolveResult {
  std::filesystem::path file;
  std::optional<double> tag;
  std::string fnv1a64;  ///< hex digest of the file bytes
  int n_spatial = 0;
  int n_up = 0;
  int n_down = 0;
  std::size_t dimension = 0;
  std::vector<double> energies;  ///< lowest min(n_roots, dimension), with e_core
  std::vector<StateResult> states;
};

/// Full pipeline for one FCIDUMP: parse, build, diagonalize, measure.
/// Parse, domain and capacity errors propagate with the file name prepended.
SolveResult solve_file(const std::filesystem::path& file, const ScanConfig& config);

/// JSON document (schema 1) for a solved file, deterministic for fixed input.
std::string to_json(const SolveResult& result, const ScanConfig& config);

/// Fixed CSV column names for a given n_roots.
std::vector<std::string> csv_columns(int n_roots);

/// One row per (file, state), rows sorted by geometry tag. Files that fail
/// produce a single row with the error column filled and the run goes on.
std::string scan_csv(const ScanConfig& config);

/// JSON array of per-file documents; failed files become {"file", "error"} objects.
std::string scan_json(const ScanConfig& config);

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;

  bool pass() const;
};

struct LimitsReport {
  std::vector<Check> checks;

  bool ok() const;
  /// One line per check with PASS/FAIL, expected, actual and difference.
  std::string table() const;
};

/// Exact dissociation-limit states against the reference tables.
LimitsReport check_limits_analytic(double tolerance = 1e-9);

/// Ground state and thermal state of a large-R FCIDUMP against the
/// reference tables. Throws DomainError unless the sector is (7, 5, 5).
LimitsReport check_limits_file(const std::filesystem::path& file, const ScanConfig& config,
                               double tolerance = 2e-2);

}  // namespace fermicorr::cli
